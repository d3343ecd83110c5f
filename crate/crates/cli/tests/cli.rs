use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn qdilog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdilog")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn seed_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn mutate_a1_round_trip() {
    let out = qdilog(&["mutate", "--builtin", "A1", "--y", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let ys: Vec<f64> = v["result"]["steps"].as_array().unwrap().iter().map(|s| s["y"][0].as_f64().unwrap()).collect();
    assert_eq!(ys.len(), 3);
    assert!((ys[0] - 5.0).abs() < 1e-15 && (ys[1] - 0.2).abs() < 1e-15 && (ys[2] - 5.0).abs() < 1e-14);
}

#[test]
fn mutate_a2_trajectory_at_ones() {
    let out = qdilog(&["mutate", "--builtin", "A2", "--y", "1,1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(3).map(|x| x.parse().unwrap()).collect())
        .collect();
    let expected = [[1.0, 1.0], [1.0, 2.0], [3.0, 0.5], [1.0 / 3.0, 2.0], [1.0, 0.5], [1.0, 1.0]];
    assert_eq!(rows.len(), expected.len());
    for (r, e) in rows.iter().zip(&expected) {
        assert!((r[0] - e[0]).abs() < 1e-11 && (r[1] - e[1]).abs() < 1e-11, "{r:?} vs {e:?}");
    }
}

#[test]
fn mutate_empty_sequence_echoes_seed() {
    let f = seed_file(r#"{"n":2,"B":[[0,1],[-1,0]],"sequence":[],"nu":[1,2]}"#);
    let out = qdilog(&["mutate", "--seed-file", f.path().to_str().unwrap(), "--y", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let steps = v["result"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0]["y"], serde_json::json!([2.0, 3.0]));
}

#[test]
fn verify_classical_reports_seed() {
    let out = qdilog(&["verify", "classical", "--builtin", "A2", "--trials", "100", "--rng-seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["params"]["rng_seed"], 42);
    assert_eq!(v["result"]["n_minus"], 3);
    assert_eq!(v["result"]["n_plus"], 2);
}

#[test]
fn verify_quantum_forms_pass() {
    for (kind, order) in [("quantum-tropical", "8"), ("quantum-universal", "6"), ("dual", "6"), ("shuffle", "6")] {
        let out = qdilog(&["verify", kind, "--builtin", "A2", "-N", order]);
        assert_eq!(out.status.code(), Some(0), "{kind}");
        assert_eq!(json(&out)["verdict"], "PASS", "{kind}");
    }
    let v = json(&qdilog(&["verify", "quantum-tropical", "--builtin", "A2", "-N", "8"]));
    assert!(v["result"]["residual"]["residual_terms"].as_array().unwrap().is_empty());
    assert_eq!(v["result"]["residual"]["probabilistic"], false);
}

#[test]
fn verify_saddle_modes_pass() {
    let out = qdilog(&["verify", "saddle", "--builtin", "A2", "--trials", "50", "--rng-seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = qdilog(&["verify", "saddle-lambda", "--builtin", "A2", "--rng-seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = qdilog(&["verify", "saddle-lambda", "--lambda", "0.9-0.05i", "--y", "0.1,0.2"]);
    assert_eq!(out.status.code(), Some(3), "Im λ² < 0 is a domain error");
}

#[test]
fn non_period_exits_2() {
    let f = seed_file(r#"{"n":2,"B":[[0,-1],[1,0]],"sequence":[1,2,1],"nu":[1,2]}"#);
    let path = f.path().to_str().unwrap();
    let out = qdilog(&["verify", "quantum-tropical", "--seed-file", path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].as_str().unwrap().contains("not a period"));
    let out = qdilog(&["verify", "shuffle", "--seed-file", path, "-N", "6"]);
    assert_eq!(out.status.code(), Some(0), "shuffle does not need a period");
}

#[test]
fn parse_errors_exit_4() {
    let f = seed_file(r#"{"n":2,"B":[[0,1],[1,0]],"sequence":[1],"nu":[1,2]}"#);
    assert_eq!(qdilog(&["mutate", "--seed-file", f.path().to_str().unwrap()]).status.code(), Some(4));
    let f = seed_file("{ not json");
    assert_eq!(qdilog(&["mutate", "--seed-file", f.path().to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(qdilog(&["mutate", "--builtin", "E8"]).status.code(), Some(4));
    assert_eq!(qdilog(&["verify", "nonsense"]).status.code(), Some(4));
    assert_eq!(qdilog(&["mutate", "--y", "1,2,3"]).status.code(), Some(4));
    assert_eq!(qdilog(&["--help"]).status.code(), Some(0));
}

#[test]
fn failing_check_exits_3() {
    let out = qdilog(&["phib", "--check", "recurrence", "--grid", "default", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "FAIL");
}

#[test]
fn search_finds_pentagon() {
    let v = json(&qdilog(&["search", "--builtin", "A2", "--depth", "5"]));
    let periods = v["result"]["periods"].as_array().unwrap();
    assert!(periods.iter().any(|p| p["sequence"] == serde_json::json!([1, 2, 1, 2, 1]) && p["nu"] == serde_json::json!([2, 1])));
    let v = json(&qdilog(&["search", "--builtin", "A2", "--depth", "3"]));
    assert!(v["result"]["periods"].as_array().unwrap().iter().all(|p| p["sequence"].as_array().unwrap().len() != 3));
    let v = json(&qdilog(&["search", "--builtin", "A1", "--depth", "2"]));
    assert_eq!(v["result"]["periods"][0]["sequence"], serde_json::json!([1, 1]));
    assert_eq!(qdilog(&["search", "--depth", "13"]).status.code(), Some(1));
}

#[test]
fn phib_unitarity_and_duality() {
    let v = json(&qdilog(&["phib", "--b", "1.0", "--z", "0.3"]));
    let m = v["result"]["values"][0]["modulus"].as_f64().unwrap();
    assert!((m - 1.0).abs() < 1e-8);
    let out = qdilog(&["phib", "--check", "duality", "--b", "1.3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["result"]["max_residual"].as_f64().unwrap() < 1e-7);
    let out = qdilog(&["phib", "--check", "asymptotics", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("function,parameter,argument,deviation\n"));
}

#[test]
fn markdown_output() {
    let out = qdilog(&["verify", "dual", "--builtin", "A1", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# verify dual\n"));
    assert!(text.contains("- verdict: **PASS**"));
}
