use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::json;

use qdilog::dilog::{
    check_duality, check_phib_asymptotics, check_product_form, check_psi_asymptotics,
    check_recurrence, check_unitarity, log_phib, phib as phib_value, strictly_decreasing,
    AsymptoticRow, PhibParams,
};
use qdilog::exchange::{numeric_trajectory, tropical_trajectory};
use qdilog::qtorus::Verdict;
use qdilog::search::search_periods;
use qdilog::{check_period, Error};

use crate::report::{joined, sci, Report, Table};
use crate::{parse_error, Failure, LoadedSeed, PhibArgs, PhibCheck};

pub fn mutate(seed: &LoadedSeed, y: Option<&[f64]>) -> Result<Report, Failure> {
    let (b, s) = (&seed.matrix, &seed.schedule);
    let n = b.rank();
    let y0 = match y {
        Some(v) if v.len() != n => return Err(parse_error(format!("--y has {} values, rank is {n}", v.len()))),
        Some(v) => v.to_vec(),
        None => vec![1.0; n],
    };
    let numeric = numeric_trajectory(b, &y0, &s.sequence)?;
    let tropical = tropical_trajectory(b, &s.sequence)?;
    let mut r = Report::new("mutate");
    r.seed = Some(seed.describe());
    r.param("y0", &y0);
    let mut headers: Vec<String> = vec!["t".into(), "k".into(), "eps".into()];
    headers.extend((1..=n).map(|i| format!("y{i}")));
    r.table.headers = headers;
    let mut steps = Vec::new();
    for (t, (num, trop)) in numeric.iter().zip(&tropical).enumerate() {
        let k = s.sequence.get(t).copied();
        let eps = k.map(|k| trop.sign(k)).transpose()?;
        let mut row = vec![
            (t + 1).to_string(),
            k.map(|k| (k + 1).to_string()).unwrap_or_default(),
            eps.map(|e| e.to_string()).unwrap_or_default(),
        ];
        row.extend(num.y.iter().map(|v| format!("{v:.12}")));
        r.table.push(row);
        steps.push(json!({
            "t": t + 1,
            "k": k.map(|k| k + 1),
            "eps": eps,
            "B": trop.matrix.rows(),
            "y": num.y,
            "c_vectors": trop.cvectors,
        }));
    }
    r.result = json!({ "steps": steps, "period": check_period(b, s)? });
    Ok(r)
}

pub fn search(seed: &LoadedSeed, depth: usize) -> Result<Report, Failure> {
    let rep = search_periods(&seed.matrix, depth)?;
    let mut r = Report::new("search");
    r.seed = Some(json!({ "name": seed.name, "B": seed.matrix.rows() }));
    r.param("depth", depth);
    r.table = Table::new(&["sequence", "nu"]);
    for p in &rep.periods {
        r.table.push(vec![joined(&p.sequence), joined(&p.nu)]);
    }
    r.result = serde_json::to_value(&rep).expect("serializable");
    Ok(r)
}

fn default_bs() -> Vec<Complex64> {
    let mut bs: Vec<Complex64> = [0.7, 1.0, 1.3].iter().map(|&b| Complex64::new(b, 0.0)).collect();
    bs.push(Complex64::from_polar(1.0, PI / 7.0));
    bs.push(Complex64::from_polar(1.0, PI / 5.0));
    bs
}

fn default_zs() -> Vec<Complex64> {
    (0..5).map(|i| Complex64::new(-0.4 + 0.2 * i as f64, 0.0)).collect()
}

pub fn phib(args: &PhibArgs) -> Result<Report, Failure> {
    let grid = match args.grid.as_deref() {
        None => false,
        Some("default") => true,
        Some(g) => return Err(parse_error(format!("unknown grid {g:?} (expected \"default\")"))),
    };
    let bs = match (args.b, grid) {
        (Some(b), _) => vec![b],
        (None, true) => default_bs(),
        (None, false) => vec![Complex64::new(1.0, 0.0)],
    };
    let zs = match (args.z, grid) {
        (Some(z), _) => vec![z],
        (None, true) => default_zs(),
        (None, false) => vec![Complex64::new(0.0, 0.0)],
    };
    let mut r = Report::new("phib");
    match args.check {
        None => evaluate(&mut r, &bs, &zs)?,
        Some(PhibCheck::Asymptotics) => asymptotics(&mut r)?,
        Some(check) => residual_check(&mut r, check, &bs, &zs, args.tol)?,
    }
    Ok(r)
}

fn evaluate(r: &mut Report, bs: &[Complex64], zs: &[Complex64]) -> Result<(), Failure> {
    r.table = Table::new(&["b", "z", "re", "im", "modulus", "log_re", "log_im"]);
    let mut values = Vec::new();
    for &b in bs {
        let p = PhibParams::new(b)?;
        for &z in zs {
            let v = phib_value(z, &p)?;
            let l = log_phib(z, &p)?;
            r.table.push(vec![
                b.to_string(),
                z.to_string(),
                format!("{:.15}", v.re),
                format!("{:.15}", v.im),
                format!("{:.15}", v.norm()),
                format!("{:.15}", l.re),
                format!("{:.15}", l.im),
            ]);
            values.push(json!({ "b": b, "z": z, "value": v, "log": l, "modulus": v.norm() }));
        }
    }
    r.result = json!({ "values": values });
    Ok(())
}

fn residual_check(
    r: &mut Report,
    check: PhibCheck,
    bs: &[Complex64],
    zs: &[Complex64],
    tol: Option<f64>,
) -> Result<(), Failure> {
    let (name, default_tol) = match check {
        PhibCheck::Unitarity => ("unitarity", 1e-8),
        PhibCheck::Recurrence => ("recurrence", 1e-7),
        PhibCheck::Duality => ("duality", 1e-7),
        PhibCheck::Product => ("product", 1e-6),
        PhibCheck::Asymptotics => unreachable!("handled separately"),
    };
    let tol = tol.unwrap_or(default_tol);
    r.param("check", name);
    r.param("tol", tol);
    r.table = Table::new(&["b", "z", "residual"]);
    let mut worst: f64 = 0.0;
    let mut skipped = 0;
    for &b in bs {
        let p = PhibParams::new(b)?;
        for &z in zs {
            let v = match check {
                PhibCheck::Unitarity if z.im != 0.0 || (b.im != 0.0 && (b.norm() - 1.0).abs() > 1e-12) => {
                    skipped += 1;
                    continue;
                }
                PhibCheck::Unitarity => check_unitarity(z.re, &p)?,
                PhibCheck::Recurrence => check_recurrence(z, &p)?,
                PhibCheck::Duality => check_duality(z, b)?.max(),
                PhibCheck::Product if (b * b).im <= 0.0 => {
                    skipped += 1;
                    continue;
                }
                PhibCheck::Product => check_product_form(z, &p)?,
                PhibCheck::Asymptotics => unreachable!(),
            };
            worst = worst.max(v);
            r.table.push(vec![b.to_string(), z.to_string(), sci(v)]);
        }
    }
    if r.table.rows.is_empty() {
        return Err(Error::Domain(format!("no sample point admits the {name} check")).into());
    }
    r.verdict = Some(if worst < tol { Verdict::Pass } else { Verdict::Fail });
    r.result = json!({ "max_residual": worst, "points": r.table.rows.len(), "skipped": skipped });
    Ok(())
}

fn asymptotics(r: &mut Report) -> Result<(), Failure> {
    r.param("check", "asymptotics");
    r.table = Table::new(&["function", "parameter", "argument", "deviation"]);
    let mut ok = true;
    let mut push = |r: &mut Report, f: &str, rows: &[AsymptoticRow]| {
        ok &= strictly_decreasing(rows);
        for row in rows {
            r.table.push(vec![f.into(), row.parameter.to_string(), row.argument.to_string(), sci(row.deviation)]);
        }
    };
    let mut psi = Vec::new();
    for x in [0.5, 1.0, 2.0] {
        let rows = check_psi_asymptotics(x, &[0.9, 0.95, 0.99, 0.999])?;
        push(r, "psi_q", &rows);
        psi.extend(rows);
    }
    let mut phi = Vec::new();
    for z in [-1.0, 0.0, 1.0] {
        let rows = check_phib_asymptotics(z, &[0.5, 0.4, 0.3, 0.2])?;
        push(r, "phi_b", &rows);
        phi.extend(rows);
    }
    r.verdict = Some(if ok { Verdict::Pass } else { Verdict::Fail });
    r.result = json!({ "psi_q": psi, "phi_b": phi });
    Ok(())
}
