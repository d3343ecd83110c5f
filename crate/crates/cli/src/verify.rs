use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use qdilog::dilog::{verify_classical_identity, PI2_6};
use qdilog::qtorus::{
    dual_factor_data, tropical_factor_data, universal_arguments, verify_dual_pair, verify_shuffle,
    verify_tropical_identity, verify_universal_identity, Residual, TorusContext, Verdict,
};
use qdilog::saddle::{
    build_solution_with, lambda_ray, lambda_scan, newton_step_size, residuals, SaddleMode,
    DEFAULT_LAMBDA_IM_MAX,
};
use qdilog::{check_period, sign_sequence, Error};

use crate::report::{joined, sci, Report, Table};
use crate::{parse_error, rng_seed, Failure, LoadedSeed, VerifyKind, VerifyOpts};

const CROSS_CHECK_TOL: f64 = 1e-12;
const NEWTON_TOL: f64 = 1e-12;
const LAMBDA_RESIDUAL_TOL: f64 = 1e-10;
const RAY_DISTANCES: [f64; 3] = [0.1, 0.05, 0.01];

pub fn run(kind: VerifyKind, seed: &LoadedSeed, opts: &VerifyOpts) -> Result<Report, Failure> {
    let mut report = match kind {
        VerifyKind::Classical => classical(seed, opts)?,
        VerifyKind::QuantumTropical => quantum(seed, opts, false)?,
        VerifyKind::QuantumUniversal => quantum(seed, opts, true)?,
        VerifyKind::Shuffle => shuffle(seed, opts)?,
        VerifyKind::Dual => dual(seed, opts)?,
        VerifyKind::Saddle => saddle(seed, opts)?,
        VerifyKind::SaddleLambda => saddle_lambda(seed, opts)?,
    };
    report.seed = Some(seed.describe());
    Ok(report)
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn order(seed: &LoadedSeed, opts: &VerifyOpts) -> usize {
    opts.order.unwrap_or(if seed.matrix.rank() <= 2 { 8 } else { 6 })
}

fn fixed_point(seed: &LoadedSeed, opts: &VerifyOpts) -> Result<Option<Vec<f64>>, Failure> {
    match &opts.y {
        Some(v) if v.len() != seed.matrix.rank() => {
            Err(parse_error(format!("--y has {} values, rank is {}", v.len(), seed.matrix.rank())))
        }
        other => Ok(other.clone()),
    }
}

fn classical(seed: &LoadedSeed, opts: &VerifyOpts) -> Result<Report, Failure> {
    let tol = opts.tol.unwrap_or(1e-10);
    let trials = opts.trials.unwrap_or(100);
    let rng_seed = rng_seed(opts.rng_seed);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let n = seed.matrix.rank();
    let fixed = fixed_point(seed, opts)?;
    let points: Vec<Vec<f64>> = match fixed {
        Some(y) => vec![y],
        None => (0..trials)
            .map(|_| (0..n).map(|_| rng.gen_range((1e-3f64).ln()..(1e3f64).ln()).exp()).collect())
            .collect(),
    };
    let mut r = Report::new("verify classical");
    r.param("tol", tol);
    r.param("trials", points.len());
    r.param("rng_seed", rng_seed);
    r.table = Table::new(&["trial", "y0", "signed_sum", "DI/(pi^2/6)", "DI'/(pi^2/6)", "max_deviation"]);
    let mut worst: f64 = 0.0;
    let mut counts = (0, 0);
    for (i, y0) in points.iter().enumerate() {
        let rep = verify_classical_identity(&seed.matrix, &seed.schedule, y0)?;
        counts = (rep.n_minus, rep.n_plus);
        worst = worst.max(rep.max_deviation());
        r.table.push(vec![
            (i + 1).to_string(),
            joined(y0),
            sci(rep.sum_signed),
            format!("{:.12}", rep.sum_di / PI2_6),
            format!("{:.12}", rep.sum_di_prime / PI2_6),
            sci(rep.max_deviation()),
        ]);
    }
    r.verdict = Some(verdict(worst < tol));
    r.result = json!({ "max_deviation": worst, "n_minus": counts.0, "n_plus": counts.1 });
    Ok(r)
}

fn residual_rows(r: &Residual, table: &mut Table) {
    for t in &r.residual_terms {
        table.push(vec![r.identity.clone(), t.clone()]);
    }
}

fn quantum(seed: &LoadedSeed, opts: &VerifyOpts, universal: bool) -> Result<Report, Failure> {
    let n_order = order(seed, opts);
    let (b, s) = (&seed.matrix, &seed.schedule);
    let (name, res) = if universal {
        ("verify quantum-universal", verify_universal_identity(b, s, n_order)?)
    } else {
        ("verify quantum-tropical", verify_tropical_identity(b, s, n_order)?)
    };
    let mut r = Report::new(name);
    r.param("order", n_order);
    r.table = Table::new(&["t", "argument", "sign"]);
    let factors = if universal {
        let ctx = TorusContext::exact(b.clone(), n_order);
        universal_arguments(&ctx, s)?
            .iter()
            .map(|f| json!({ "step": f.step, "argument": f.argument.to_string(), "sign": f.sign }))
            .collect::<Vec<_>>()
    } else {
        tropical_factor_data(b, s)?
            .iter()
            .map(|m| json!({ "step": m.step, "argument": format!("Y^{:?}", m.exponent), "sign": m.sign }))
            .collect()
    };
    for f in &factors {
        r.table.push(vec![f["step"].to_string(), f["argument"].as_str().unwrap_or("").into(), f["sign"].to_string()]);
    }
    r.verdict = Some(res.verdict);
    r.result = json!({ "residual": res, "factors": factors });
    Ok(r)
}

fn shuffle(seed: &LoadedSeed, opts: &VerifyOpts) -> Result<Report, Failure> {
    let n_order = order(seed, opts);
    let (b, s) = (&seed.matrix, &seed.schedule);
    if s.is_empty() {
        return Err(Error::InvalidSchedule("empty sequence".into()).into());
    }
    let mut r = Report::new("verify shuffle");
    r.param("order", n_order);
    r.param("periodic", check_period(b, s)?.periodic);
    r.table = Table::new(&["t", "residual_terms", "verdict"]);
    let mut all = Vec::new();
    let mut ok = true;
    for t in 1..=s.len() {
        let res = verify_shuffle(b, s, t, n_order)?;
        ok &= res.is_zero();
        r.table.push(vec![t.to_string(), res.residual_terms.len().to_string(), format!("{:?}", res.verdict).to_uppercase()]);
        all.push(json!({ "t": t, "residual": res }));
    }
    r.verdict = Some(verdict(ok));
    r.result = json!({ "prefixes": all });
    Ok(r)
}

fn dual(seed: &LoadedSeed, opts: &VerifyOpts) -> Result<Report, Failure> {
    let n_order = order(seed, opts);
    let (b, s) = (&seed.matrix, &seed.schedule);
    let (first, second) = verify_dual_pair(b, s, n_order)?;
    let mut r = Report::new("verify dual");
    r.param("order", n_order);
    r.table = Table::new(&["identity", "residual_term"]);
    residual_rows(&first, &mut r.table);
    residual_rows(&second, &mut r.table);
    r.verdict = Some(verdict(first.is_zero() && second.is_zero()));
    r.result = json!({ "q": first, "q_bar": second, "dual_factors": dual_factor_data(b, s)? });
    Ok(r)
}

fn u1_points(seed: &LoadedSeed, opts: &VerifyOpts, default_trials: usize, rng_seed: u64) -> Result<Vec<Vec<f64>>, Failure> {
    let n = seed.matrix.rank();
    if let Some(u) = fixed_point(seed, opts)? {
        return Ok(vec![u]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    Ok((0..opts.trials.unwrap_or(default_trials))
        .map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect())
}

fn saddle(seed: &LoadedSeed, opts: &VerifyOpts) -> Result<Report, Failure> {
    let tol = opts.tol.unwrap_or(1e-10);
    let rng_seed = rng_seed(opts.rng_seed);
    let points = u1_points(seed, opts, 50, rng_seed)?;
    let (b, s) = (&seed.matrix, &seed.schedule);
    let mut r = Report::new("verify saddle");
    r.param("tol", tol);
    r.param("trials", points.len());
    r.param("rng_seed", rng_seed);
    r.table = Table::new(&["trial", "u1", "max_residual", "action", "cross_check_gap", "newton_step"]);
    let mut worst = [0.0f64; 4];
    for (i, u1) in points.iter().enumerate() {
        let st = build_solution_with(b, s, u1, SaddleMode::B, DEFAULT_LAMBDA_IM_MAX)?;
        let rep = residuals(&st, b, s)?;
        let row = [
            rep.max_residual(),
            rep.action_value.norm(),
            (rep.action_value - rep.cross_check_value).norm(),
            newton_step_size(&st, b, s)?,
        ];
        for (w, v) in worst.iter_mut().zip(row) {
            *w = w.max(v);
        }
        r.table.push(vec![(i + 1).to_string(), joined(u1), sci(row[0]), sci(row[1]), sci(row[2]), sci(row[3])]);
    }
    let ok = worst[0] < tol && worst[1] < tol && worst[2] < CROSS_CHECK_TOL && worst[3] < NEWTON_TOL;
    r.verdict = Some(verdict(ok));
    r.result = json!({
        "max_residual": worst[0],
        "max_abs_action": worst[1],
        "max_cross_check_gap": worst[2],
        "max_newton_step": worst[3],
        "signs": sign_sequence(b, s)?.signs,
    });
    Ok(r)
}

fn saddle_lambda(seed: &LoadedSeed, opts: &VerifyOpts) -> Result<Report, Failure> {
    let tol = opts.tol.unwrap_or(1e-6);
    let rng_seed = rng_seed(opts.rng_seed);
    let points = u1_points(seed, opts, 3, rng_seed)?;
    let lambdas: Vec<Complex64> = match opts.lambda {
        Some(l) => vec![l],
        None => lambda_ray(PI / 3.0, &RAY_DISTANCES),
    };
    let (b, s) = (&seed.matrix, &seed.schedule);
    let mut r = Report::new("verify saddle-lambda");
    r.param("tol", tol);
    r.param("trials", points.len());
    r.param("rng_seed", rng_seed);
    r.param("lambdas", lambdas.iter().map(|l| l.to_string()).collect::<Vec<_>>());
    r.table = Table::new(&["trial", "lambda", "abs_action", "action_gap", "y_gap", "max_residual"]);
    let mut ok = true;
    let mut rows_json = Vec::new();
    for (i, u1) in points.iter().enumerate() {
        let rows = lambda_scan(b, s, u1, &lambdas, DEFAULT_LAMBDA_IM_MAX)?;
        for row in &rows {
            ok &= row.action_abs < tol && row.max_residual < LAMBDA_RESIDUAL_TOL;
            r.table.push(vec![
                (i + 1).to_string(),
                row.lambda.to_string(),
                sci(row.action_abs),
                sci(row.action_gap),
                sci(row.y_gap),
                sci(row.max_residual),
            ]);
        }
        // |action| vanishes identically, so monotonicity is read above a rounding floor.
        ok &= rows.windows(2).all(|w| w[1].action_abs <= w[0].action_abs.max(1e-12));
        ok &= rows.windows(2).all(|w| w[1].y_gap < w[0].y_gap);
        rows_json.push(json!({ "u1": u1, "rows": rows }));
    }
    r.verdict = Some(verdict(ok));
    r.result = json!({ "scans": rows_json });
    Ok(r)
}
