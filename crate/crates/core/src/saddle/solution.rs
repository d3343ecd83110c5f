//! The constructed stationary point, its residuals, and its action.

use num_complex::Complex64;
use serde::Serialize;

use crate::dilog::li2::{check_branch, li2, li2_complex, rogers_l_complex, rogers_l_ratio};
use crate::error::{Error, Result};
use crate::exchange::{pos, require_period, tropical_trajectory, ExchangeMatrix, MutationSchedule};

/// Default bound on `|Im λ|` in λ-mode.
pub const DEFAULT_LAMBDA_IM_MAX: f64 = 0.1;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SaddleMode {
    /// Real `b`; the exponent is `Σ {½ε Li₂(-y^ε) + u·(p - p̃)}`.
    B,
    /// Complex deformation parameter with `Im λ² > 0`.
    Lambda { lambda: Complex64 },
}

impl SaddleMode {
    pub fn lambda(&self) -> Complex64 {
        match self {
            SaddleMode::B => ONE,
            SaddleMode::Lambda { lambda } => *lambda,
        }
    }
}

/// Variables at the stationary point; row `t` holds step `t + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct SaddleState {
    pub mode: SaddleMode,
    pub u: Vec<Vec<Complex64>>,
    pub p: Vec<Vec<Complex64>>,
    pub ptilde: Vec<Vec<Complex64>>,
    pub w: Vec<Vec<Complex64>>,
    /// All y-variables `y(t)`, `t = 1..L`.
    pub y: Vec<Vec<Complex64>>,
    /// Active values `y_{k_t}(t)`.
    pub yvals: Vec<Complex64>,
    pub action: Complex64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SaddleReport {
    /// Stationarity in `u(t)`: `(b_{k i}/2λ) log(1 + y_k^ε) + p_i - p̃_i`.
    pub residual_u_eqs: f64,
    /// Stationarity in `p(t)`: the `u(t) → u(t+1)` equations.
    pub residual_p_eqs: f64,
    /// `w(t) → w(t+1)` relations, `y_k = e^{λ(p_k + w_k)}`, `p̃(1) = w(1)`,
    /// and closure of `p(L)` onto `p̃(1)`.
    pub residual_w_eqs: f64,
    pub action_value: Complex64,
    pub cross_check_value: Complex64,
}

impl SaddleReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_u_eqs.max(self.residual_p_eqs).max(self.residual_w_eqs)
    }
}

/// Matrices `B(t)` and signs `ε_t` along the schedule.
pub(crate) struct Path {
    pub matrices: Vec<ExchangeMatrix>,
    pub signs: Vec<i8>,
}

pub(crate) fn path(b: &ExchangeMatrix, sched: &MutationSchedule) -> Result<Path> {
    let states = tropical_trajectory(b, &sched.sequence)?;
    let signs = sched
        .sequence
        .iter()
        .zip(&states)
        .map(|(&k, s)| s.sign(k))
        .collect::<Result<Vec<_>>>()?;
    Ok(Path { matrices: states.into_iter().map(|s| s.matrix).collect(), signs })
}

/// `w_i = Σ_j b_ji u_j`.
pub(crate) fn w_of(b: &ExchangeMatrix, u: &[Complex64]) -> Vec<Complex64> {
    let n = u.len();
    (0..n).map(|i| (0..n).map(|j| u[j] * b.get(j, i) as f64).sum()).collect()
}

/// `x''_k = -x'_k`, `x''_i = x'_i + [ε b_ki]_+ x'_k`.
pub(crate) fn x_step(b: &ExchangeMatrix, k: usize, eps: i8, x: &[Complex64]) -> Vec<Complex64> {
    let e = i64::from(eps);
    (0..x.len())
        .map(|i| if i == k { -x[k] } else { x[i] + x[k] * pos(e * b.get(k, i)) as f64 })
        .collect()
}

/// Inverse of [`x_step`].
pub(crate) fn x_step_inverse(b: &ExchangeMatrix, k: usize, eps: i8, x2: &[Complex64]) -> Vec<Complex64> {
    let e = i64::from(eps);
    let xk = -x2[k];
    (0..x2.len())
        .map(|i| if i == k { xk } else { x2[i] - xk * pos(e * b.get(k, i)) as f64 })
        .collect()
}

fn pow_eps(y: Complex64, eps: i8) -> Complex64 {
    if eps > 0 {
        y
    } else {
        y.inv()
    }
}

/// `log(1 + y^ε)`, refusing arguments near the cut.
fn log1p_eps(y: Complex64, eps: i8) -> Result<Complex64> {
    let ye = pow_eps(y, eps);
    check_branch(-ye)?;
    Ok((ONE + ye).ln())
}

fn check_lambda(lambda: Complex64, im_max: f64) -> Result<()> {
    if (lambda * lambda).im <= 0.0 {
        return Err(Error::Domain(format!("λ-mode needs Im λ² > 0, got λ = {lambda}")));
    }
    if lambda.im.abs() > im_max {
        return Err(Error::Domain(format!(
            "|Im λ| = {} exceeds the configured bound {im_max}",
            lambda.im.abs()
        )));
    }
    Ok(())
}

/// Builds the stationary point from `u(1)`, with the default `|Im λ|` bound.
pub fn build_solution(
    b: &ExchangeMatrix,
    sched: &MutationSchedule,
    u1: &[f64],
    mode: SaddleMode,
) -> Result<SaddleState> {
    build_solution_with(b, sched, u1, mode, DEFAULT_LAMBDA_IM_MAX)
}

pub fn build_solution_with(
    b: &ExchangeMatrix,
    sched: &MutationSchedule,
    u1: &[f64],
    mode: SaddleMode,
    lambda_im_max: f64,
) -> Result<SaddleState> {
    require_period(b, sched)?;
    let n = b.rank();
    if u1.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: u1.len() });
    }
    let lambda = mode.lambda();
    if let SaddleMode::Lambda { lambda } = mode {
        check_lambda(lambda, lambda_im_max)?;
    }
    let big_l = sched.len();
    let path = path(b, sched)?;
    let two_lambda = lambda * 2.0;

    // (i) y-variables from w(1).
    let mut u = vec![u1.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>()];
    let w1 = w_of(&path.matrices[0], &u[0]);
    let mut y = vec![w1.iter().map(|&w| (two_lambda * w).exp()).collect::<Vec<_>>()];
    for t in 0..big_l {
        let (k, bt) = (sched.sequence[t], &path.matrices[t]);
        let yt = &y[t];
        let yk = yt[k];
        log1p_eps(yk, path.signs[t])?;
        let next: Vec<Complex64> = (0..n)
            .map(|i| {
                if i == k {
                    yk.inv()
                } else {
                    let bki = bt.get(k, i);
                    yt[i] * yk.powi(pos(bki) as i32) * (ONE + yk).powi(-bki as i32)
                }
            })
            .collect();
        y.push(next);
    }

    // (ii) u-variables.
    for t in 0..big_l.saturating_sub(1) {
        let (k, bt, eps) = (sched.sequence[t], &path.matrices[t], path.signs[t]);
        let mut next = u[t].clone();
        let e = i64::from(eps);
        let s: Complex64 = (0..n).map(|j| u[t][j] * pos(e * bt.get(k, j)) as f64).sum();
        next[k] = -u[t][k] + s + log1p_eps(y[t][k], eps)? / two_lambda;
        u.push(next);
    }
    let w: Vec<Vec<Complex64>> = (0..big_l).map(|t| w_of(&path.matrices[t], &u[t])).collect();

    // (iii) p̃ from y, then p from the relabeled closure and the shift relations.
    let mut ptilde: Vec<Vec<Complex64>> = Vec::with_capacity(big_l + 1);
    ptilde.push(w1.clone());
    for yt in y.iter().take(big_l).skip(1) {
        ptilde.push(yt.iter().map(|&v| v.ln() / two_lambda).collect());
    }
    let closing = closing_ptilde(&ptilde[0], &sched.nu);
    let mut p = Vec::with_capacity(big_l);
    for t in 0..big_l {
        let next = if t + 1 < big_l { &ptilde[t + 1] } else { &closing };
        p.push(x_step_inverse(&path.matrices[t], sched.sequence[t], path.signs[t], next));
    }

    let yvals: Vec<Complex64> = (0..big_l).map(|t| y[t][sched.sequence[t]]).collect();
    y.truncate(big_l);
    let mut state = SaddleState { mode, u, p, ptilde, w, y, yvals, action: ZERO };
    state.action = action(&state, b, sched)?.0;
    Ok(state)
}

/// `p̃(L+1)` with `p̃_{ν(i)}(L+1) = p̃_i(1)`.
fn closing_ptilde(ptilde1: &[Complex64], nu: &[usize]) -> Vec<Complex64> {
    let mut out = vec![ZERO; ptilde1.len()];
    for (i, &v) in nu.iter().enumerate() {
        out[v] = ptilde1[i];
    }
    out
}

/// Evaluates every stationarity relation at the state, recomputing `w`, `p̃`
/// and the active `y` from `u` and `p` alone.
pub fn residuals(state: &SaddleState, b: &ExchangeMatrix, sched: &MutationSchedule) -> Result<SaddleReport> {
    let path = path(b, sched)?;
    let n = b.rank();
    let big_l = sched.len();
    let lambda = state.mode.lambda();
    let two_lambda = lambda * 2.0;
    let w: Vec<Vec<Complex64>> = (0..big_l).map(|t| w_of(&path.matrices[t], &state.u[t])).collect();
    // p̃(1) = w(1); p̃(t+1) from p(t).
    let mut ptilde = vec![w[0].clone()];
    for t in 0..big_l - 1 {
        ptilde.push(x_step(&path.matrices[t], sched.sequence[t], path.signs[t], &state.p[t]));
    }
    let active: Vec<Complex64> = (0..big_l)
        .map(|t| {
            let k = sched.sequence[t];
            (lambda * (state.p[t][k] + w[t][k])).exp()
        })
        .collect();
    let mut logs = Vec::with_capacity(big_l);
    for t in 0..big_l {
        logs.push(log1p_eps(active[t], path.signs[t])?);
    }

    let mut ru: f64 = 0.0;
    for t in 0..big_l {
        let (k, bt) = (sched.sequence[t], &path.matrices[t]);
        for i in 0..n {
            let r = logs[t] * bt.get(k, i) as f64 / two_lambda + state.p[t][i] - ptilde[t][i];
            ru = ru.max(r.norm());
        }
    }

    let mut rp: f64 = 0.0;
    let mut rw: f64 = 0.0;
    for t in 0..big_l - 1 {
        let (k, bt, eps) = (sched.sequence[t], &path.matrices[t], path.signs[t]);
        let e = i64::from(eps);
        let (ut, un) = (&state.u[t], &state.u[t + 1]);
        for i in 0..n {
            let r = if i == k {
                let s: Complex64 = (0..n).map(|j| un[j] * pos(e * bt.get(k, j)) as f64).sum();
                -logs[t] / two_lambda + ut[k] - s + un[k]
            } else {
                ut[i] - un[i]
            };
            rp = rp.max(r.norm());
        }
        let (wt, wn) = (&w[t], &w[t + 1]);
        for i in 0..n {
            let r = if i == k {
                wn[k] + wt[k]
            } else {
                let bki = bt.get(k, i);
                wn[i] - wt[i] - wt[k] * pos(e * bki) as f64 + logs[t] * bki as f64 / two_lambda
            };
            rw = rw.max(r.norm());
        }
    }
    // Compatibility with the classical trajectory and the closing relation.
    for t in 0..big_l {
        let k = sched.sequence[t];
        let r = lambda * (state.p[t][k] + w[t][k]) - state.yvals[t].ln();
        rw = rw.max(r.norm());
    }
    for (a, c) in state.ptilde[0].iter().zip(&w[0]) {
        rw = rw.max((a - c).norm());
    }
    let last = big_l - 1;
    let closing = x_step(&path.matrices[last], sched.sequence[last], path.signs[last], &state.p[last]);
    for (i, &v) in sched.nu.iter().enumerate() {
        rw = rw.max((closing[v] - w[0][i]).norm());
    }

    let (action_value, cross_check_value) = action(state, b, sched)?;
    Ok(SaddleReport { residual_u_eqs: ru, residual_p_eqs: rp, residual_w_eqs: rw, action_value, cross_check_value })
}

/// The exponent `Σ_t {½ε_t Li₂(-y^{ε_t}) + λ² Σ_i u_i(t)(p_i(t) - p̃_i(t))}` and
/// `-½ Σ_t ε_t L(y^{ε_t}/(1 + y^{ε_t}))`.
pub fn action(state: &SaddleState, b: &ExchangeMatrix, sched: &MutationSchedule) -> Result<(Complex64, Complex64)> {
    let path = path(b, sched)?;
    let lambda = state.mode.lambda();
    let lambda2 = lambda * lambda;
    let mut value = ZERO;
    let mut cross = ZERO;
    for (t, &yk) in state.yvals.iter().enumerate() {
        let eps = path.signs[t];
        let e = f64::from(eps);
        let ye = pow_eps(yk, eps);
        let (dilog, rogers) = match state.mode {
            SaddleMode::B => (
                Complex64::new(li2(-ye.re)?, 0.0),
                Complex64::new(rogers_l_ratio(ye.re)?, 0.0),
            ),
            SaddleMode::Lambda { .. } => {
                (li2_complex(-ye)?, rogers_l_complex(ye / (ONE + ye))?)
            }
        };
        let du: Complex64 = state.u[t]
            .iter()
            .zip(state.p[t].iter().zip(&state.ptilde[t]))
            .map(|(u, (p, pt))| u * (p - pt))
            .sum();
        value += dilog * (0.5 * e) + lambda2 * du;
        cross -= rogers * (0.5 * e);
    }
    Ok((value, cross))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::numeric_trajectory;
    use crate::seedspec::Builtin;

    #[test]
    fn a2_at_origin() {
        let (b, s) = Builtin::A2.resolve();
        let st = build_solution(&b, &s, &[0.0, 0.0], SaddleMode::B).unwrap();
        assert!(st.w[0].iter().all(|w| w.norm() == 0.0));
        let ys: Vec<f64> = st.yvals.iter().map(|y| y.re).collect();
        for (a, e) in ys.iter().zip([1.0, 2.0, 3.0, 2.0, 1.0]) {
            assert!((a - e).abs() < 1e-14);
        }
        assert!(st.ptilde[0].iter().all(|v| v.norm() == 0.0));
        // u₁(2) = -u₁(1) + ½ log(1 + y₁(1)) = ½ log 2
        assert!((st.u[1][0].re - 0.5 * 2f64.ln()).abs() < 1e-15);
        let (v, c) = action(&st, &b, &s).unwrap();
        assert!(v.norm() < 1e-13 && c.norm() < 1e-13 && (v - c).norm() < 1e-12);
    }

    #[test]
    fn a1_action_vanishes() {
        let (b, s) = Builtin::A1.resolve();
        let st = build_solution(&b, &s, &[0.7], SaddleMode::B).unwrap();
        assert!(st.action.norm() < 1e-15);
        let r = residuals(&st, &b, &s).unwrap();
        assert!(r.max_residual() < 1e-14);
    }

    #[test]
    fn built_solution_is_stationary() {
        let (b, s) = Builtin::A2.resolve();
        for u1 in [[0.3, -1.2], [1.9, 1.1], [-2.0, 0.4]] {
            let st = build_solution(&b, &s, &u1, SaddleMode::B).unwrap();
            let r = residuals(&st, &b, &s).unwrap();
            assert!(r.max_residual() < 1e-12, "{r:?}");
            assert!(r.action_value.norm() < 1e-12);
            for (t, &k) in s.sequence.iter().enumerate() {
                assert!((st.p[t][k] - st.ptilde[t][k]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn half_exponents_follow_classical_trajectory() {
        let (b, s) = Builtin::A2.resolve();
        let u1 = [0.45, -0.8];
        let st = build_solution(&b, &s, &u1, SaddleMode::B).unwrap();
        let y0: Vec<f64> = st.w[0].iter().map(|w| (2.0 * w.re).exp()).collect();
        let traj = numeric_trajectory(&b, &y0, &s.sequence).unwrap();
        for t in 0..s.len() {
            for i in 0..2 {
                let e = (2.0 * st.w[t][i].re).exp();
                assert!(((e - traj[t].y[i]) / traj[t].y[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let (b, s) = Builtin::A2.resolve();
        let mut st = build_solution(&b, &s, &[0.2, 0.5], SaddleMode::B).unwrap();
        st.u[1][1] += 0.1;
        let r = residuals(&st, &b, &s).unwrap();
        assert!(r.residual_p_eqs > 1e-3);
    }

    #[test]
    fn lambda_mode() {
        let (b, s) = Builtin::A2.resolve();
        let lambda = Complex64::new(1.0, 0.0) + Complex64::from_polar(0.05, std::f64::consts::PI / 3.0);
        let st = build_solution(&b, &s, &[0.3, -0.6], SaddleMode::Lambda { lambda }).unwrap();
        let r = residuals(&st, &b, &s).unwrap();
        assert!(r.max_residual() < 1e-12, "{r:?}");
        assert!(st.action.norm() < 1e-12);
        assert!((r.action_value - r.cross_check_value).norm() < 1e-12);
        let bad = Complex64::new(1.0, -0.05);
        assert!(build_solution(&b, &s, &[0.0, 0.0], SaddleMode::Lambda { lambda: bad }).is_err());
        let wide = Complex64::new(1.0, 0.3);
        assert!(build_solution(&b, &s, &[0.0, 0.0], SaddleMode::Lambda { lambda: wide }).is_err());
    }

    #[test]
    fn non_period_rejected() {
        let (b, _) = Builtin::A2.resolve();
        let s = MutationSchedule::with_identity(vec![0, 1, 0], 2).unwrap();
        assert!(matches!(
            build_solution(&b, &s, &[0.0, 0.0], SaddleMode::B),
            Err(Error::NotAPeriod { .. })
        ));
    }
}
