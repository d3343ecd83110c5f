//! One Newton step on the gradient of the exponent, as a stationarity check
//! for the constructed point (real `b` only).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::solution::{path, w_of, x_step, x_step_inverse, Path, SaddleMode, SaddleState};
use crate::error::{Error, Result};
use crate::exchange::{pos, ExchangeMatrix, MutationSchedule};

/// Independent variables `p(1..L-1)` and `u(2..L)`, with `u(1)` and `p̃(1)`
/// held fixed.
struct Problem<'a> {
    sched: &'a MutationSchedule,
    path: Path,
    u1: Vec<f64>,
    /// `p(L)`, fixed by the closing relation onto `p̃(1) = w(1)`.
    p_last: Vec<f64>,
    n: usize,
    len: usize,
}

impl<'a> Problem<'a> {
    fn for_state(state: &SaddleState, b: &ExchangeMatrix, sched: &'a MutationSchedule) -> Result<Self> {
        let (n, len) = (b.rank(), sched.len());
        let path = path(b, sched)?;
        let last = len - 1;
        let w1 = w_of(&path.matrices[0], &state.u[0]);
        let mut closing = vec![Complex64::new(0.0, 0.0); n];
        for (i, &v) in sched.nu.iter().enumerate() {
            closing[v] = w1[i];
        }
        let p_last = re(&x_step_inverse(&path.matrices[last], sched.sequence[last], path.signs[last], &closing));
        Ok(Problem { sched, path, u1: re(&state.u[0]), p_last, n, len })
    }

    fn point(&self, state: &SaddleState) -> Vec<f64> {
        let mut x = Vec::with_capacity(2 * self.n * (self.len - 1));
        for t in 0..self.len - 1 {
            x.extend(re(&state.p[t]));
        }
        for t in 1..self.len {
            x.extend(re(&state.u[t]));
        }
        x
    }

    fn unpack(&self, x: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let (n, l) = (self.n, self.len);
        let mut p: Vec<Vec<f64>> = (0..l - 1).map(|t| x[t * n..(t + 1) * n].to_vec()).collect();
        p.push(self.p_last.clone());
        let off = (l - 1) * n;
        let mut u = vec![self.u1.clone()];
        u.extend((0..l - 1).map(|t| x[off + t * n..off + (t + 1) * n].to_vec()));
        (p, u)
    }

    #[cfg(test)]
    fn exponent(&self, x: &[f64]) -> Result<f64> {
        let (p, u) = self.unpack(x);
        let c = |v: &[f64]| v.iter().map(|&a| Complex64::new(a, 0.0)).collect::<Vec<_>>();
        let w1: Vec<f64> = w_of(&self.path.matrices[0], &c(&u[0])).iter().map(|z| z.re).collect();
        let mut ptilde = w1;
        let mut s = 0.0;
        for t in 0..self.len {
            use crate::dilog::li2::li2;
            let (k, bt, eps) = (self.sched.sequence[t], &self.path.matrices[t], self.path.signs[t]);
            let w: Vec<f64> = w_of(bt, &c(&u[t])).iter().map(|z| z.re).collect();
            let log_y = f64::from(eps) * (p[t][k] + w[k]);
            s += 0.5 * f64::from(eps) * li2(-log_y.exp())?;
            s += (0..self.n).map(|i| u[t][i] * (p[t][i] - ptilde[i])).sum::<f64>();
            ptilde = x_step(bt, k, eps, &c(&p[t])).iter().map(|z| z.re).collect();
        }
        Ok(s)
    }

    /// Analytic gradient: `∂/∂p(t)` for `t = 1..L-1`, then `∂/∂u(t)` for
    /// `t = 2..L`.
    fn gradient(&self, x: &[f64]) -> DVector<f64> {
        let (p, u) = self.unpack(x);
        let (n, l) = (self.n, self.len);
        let c = |v: &[f64]| v.iter().map(|&a| Complex64::new(a, 0.0)).collect::<Vec<_>>();
        let mut g = DVector::zeros(x.len());
        let mut softplus = Vec::with_capacity(l);
        for t in 0..l {
            let (k, bt, eps) = (self.sched.sequence[t], &self.path.matrices[t], self.path.signs[t]);
            let wk: f64 = (0..n).map(|j| bt.get(j, k) as f64 * u[t][j]).sum();
            let a = f64::from(eps) * (p[t][k] + wk);
            softplus.push(a.max(0.0) + (-a.abs()).exp().ln_1p());
        }
        for t in 0..l - 1 {
            let (k, bt, eps) = (self.sched.sequence[t], &self.path.matrices[t], self.path.signs[t]);
            let e = i64::from(eps);
            for i in 0..n {
                g[t * n + i] = if i == k {
                    let s: f64 = (0..n).map(|j| pos(e * bt.get(k, j)) as f64 * u[t + 1][j]).sum();
                    -0.5 * softplus[t] + u[t][k] - s + u[t + 1][k]
                } else {
                    u[t][i] - u[t + 1][i]
                };
            }
        }
        let off = (l - 1) * n;
        for t in 1..l {
            let (k, bt) = (self.sched.sequence[t], &self.path.matrices[t]);
            let prev = t - 1;
            let pt = x_step(&self.path.matrices[prev], self.sched.sequence[prev], self.path.signs[prev], &c(&p[prev]));
            for i in 0..n {
                g[off + (t - 1) * n + i] = 0.5 * bt.get(k, i) as f64 * softplus[t] + p[t][i] - pt[i].re;
            }
        }
        g
    }
}

fn re(v: &[Complex64]) -> Vec<f64> {
    v.iter().map(|z| z.re).collect()
}

/// Size of the Newton correction `|J⁺ ∇S|_∞` at the state, with the Jacobian
/// of the gradient taken by central differences.
pub fn newton_step_size(state: &SaddleState, b: &ExchangeMatrix, sched: &MutationSchedule) -> Result<f64> {
    if state.mode != SaddleMode::B {
        return Err(Error::Domain("the Newton check runs in b-mode".into()));
    }
    if sched.len() < 2 {
        return Ok(0.0);
    }
    let problem = Problem::for_state(state, b, sched)?;
    let x = problem.point(state);
    let m = x.len();
    let g0 = problem.gradient(&x);
    let mut jac = DMatrix::zeros(m, m);
    let mut xm = x.clone();
    for j in 0..m {
        let h = 1e-5 * x[j].abs().max(1.0);
        xm[j] = x[j] + h;
        let gp = problem.gradient(&xm);
        xm[j] = x[j] - h;
        let gm = problem.gradient(&xm);
        xm[j] = x[j];
        jac.set_column(j, &((gp - gm) / (2.0 * h)));
    }
    let svd = jac.svd(true, true);
    let step = svd
        .solve(&g0, 1e-8)
        .map_err(|e| Error::Domain(format!("Newton solve failed: {e}")))?;
    Ok(step.amax())
}
