//! Classical Rogers dilogarithm identities attached to a period.

use serde::Serialize;

use super::li2::{rogers_l_ratio, PI2_6};
use crate::error::Result;
use crate::exchange::{numeric_trajectory, require_period, sign_sequence, ExchangeMatrix, MutationSchedule};

/// One summand `ε_t L(y^{ε_t} / (1 + y^{ε_t}))` with `y = y_{k_t}(t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalTerm {
    /// 1-based step.
    pub t: usize,
    /// 1-based mutated index.
    pub k: usize,
    pub eps: i8,
    pub y: f64,
    pub argument: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalIdentityReport {
    pub terms: Vec<ClassicalTerm>,
    /// `Σ ε_t L(y^{ε_t}/(1+y^{ε_t}))`, zero for a period.
    pub sum_signed: f64,
    /// `Σ L(y/(1+y))`, equal to `N₋·π²/6`.
    pub sum_di: f64,
    /// `Σ L(1/(1+y))`, equal to `N₊·π²/6`.
    pub sum_di_prime: f64,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl ClassicalIdentityReport {
    /// Largest of `|sum_signed|`, `|sum_di/(π²/6) - N₋|`, `|sum_di_prime/(π²/6) - N₊|`.
    pub fn max_deviation(&self) -> f64 {
        let a = self.sum_signed.abs();
        let b = (self.sum_di / PI2_6 - self.n_minus as f64).abs();
        let c = (self.sum_di_prime / PI2_6 - self.n_plus as f64).abs();
        a.max(b).max(c)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() < tol
    }
}

pub fn verify_classical_identity(
    b: &ExchangeMatrix,
    sched: &MutationSchedule,
    y0: &[f64],
) -> Result<ClassicalIdentityReport> {
    require_period(b, sched)?;
    let ss = sign_sequence(b, sched)?;
    let traj = numeric_trajectory(b, y0, &sched.sequence)?;
    let mut terms = Vec::with_capacity(sched.len());
    let (mut sum_signed, mut sum_di, mut sum_di_prime) = (0.0, 0.0, 0.0);
    for (t, &k) in sched.sequence.iter().enumerate() {
        let y = traj[t].y[k];
        let eps = ss.signs[t];
        let ye = if eps > 0 { y } else { y.recip() };
        let value = rogers_l_ratio(ye)?;
        let l_plus = rogers_l_ratio(y)?;
        let l_minus = rogers_l_ratio(y.recip())?;
        sum_signed += f64::from(eps) * value;
        sum_di += l_plus;
        sum_di_prime += l_minus;
        terms.push(ClassicalTerm {
            t: t + 1,
            k: k + 1,
            eps,
            y,
            argument: ye / (1.0 + ye),
            value,
        });
    }
    Ok(ClassicalIdentityReport {
        terms,
        sum_signed,
        sum_di,
        sum_di_prime,
        n_plus: ss.n_plus,
        n_minus: ss.n_minus,
    })
}
