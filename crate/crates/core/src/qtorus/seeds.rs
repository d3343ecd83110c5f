//! Quantum y-seeds expressed in the initial completed torus.

use super::coeff::Coefficient;
use super::element::{Ctx, TorusElement};
use crate::error::{Error, Result};
use crate::exchange::{pos, ExchangeMatrix, TropicalState};

#[derive(Clone, Debug)]
pub struct QuantumSeedSeries<C: Coefficient> {
    pub matrix: ExchangeMatrix,
    pub y: Vec<TorusElement<C>>,
}

impl<C: Coefficient> QuantumSeedSeries<C> {
    /// The initial seed `(B, Y)` of the context.
    pub fn initial(ctx: &Ctx<C>) -> Self {
        let y = (0..ctx.rank()).map(|i| TorusElement::generator(ctx, i)).collect();
        QuantumSeedSeries { matrix: ctx.matrix().clone(), y }
    }

    pub fn mutate(&self, k: usize, eps: i8) -> Result<Self> {
        quantum_mutate(self, k, eps)
    }

    /// Checks `Y_i Y_j = q^{2 b_ji} Y_j Y_i` for the current matrix.
    pub fn check_commutation(&self) -> Result<bool> {
        let n = self.y.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.y[i].mul(&self.y[j])?;
                let rhs = self.y[j].mul(&self.y[i])?.scale_q_pow(2 * self.matrix.get(j, i));
                if !lhs.equals(&rhs)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn equals(&self, o: &Self) -> Result<bool> {
        if self.matrix != o.matrix {
            return Ok(false);
        }
        for (a, b) in self.y.iter().zip(&o.y) {
            if !a.equals(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn non_truncating(e: Error) -> Error {
    match e {
        Error::NonInvertible => {
            Error::NonTruncating("exchange factor has no invertible leading term".into())
        }
        other => other,
    }
}

/// Quantum exchange relation at `k`, computed in the form attached to the
/// sign `eps`:
///
/// `Y''_i = q^{b'_ik [εb'_ki]_+} Y'_i Y'_k^{[εb'_ki]_+} Π_{m=1}^{|b'_ki|} (1 + q^{-ε sgn(b'_ki)(2m-1)} Y'_k^ε)^{-sgn(b'_ki)}`
/// and `Y''_k = Y'_k^{-1}`. Both signs give the same seed.
pub fn quantum_mutate<C: Coefficient>(
    s: &QuantumSeedSeries<C>,
    k: usize,
    eps: i8,
) -> Result<QuantumSeedSeries<C>> {
    s.matrix.check_index(k)?;
    if eps != 1 && eps != -1 {
        return Err(Error::Domain(format!("sign must be +1 or -1, got {eps}")));
    }
    let ctx = s.y[k].context().clone();
    let yk = &s.y[k];
    let yk_inv = yk.invert().map_err(non_truncating)?;
    let yk_eps = if eps > 0 { yk.clone() } else { yk_inv.clone() };
    let one = TorusElement::one(&ctx);
    let e = i64::from(eps);
    let mut y = Vec::with_capacity(s.y.len());
    for (i, yi) in s.y.iter().enumerate() {
        if i == k {
            y.push(yk_inv.clone());
            continue;
        }
        let bki = s.matrix.get(k, i);
        if bki == 0 {
            y.push(yi.clone());
            continue;
        }
        let m = pos(e * bki);
        let sgn = bki.signum();
        let mut acc = yi.mul(&yk.pow(m)?)?.scale_q_pow(s.matrix.get(i, k) * m);
        for j in 1..=bki.abs() {
            let factor = one.add(&yk_eps.scale_q_pow(-e * sgn * (2 * j - 1)))?;
            let factor = if sgn > 0 { factor.invert().map_err(non_truncating)? } else { factor };
            acc = acc.mul(&factor)?;
        }
        y.push(acc);
    }
    Ok(QuantumSeedSeries { matrix: s.matrix.mutate(k)?, y })
}

/// Runs the quantum seed along `sequence`, mutating with the tropical sign at
/// each step. Returns all `L + 1` seeds.
pub fn quantum_trajectory<C: Coefficient>(
    ctx: &Ctx<C>,
    sequence: &[usize],
) -> Result<Vec<QuantumSeedSeries<C>>> {
    let mut seeds = vec![QuantumSeedSeries::initial(ctx)];
    let mut trop = TropicalState::initial(ctx.matrix().clone());
    for &k in sequence {
        let eps = trop.sign(k)?;
        let next = seeds.last().expect("nonempty").mutate(k, eps)?;
        trop = trop.mutate(k)?;
        seeds.push(next);
    }
    Ok(seeds)
}
