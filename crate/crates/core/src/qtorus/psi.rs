//! `Ψ_s(x) = Σ_n (-s x)^n / (s²; s²)_n` on truncated torus series.

use super::coeff::Coefficient;
use super::element::TorusElement;
use crate::error::{Error, Result};

/// Checks that every term of `x` has positive total degree, so that the
/// substitution into a power series truncates.
pub fn check_truncating<C: Coefficient>(x: &TorusElement<C>) -> Result<()> {
    let base = x.base();
    if base.iter().any(|&b| b < 0) {
        return Err(Error::NonTruncating(format!("argument has negative base {base:?}")));
    }
    if base.iter().all(|&b| b == 0) && !x.leading_coefficient().is_zero() {
        return Err(Error::NonTruncating("argument has a nonzero constant term".into()));
    }
    Ok(())
}

/// Coefficients `1, -s/(1-s²), s²/((1-s²)(1-s⁴)), ...` up to index `n_max`.
pub fn psi_coefficients<C: Coefficient>(s: &C, n_max: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(C::one());
    let s2 = s.mul(s);
    let mut s2n = C::one();
    for _ in 1..=n_max {
        s2n = s2n.mul(&s2);
        let denom = C::one().sub(&s2n).inv().expect("s is not a root of unity");
        let next = out.last().expect("nonempty").mul(&s.neg()).mul(&denom);
        out.push(next);
    }
    out
}

/// `Ψ_s(x)` for an arbitrary field element `s` (the context's `q` or its inverse).
pub fn psi_series_param<C: Coefficient>(x: &TorusElement<C>, s: &C) -> Result<TorusElement<C>> {
    check_truncating(x)?;
    let ctx = x.context();
    let n = ctx.rank();
    let order = ctx.order();
    let zero_base = vec![0; n];
    let mut acc = TorusElement::one(ctx);
    if x.is_zero() {
        return Ok(acc);
    }
    let coeffs = psi_coefficients(s, order);
    let mut power = TorusElement::one(ctx);
    for c in coeffs.iter().skip(1) {
        power = power.mul(x)?.rebase(&zero_base)?;
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power.scale(c))?;
    }
    Ok(acc)
}

/// `Ψ_q(x)` with the context's `q`.
pub fn psi_series<C: Coefficient>(x: &TorusElement<C>) -> Result<TorusElement<C>> {
    let q = x.context().q().clone();
    psi_series_param(x, &q)
}

/// `Ψ(x)^ε` for `ε = ±1`, the inverse by series inversion.
pub fn psi_power<C: Coefficient>(x: &TorusElement<C>, s: &C, eps: i8) -> Result<TorusElement<C>> {
    let p = psi_series_param(x, s)?;
    if eps >= 0 {
        Ok(p)
    } else {
        p.invert()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::ExchangeMatrix;
    use crate::qtorus::coeff::QCoefficient;
    use crate::qtorus::element::TorusContext;
    use crate::qtorus::poly::Poly;

    fn ctx(order: usize) -> crate::qtorus::element::Ctx<QCoefficient> {
        TorusContext::exact(ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap(), order)
    }

    fn qc(val: i64, num: &[i64], den: &[i64]) -> QCoefficient {
        QCoefficient::from_parts(val, Poly::from_i64(num), Poly::from_i64(den))
    }

    #[test]
    fn low_coefficients() {
        let c = ctx(4);
        let p = psi_series(&TorusElement::generator(&c, 0)).unwrap();
        assert_eq!(p.coefficient(&[0, 0]), QCoefficient::one());
        assert_eq!(p.coefficient(&[1, 0]), qc(1, &[-1], &[1, 0, -1]));
        assert_eq!(p.coefficient(&[2, 0]), qc(2, &[1], &[1, 0, -1, 0, -1, 0, 1]));
    }

    #[test]
    fn zero_argument() {
        let c = ctx(4);
        assert_eq!(psi_series(&TorusElement::zero(&c)).unwrap(), TorusElement::one(&c));
    }

    #[test]
    fn recursion() {
        let c = ctx(6);
        let x = TorusElement::monomial(&c, &[1, 1]).add(&TorusElement::generator(&c, 0)).unwrap();
        let lhs = psi_series(&x.scale_q_pow(2)).unwrap();
        let one_plus = TorusElement::one(&c).add(&x.scale_q_pow(1)).unwrap();
        let rhs = one_plus.mul(&psi_series(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_parameter_gives_inverse_series() {
        let c = ctx(6);
        let x = TorusElement::generator(&c, 1);
        let qinv = QCoefficient::q_pow(-1);
        let a = psi_series_param(&x, &qinv).unwrap();
        let b = psi_series(&x).unwrap().invert().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_constant_terms() {
        let c = ctx(3);
        let one = TorusElement::one(&c);
        assert!(matches!(psi_series(&one), Err(Error::NonTruncating(_))));
        let inv = TorusElement::monomial(&c, &[-1, 0]);
        assert!(matches!(psi_series(&inv), Err(Error::NonTruncating(_))));
    }
}
