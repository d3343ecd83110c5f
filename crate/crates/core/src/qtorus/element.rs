//! Truncated series in the completed quantum torus.
//!
//! An element is stored as `Σ_δ c_δ Y^{γ+δ}` with base `γ ∈ Z^n`, shifts
//! `δ ≥ 0`, `|δ| ≤ N`, and `Y^α` the normal-ordered monomial. The
//! commutation rule is `Y^α Y^β = q^{-⟨α,β⟩} Y^{α+β}` with `⟨α,β⟩ = αᵀBβ`.
//! Terms with `|δ| > N` are unknown, so precision is relative to the base.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::coeff::{Coefficient, QCoefficient, Rational};
use crate::error::{Error, Result};
use crate::exchange::ExchangeMatrix;

/// Commutation data and truncation order shared by compatible elements.
#[derive(Debug, PartialEq)]
pub struct TorusContext<C> {
    matrix: ExchangeMatrix,
    order: usize,
    q: C,
}

pub type Ctx<C> = Arc<TorusContext<C>>;

impl<C: Coefficient> TorusContext<C> {
    pub fn with_q(matrix: ExchangeMatrix, order: usize, q: C) -> Ctx<C> {
        Arc::new(TorusContext { matrix, order, q })
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn q(&self) -> &C {
        &self.q
    }
}

impl TorusContext<QCoefficient> {
    /// Exact `Q(q)` coefficients.
    pub fn exact(matrix: ExchangeMatrix, order: usize) -> Ctx<QCoefficient> {
        Self::with_q(matrix, order, QCoefficient::q())
    }
}

impl TorusContext<Rational> {
    /// Fast mode with `q` fixed to `q0`.
    pub fn at(matrix: ExchangeMatrix, order: usize, q0: Rational) -> Ctx<Rational> {
        Self::with_q(matrix, order, q0)
    }
}

#[derive(Clone)]
pub struct TorusElement<C: Coefficient = QCoefficient> {
    ctx: Ctx<C>,
    base: Vec<i64>,
    terms: BTreeMap<Vec<i64>, C>,
}

fn degree(delta: &[i64]) -> usize {
    delta.iter().sum::<i64>() as usize
}

/// All `δ ∈ Z_{≥0}^n` with `|δ| ≤ order`, sorted by total degree.
pub(crate) fn shifts_up_to(n: usize, order: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; n]];
    let mut frontier = vec![vec![0; n]];
    for _ in 0..order {
        let mut next = Vec::new();
        for d in &frontier {
            // Increment only at or after the last nonzero slot to avoid duplicates.
            let start = d.iter().rposition(|&x| x != 0).unwrap_or(0);
            for i in start..n {
                let mut e = d.clone();
                e[i] += 1;
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl<C: Coefficient> TorusElement<C> {
    pub fn zero(ctx: &Ctx<C>) -> Self {
        TorusElement { ctx: ctx.clone(), base: vec![0; ctx.rank()], terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx<C>) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &Ctx<C>, c: C) -> Self {
        Self::term(ctx, &vec![0; ctx.rank()], c)
    }

    /// `Y^α`.
    pub fn monomial(ctx: &Ctx<C>, alpha: &[i64]) -> Self {
        Self::term(ctx, alpha, C::one())
    }

    /// `c Y^α`.
    pub fn term(ctx: &Ctx<C>, alpha: &[i64], c: C) -> Self {
        assert_eq!(alpha.len(), ctx.rank(), "exponent dimension");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; alpha.len()], c);
        }
        TorusElement { ctx: ctx.clone(), base: alpha.to_vec(), terms }
    }

    /// `Y_i` for a 0-based index.
    pub fn generator(ctx: &Ctx<C>, i: usize) -> Self {
        let mut e = vec![0; ctx.rank()];
        e[i] = 1;
        Self::monomial(ctx, &e)
    }

    /// Sum of `c Y^α` over the given absolute exponents; the base is their
    /// componentwise minimum.
    pub fn from_terms(ctx: &Ctx<C>, terms: Vec<(Vec<i64>, C)>) -> Self {
        let n = ctx.rank();
        let mut acc = Self::zero(ctx);
        if terms.is_empty() {
            return acc;
        }
        let mut base = terms[0].0.clone();
        for (a, _) in &terms {
            assert_eq!(a.len(), n, "exponent dimension");
            for (b, &x) in base.iter_mut().zip(a) {
                *b = (*b).min(x);
            }
        }
        acc.base = base;
        for (a, c) in terms {
            let d: Vec<i64> = a.iter().zip(&acc.base).map(|(x, b)| x - b).collect();
            if degree(&d) <= ctx.order {
                acc.add_term(d, c);
            }
        }
        acc
    }

    fn add_term(&mut self, delta: Vec<i64>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(delta) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn context(&self) -> &Ctx<C> {
        &self.ctx
    }

    pub fn base(&self) -> &[i64] {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient at shift `δ = 0`.
    pub fn leading_coefficient(&self) -> C {
        self.terms.get(&vec![0; self.base.len()]).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the normal-ordered monomial `Y^α`.
    pub fn coefficient(&self, alpha: &[i64]) -> C {
        let d: Vec<i64> = alpha.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        self.terms.get(&d).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms as `(α, c)` with absolute exponents, by shift order.
    pub fn terms(&self) -> Vec<(Vec<i64>, C)> {
        self.terms
            .iter()
            .map(|(d, c)| (d.iter().zip(&self.base).map(|(x, b)| x + b).collect(), c.clone()))
            .collect()
    }

    pub fn check_compatible(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx {
            Ok(())
        } else {
            Err(Error::IncompatibleContext)
        }
    }

    /// Re-expresses the element relative to a lower base `m ≤ γ`, dropping
    /// terms beyond the truncation order.
    pub fn rebase(&self, m: &[i64]) -> Result<Self> {
        if m.len() != self.base.len() {
            return Err(Error::DimensionMismatch { expected: self.base.len(), found: m.len() });
        }
        if m.iter().zip(&self.base).any(|(a, b)| a > b) {
            return Err(Error::Domain(format!("rebase target {m:?} exceeds base {:?}", self.base)));
        }
        let shift: Vec<i64> = self.base.iter().zip(m).map(|(b, a)| b - a).collect();
        let mut terms = BTreeMap::new();
        for (d, c) in &self.terms {
            let e: Vec<i64> = d.iter().zip(&shift).map(|(x, s)| x + s).collect();
            if degree(&e) <= self.ctx.order {
                terms.insert(e, c.clone());
            }
        }
        Ok(TorusElement { ctx: self.ctx.clone(), base: m.to_vec(), terms })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        if o.is_zero() && o.base == self.base {
            return Ok(self.clone());
        }
        let m: Vec<i64> = self.base.iter().zip(&o.base).map(|(a, b)| *a.min(b)).collect();
        let mut acc = self.rebase(&m)?;
        for (d, c) in o.rebase(&m)?.terms {
            acc.add_term(d, c);
        }
        Ok(acc)
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return TorusElement { terms: BTreeMap::new(), ..self.clone() };
        }
        self.map_coefficients(|c| c.mul(s))
    }

    /// `q^k · self`.
    pub fn scale_q_pow(&self, k: i64) -> Self {
        let q = self.ctx.q.clone();
        self.map_coefficients(|c| c.times_q_pow(k, &q))
    }

    fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        TorusElement {
            ctx: self.ctx.clone(),
            base: self.base.clone(),
            terms: self.terms.iter().map(|(d, c)| (d.clone(), f(c))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let n = self.base.len();
        let order = self.ctx.order;
        let b = &self.ctx.matrix;
        let q = &self.ctx.q;
        let base: Vec<i64> = self.base.iter().zip(&o.base).map(|(x, y)| x + y).collect();
        let mut acc = TorusElement { ctx: self.ctx.clone(), base, terms: BTreeMap::new() };
        let left: Vec<(usize, Vec<i64>, &Vec<i64>, &C)> = self
            .terms
            .iter()
            .map(|(d, c)| (degree(d), d.iter().zip(&self.base).map(|(x, g)| x + g).collect(), d, c))
            .collect();
        let right: Vec<(usize, Vec<i64>, &Vec<i64>, &C)> = o
            .terms
            .iter()
            .map(|(d, c)| (degree(d), d.iter().zip(&o.base).map(|(x, g)| x + g).collect(), d, c))
            .collect();
        let mut key = vec![0i64; n];
        for (da, alpha, sa, ca) in &left {
            for (db, beta, sb, cb) in &right {
                if da + db > order {
                    continue;
                }
                for i in 0..n {
                    key[i] = sa[i] + sb[i];
                }
                let e = -b.pairing_unchecked(alpha, beta);
                acc.add_term(key.clone(), ca.mul(cb).times_q_pow(e, q));
            }
        }
        Ok(acc)
    }

    /// Two-sided inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.leading_coefficient();
        let c0_inv = c0.inv().ok_or(Error::NonInvertible)?;
        let ctx = &self.ctx;
        let b = &ctx.matrix;
        let q = &ctx.q;
        let n = self.base.len();
        let gamma = &self.base;
        // s = Y^{-γ} · self = Σ c_δ q^{⟨γ,δ⟩} Y^δ
        let s: Vec<(Vec<i64>, C)> = self
            .terms
            .iter()
            .filter(|(d, _)| d.iter().any(|&x| x != 0))
            .map(|(d, c)| (d.clone(), c.times_q_pow(b.pairing_unchecked(gamma, d), q)))
            .collect();
        let mut inv: BTreeMap<Vec<i64>, C> = BTreeMap::new();
        for delta in shifts_up_to(n, ctx.order) {
            let value = if delta.iter().all(|&x| x == 0) {
                c0_inv.clone()
            } else {
                let mut sum = C::zero();
                for (d1, s1) in &s {
                    if d1.iter().zip(&delta).any(|(a, b)| a > b) {
                        continue;
                    }
                    let d2: Vec<i64> = delta.iter().zip(d1).map(|(a, b)| a - b).collect();
                    if let Some(b2) = inv.get(&d2) {
                        let e = -b.pairing_unchecked(d1, &d2);
                        sum = sum.add(&s1.mul(b2).times_q_pow(e, q));
                    }
                }
                if sum.is_zero() {
                    continue;
                }
                sum.mul(&c0_inv).neg()
            };
            inv.insert(delta, value);
        }
        let sinv = TorusElement { ctx: ctx.clone(), base: vec![0; n], terms: inv };
        let neg: Vec<i64> = gamma.iter().map(|x| -x).collect();
        sinv.mul(&Self::monomial(ctx, &neg))
    }

    /// Integer power; negative powers invert first.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.invert()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Nonzero terms of `self - o`.
    pub fn residual(&self, o: &Self) -> Result<Vec<(Vec<i64>, C)>> {
        Ok(self.sub(o)?.terms())
    }

    /// Equality up to the truncation order.
    pub fn equals(&self, o: &Self) -> Result<bool> {
        Ok(self.sub(o)?.is_zero())
    }

    /// Commutative image `Σ f(c_α) y^α`, with `f` evaluating coefficients.
    pub fn eval_commutative(&self, y: &[f64], f: impl Fn(&C) -> Option<f64>) -> Option<f64> {
        let mut s = 0.0;
        for (alpha, c) in self.terms() {
            let mono: f64 = alpha.iter().zip(y).map(|(&a, &yi)| yi.powi(a as i32)).product();
            s += f(&c)? * mono;
        }
        Some(s)
    }
}

impl TorusElement<QCoefficient> {
    /// Commutative image at `q = 1`.
    pub fn eval_at_q_one(&self, y: &[f64]) -> Option<f64> {
        self.eval_commutative(y, |c| c.eval_at(1.0))
    }
}

impl<C: Coefficient> PartialEq for TorusElement<C> {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o).unwrap_or(false)
    }
}

pub(crate) fn format_monomial(alpha: &[i64]) -> String {
    let parts: Vec<String> = alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| if a == 1 { format!("Y{}", i + 1) } else { format!("Y{}^{a}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        format!("Y^[{}]", parts.join(" "))
    }
}

impl<C: Coefficient> fmt::Display for TorusElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = self.terms();
        terms.sort_by_key(|(a, _)| (a.iter().sum::<i64>(), a.clone()));
        let rendered: Vec<String> =
            terms.iter().map(|(a, c)| format!("({c})·{}", format_monomial(a))).collect();
        write!(f, "{} + O(deg {})", rendered.join(" + "), self.ctx.order + 1)
    }
}

impl<C: Coefficient> fmt::Debug for TorusElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement(base {:?}: {self})", self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::poly::Poly;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap()
    }

    fn ctx(order: usize) -> Ctx<QCoefficient> {
        TorusContext::exact(a2(), order)
    }

    #[test]
    fn shift_enumeration() {
        let s = shifts_up_to(2, 3);
        assert_eq!(s.len(), 10);
        assert_eq!(s[0], vec![0, 0]);
        assert!(s.windows(2).all(|w| degree(&w[0]) <= degree(&w[1])));
        assert_eq!(shifts_up_to(4, 6).len(), 210);
    }

    #[test]
    fn generators_commute_up_to_q_squared() {
        let c = ctx(4);
        let y1 = TorusElement::generator(&c, 0);
        let y2 = TorusElement::generator(&c, 1);
        // Y1 Y2 = q^{2 b_21} Y2 Y1 with b_21 = 1.
        let lhs = y1.mul(&y2).unwrap();
        let rhs = y2.mul(&y1).unwrap().scale_q_pow(2);
        assert_eq!(lhs, rhs);
        // Y^{e1+e2} = q^{-1} Y1 Y2.
        let m = TorusElement::monomial(&c, &[1, 1]);
        assert_eq!(m, y1.mul(&y2).unwrap().scale_q_pow(-1));
    }

    #[test]
    fn monomial_product_rule() {
        let c = ctx(4);
        let (a, b) = ([2, -1], [-1, 3]);
        let lhs = TorusElement::monomial(&c, &a).mul(&TorusElement::monomial(&c, &b)).unwrap();
        let e = a2().pairing(&a, &b).unwrap();
        assert_eq!(lhs, TorusElement::monomial(&c, &[1, 2]).scale_q_pow(-e));
    }

    #[test]
    fn identity_and_inverse() {
        let c = ctx(6);
        let x = TorusElement::from_terms(
            &c,
            vec![
                (vec![1, 0], QCoefficient::one()),
                (vec![1, 1], QCoefficient::q()),
                (vec![2, 0], QCoefficient::from_i64(-3)),
            ],
        );
        let one = TorusElement::one(&c);
        assert_eq!(x.mul(&one).unwrap(), x);
        let xi = x.invert().unwrap();
        assert_eq!(xi.base(), &[-1, 0]);
        assert_eq!(x.mul(&xi).unwrap(), one);
        assert_eq!(xi.mul(&x).unwrap(), one);
        assert_eq!(xi.invert().unwrap(), x);
    }

    #[test]
    fn inverse_of_one_plus_y1() {
        let c = ctx(5);
        let one = TorusElement::one(&c);
        let a = one.add(&TorusElement::generator(&c, 0)).unwrap();
        let ai = a.invert().unwrap();
        for m in 0..=5i64 {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            assert_eq!(ai.coefficient(&[m, 0]), QCoefficient::from_i64(sign));
        }
        assert_eq!(a.mul(&ai).unwrap(), one);
    }

    #[test]
    fn non_invertible() {
        let c = ctx(3);
        let x = TorusElement::generator(&c, 0).add(&TorusElement::generator(&c, 1)).unwrap();
        assert_eq!(x.invert().unwrap_err(), Error::NonInvertible);
    }

    #[test]
    fn incompatible_contexts() {
        let x = TorusElement::generator(&ctx(3), 0);
        let y = TorusElement::generator(&ctx(4), 0);
        assert_eq!(x.mul(&y).unwrap_err(), Error::IncompatibleContext);
        // Structurally equal contexts are compatible.
        let z = TorusElement::generator(&ctx(3), 1);
        assert!(x.mul(&z).is_ok());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let c = ctx(2);
        let y1 = TorusElement::generator(&c, 0);
        let one = TorusElement::one(&c);
        let s = one.add(&y1).unwrap();
        let cube = s.pow(3).unwrap();
        assert_eq!(cube.coefficient(&[2, 0]), QCoefficient::from_i64(3));
        assert_eq!(cube.coefficient(&[3, 0]), QCoefficient::zero());
    }

    #[test]
    fn q_one_image() {
        let c = ctx(4);
        let x = TorusElement::from_terms(
            &c,
            vec![
                (vec![0, 1], QCoefficient::from_poly(Poly::from_i64(&[1, 1]))),
                (vec![1, 1], QCoefficient::q_pow(-2)),
            ],
        );
        let v = x.eval_at_q_one(&[0.5, 3.0]).unwrap();
        assert!((v - (2.0 * 3.0 + 1.5)).abs() < 1e-15);
    }

    #[test]
    fn fast_mode_matches_exact_evaluation() {
        let q0 = Rational::new(2, 7);
        let cf = TorusContext::at(a2(), 5, q0.clone());
        let ce = ctx(5);
        let build_f = |c: &Ctx<Rational>| {
            TorusElement::one(c).add(&TorusElement::generator(c, 0).scale_q_pow(1)).unwrap()
        };
        let build_e = |c: &Ctx<QCoefficient>| {
            TorusElement::one(c).add(&TorusElement::generator(c, 0).scale_q_pow(1)).unwrap()
        };
        let f = build_f(&cf).mul(&TorusElement::generator(&cf, 1)).unwrap().invert().unwrap();
        let e = build_e(&ce).mul(&TorusElement::generator(&ce, 1)).unwrap().invert().unwrap();
        for (alpha, c) in e.terms() {
            assert_eq!(Some(f.coefficient(&alpha).0), c.eval_rational(&q0.0));
        }
    }

    #[test]
    fn display_is_readable() {
        let c = ctx(2);
        let x = TorusElement::one(&c).add(&TorusElement::generator(&c, 0).scale_q_pow(1)).unwrap();
        assert_eq!(x.to_string(), "(1)·1 + (q)·Y^[Y1] + O(deg 3)");
    }
}
