//! Dense univariate integer polynomials in `q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients from degree 0 upward, with no trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * q^deg`.
    pub fn monomial(deg: usize, c: BigInt) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Poly(v)
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Poly::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Multiplicity of the root `q = 0`.
    pub fn low_degree(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `q^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.0.iter().take(k).all(Zero::is_zero));
        Poly(self.0[k.min(self.0.len())..].to_vec())
    }

    /// Multiplies by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    pub fn add(&self, o: &Self) -> Self {
        let (long, short) = if self.0.len() >= o.0.len() { (self, o) } else { (o, self) };
        let mut v = long.0.clone();
        for (a, b) in v.iter_mut().zip(&short.0) {
            *a += b;
        }
        Poly::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut v = self.0.clone();
        if v.len() < o.0.len() {
            v.resize(o.0.len(), BigInt::zero());
        }
        for (a, b) in v.iter_mut().zip(&o.0) {
            *a -= b;
        }
        Poly::from_coeffs(v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return o.clone();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Poly::from_coeffs(self.0.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Poly(self.0.iter().map(|a| a / c).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Pseudo-remainder of `self` by `d`: the remainder of `lc(d)^k * self`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.0.len() - 1;
        let lc = d.lead().expect("nonzero divisor").clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let lr = r.last().expect("nonempty").clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.0.iter().enumerate() {
                r[shift + i] -= &lr * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly(r)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in `Z[q]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if d.is_one() {
            return Some(self.clone());
        }
        if d.is_constant() {
            let c = &d.0[0];
            return self.0.iter().all(|a| a.is_multiple_of(c)).then(|| self.div_scalar(c));
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return None;
        }
        let lc = d.lead().expect("nonzero");
        let mut r = self.0.clone();
        let mut quo = vec![BigInt::zero(); r.len() - dd];
        for s in (0..quo.len()).rev() {
            let top = &r[s + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.0.iter().enumerate() {
                r[s + i] -= &qc * dc;
            }
            quo[s] = qc;
        }
        r.iter().all(Zero::is_zero).then(|| Poly::from_coeffs(quo))
    }

    /// Greatest common divisor in `Z[q]`, normalized to a positive leading
    /// coefficient. Computed with the primitive remainder sequence.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized_sign();
        }
        if o.is_zero() {
            return self.normalized_sign();
        }
        let c = self.content().gcd(&o.content());
        if self.is_constant() || o.is_constant() {
            return Poly::constant(c);
        }
        let (mut f, mut g) = if self.0.len() >= o.0.len() {
            (self.primitive_part(), o.primitive_part())
        } else {
            (o.primitive_part(), self.primitive_part())
        };
        while !g.is_zero() {
            if g.is_constant() {
                return Poly::constant(c);
            }
            let r = f.pseudo_rem(&g);
            f = g;
            g = r.primitive_part();
        }
        f.scale(&c)
    }

    fn normalized_sign(&self) -> Self {
        if self.lead().is_some_and(Signed::is_negative) {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sum of the coefficients, the value at `q = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_mag = !mag.is_one() || d == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "{}q", if show_mag { "*" } else { "" })?,
                _ => write!(f, "{}q^{d}", if show_mag { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
