//! Coefficient fields for the quantum torus.
//!
//! [`QCoefficient`] is an exact element of `Q(q)`. [`Rational`] is the fast
//! mode: `q` specialized to a fixed rational number, which turns identity
//! checks into probabilistic ones.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

/// Field operations needed by torus series.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// False when `q` has been specialized to a number.
    const SYMBOLIC: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `self * q^k`, where `q` is the context's deformation parameter.
    fn times_q_pow(&self, k: i64, q: &Self) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        self.mul(&q.powi(k))
    }

    fn powi(&self, k: i64) -> Self {
        let (mut base, mut e) = if k < 0 {
            (self.inv().expect("negative power of zero"), k.unsigned_abs())
        } else {
            (self.clone(), k as u64)
        };
        let mut acc = Self::one();
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

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// `q^val * num(q) / den(q)` in canonical form: `num(0) != 0`, `den(0) != 0`,
/// `gcd(num, den) = 1` in `Z[q]`, and `den` has a positive leading
/// coefficient. Zero is `val = 0, num = 0, den = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QCoefficient {
    val: i64,
    num: Poly,
    den: Poly,
}

impl QCoefficient {
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i64) -> Self {
        QCoefficient { val: k, num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::from_parts(0, p, Poly::one())
    }

    /// Builds and canonicalizes `q^val * num / den`.
    pub fn from_parts(val: i64, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::strip(val, num, den)
    }

    /// Moves powers of `q` into `val` and fixes the sign; assumes coprime input.
    fn strip(val: i64, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let ln = num.low_degree();
        let ld = den.low_degree();
        let (mut num, mut den) = (num.shift_down(ln), den.shift_down(ld));
        if den.lead().is_some_and(Signed::is_negative) {
            num = num.neg();
            den = den.neg();
        }
        QCoefficient { val: val + ln as i64 - ld as i64, num, den }
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value at a real `q`; `None` at a pole.
    pub fn eval_at(&self, q: f64) -> Option<f64> {
        if self.is_zero() {
            return Some(0.0);
        }
        let d = self.den.eval_f64(q);
        if d == 0.0 || (q == 0.0 && self.val < 0) {
            return None;
        }
        Some(q.powi(self.val as i32) * self.num.eval_f64(q) / d)
    }

    /// Exact value at a rational `q`; `None` at a pole.
    pub fn eval_rational(&self, q: &BigRational) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let d = self.den.eval_rational(q);
        if d.is_zero() || (q.is_zero() && self.val < 0) {
            return None;
        }
        Some(num_traits::Pow::pow(q, self.val as i32) * self.num.eval_rational(q) / d)
    }

    /// Cross-multiplication equality, independent of canonical form.
    pub fn cross_eq(&self, o: &Self) -> bool {
        let v = self.val.min(o.val);
        let a = self.num.shift_up((self.val - v) as usize).mul(&o.den);
        let b = o.num.shift_up((o.val - v) as usize).mul(&self.den);
        a == b
    }
}

impl Coefficient for QCoefficient {
    const SYMBOLIC: bool = true;

    fn zero() -> Self {
        QCoefficient { val: 0, num: Poly::zero(), den: Poly::one() }
    }

    fn one() -> Self {
        Self::q_pow(0)
    }

    fn from_i64(v: i64) -> Self {
        Self::from_parts(0, Poly::constant(v.into()), Poly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let v = self.val.min(o.val);
        let na = self.num.shift_up((self.val - v) as usize);
        let nb = o.num.shift_up((o.val - v) as usize);
        if self.den == o.den {
            let t = na.add(&nb);
            if self.den.is_one() {
                return Self::strip(v, t, Poly::one());
            }
            return Self::from_parts(v, t, self.den.clone());
        }
        // Henrici: with g = gcd(da, db), only g can share factors with the new numerator.
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let t = na.mul(&o.den).add(&nb.mul(&self.den));
            return Self::strip(v, t, self.den.mul(&o.den));
        }
        let da1 = self.den.div_exact(&g).expect("gcd divides");
        let db1 = o.den.div_exact(&g).expect("gcd divides");
        let t = na.mul(&db1).add(&nb.mul(&da1));
        if t.is_zero() {
            return Self::zero();
        }
        let g2 = t.gcd(&g);
        let (t, g) = if g2.is_one() {
            (t, g)
        } else {
            (t.div_exact(&g2).expect("gcd divides"), g.div_exact(&g2).expect("gcd divides"))
        };
        Self::strip(v, t, da1.mul(&db1).mul(&g))
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let val = self.val + o.val;
        if self.den.is_one() && o.den.is_one() {
            return QCoefficient { val, num: self.num.mul(&o.num), den: Poly::one() };
        }
        let cancel = |n: &Poly, d: &Poly| -> (Poly, Poly) {
            if d.is_one() || n.is_one() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
            }
        };
        let (na, db) = cancel(&self.num, &o.den);
        let (nb, da) = cancel(&o.num, &self.den);
        Self::strip(val, na.mul(&nb), da.mul(&db))
    }

    fn neg(&self) -> Self {
        QCoefficient { val: self.val, num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::strip(-self.val, self.den.clone(), self.num.clone()))
    }

    fn times_q_pow(&self, k: i64, _q: &Self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        QCoefficient { val: self.val + k, num: self.num.clone(), den: self.den.clone() }
    }

    fn powi(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().expect("negative power of zero").powi(-k);
        }
        let e = u32::try_from(k).expect("exponent fits in u32");
        QCoefficient { val: self.val * k, num: self.num.pow(e), den: self.den.pow(e) }
    }

    fn is_one(&self) -> bool {
        self.val == 0 && self.num.is_one() && self.den.is_one()
    }
}

impl fmt::Debug for QCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mono = match self.val {
            0 => String::new(),
            1 => "q".to_string(),
            v => format!("q^{v}"),
        };
        let num = if self.num.is_constant() && !mono.is_empty() {
            match self.num.coeffs()[0].to_string().as_str() {
                "1" => mono.clone(),
                "-1" => format!("-{mono}"),
                c => format!("{c}*{mono}"),
            }
        } else if mono.is_empty() {
            if self.num.is_constant() || self.den.is_one() {
                self.num.to_string()
            } else {
                format!("({})", self.num)
            }
        } else {
            format!("{mono}*({})", self.num)
        };
        if self.den.is_one() {
            f.write_str(&num)
        } else if self.den.is_constant() {
            write!(f, "{num}/{}", self.den)
        } else {
            write!(f, "{num}/({})", self.den)
        }
    }
}

/// Fast-mode coefficient: a rational number, with `q` fixed to a rational
/// value held by the torus context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Coefficient for Rational {
    const SYMBOLIC: bool = false;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Rational(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qc(val: i64, num: &[i64], den: &[i64]) -> QCoefficient {
        QCoefficient::from_parts(val, Poly::from_i64(num), Poly::from_i64(den))
    }

    #[test]
    fn canonical_form() {
        // (q - q^3) / (1 - q^2) = q
        assert_eq!(qc(0, &[0, 1, 0, -1], &[1, 0, -1]), QCoefficient::q());
        // 2 / (-4 + 4q) = -1 / (2 - 2q) -> den lead positive
        let c = qc(0, &[2], &[-4, 4]);
        assert_eq!(c.denominator(), &Poly::from_i64(&[-2, 2]));
        assert_eq!(c.numerator(), &Poly::from_i64(&[1]));
        assert!(c.cross_eq(&qc(0, &[-1], &[2, -2])));
    }

    #[test]
    fn field_laws() {
        let a = qc(1, &[1, 1], &[1, 0, -1]);
        let b = qc(-2, &[3, 0, 1], &[1, 1]);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.add(&a.neg()), QCoefficient::zero());
        let c = qc(0, &[2, -1], &[1, 0, 0, 1]);
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn psi_second_coefficient() {
        // q^2 / ((1 - q^2)(1 - q^4))
        let c = qc(2, &[1], &[1, 0, -1]).mul(&qc(0, &[1], &[1, 0, 0, 0, -1]));
        assert_eq!(c.eval_at(0.5), Some(0.25 / (0.75 * 0.9375)));
        assert_eq!(c.to_string(), "q^2/(1 - q^2 - q^4 + q^6)");
    }

    #[test]
    fn display_forms() {
        assert_eq!(qc(1, &[-1], &[1, 0, -1]).to_string(), "q/(-1 + q^2)");
        assert_eq!(qc(0, &[1, 1], &[1]).to_string(), "1 + q");
        assert_eq!(QCoefficient::zero().to_string(), "0");
    }

    #[test]
    fn evaluation() {
        let c = qc(-1, &[1, 1], &[1, 2]);
        assert_eq!(c.eval_at(1.0), Some(2.0 / 3.0));
        assert_eq!(qc(0, &[1], &[1, -1]).eval_at(1.0), None);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(c.eval_rational(&half), Some(BigRational::new(3.into(), 2.into())));
    }

    #[test]
    fn rational_mode() {
        let q = Rational::new(1, 3);
        assert_eq!(Rational::one().times_q_pow(-2, &q), Rational::from_i64(9));
        assert_eq!(q.inv().unwrap(), Rational::from_i64(3));
    }
}
