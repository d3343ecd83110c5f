//! Faddeev's noncompact quantum dilogarithm
//!
//! `Φ_b(z) = exp(-¼ ∫ e^{-2izx} / (sinh(xb) sinh(x/b)) dx/x)`,
//!
//! with the contour along the real line passing above the origin. Inside the
//! strip `|Im z| < Im c_b` the integral is evaluated directly; elsewhere the
//! point is moved into the strip by the difference equations.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::li2::{li2, li2_complex};
use super::psiq::{log_psiq_numeric, psiq_numeric};
use super::quad::{gauss_legendre, integrate};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Fraction of the strip half-width inside which the integral is used.
pub const STRIP_FRACTION: f64 = 0.75;
const QUAD_TOL: f64 = 1e-13;
const TAIL_TOL: f64 = 1e-16;
const ARC_NODES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhibParams {
    pub b: Complex64,
}

impl PhibParams {
    pub fn new(b: Complex64) -> Result<Self> {
        if !(b.re != 0.0 && b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::Domain(format!("b must have nonzero finite real part, got {b}")));
        }
        Ok(PhibParams { b })
    }

    pub fn real(b: f64) -> Result<Self> {
        Self::new(Complex64::new(b, 0.0))
    }

    /// `c_b = (b + b⁻¹)·i/2`.
    pub fn c_b(&self) -> Complex64 {
        I * (self.b + self.b.inv()) * 0.5
    }

    /// `q = e^{iπb²}`.
    pub fn q(&self) -> Complex64 {
        (I * PI * self.b * self.b).exp()
    }

    /// `q^∨ = e^{iπ/b²}`.
    pub fn q_dual(&self) -> Complex64 {
        (I * PI / (self.b * self.b)).exp()
    }

    /// `q̄ = (q^∨)⁻¹`.
    pub fn q_bar(&self) -> Complex64 {
        self.q_dual().inv()
    }

    /// `ħ = πb²`.
    pub fn hbar(&self) -> Complex64 {
        self.b * self.b * PI
    }

    pub fn inverse(&self) -> Self {
        PhibParams { b: self.b.inv() }
    }

    pub fn negated(&self) -> Self {
        PhibParams { b: -self.b }
    }

    /// The integrand depends on `b` only through `sinh(xb) sinh(x/b)`, which
    /// is even in `b`; work with the representative of positive real part.
    fn representative(&self) -> Complex64 {
        if self.b.re > 0.0 {
            self.b
        } else {
            -self.b
        }
    }

    /// Half-width `Im c_b` of the strip of convergence.
    pub fn strip_half_width(&self) -> f64 {
        let b = self.representative();
        0.5 * (b.re + b.inv().re)
    }

    fn arc_radius(&self) -> f64 {
        let b = self.b.norm();
        let nearest_pole = PI * b.min(1.0 / b);
        (0.01 * (b + 1.0 / b)).min(0.25 * nearest_pole)
    }
}

/// `e^w - 1` without cancellation for small `w`.
fn expm1(w: Complex64) -> Complex64 {
    let (a, b) = (w.re, w.im);
    let s = (0.5 * b).sin();
    Complex64::new(a.exp_m1() * b.cos() - 2.0 * s * s, a.exp() * b.sin())
}

/// `1 / (sinh(bx) sinh(x/b))` as `4e^{-βx} / (expm1(-2bx)·expm1(-2x/b))`,
/// with the exponential left to the caller.
fn inv_sinh_pair_scaled(b: Complex64, x: Complex64) -> Complex64 {
    Complex64::new(4.0, 0.0) / (expm1(-b * x * 2.0) * expm1(-x * 2.0 / b))
}

/// `log Φ_b(z)` for `z` inside the strip, by direct quadrature.
fn log_phib_strip(z: Complex64, p: &PhibParams) -> Result<Complex64> {
    let b = p.representative();
    let beta = b + b.inv();
    let kappa = beta.re - 2.0 * z.im.abs();
    if kappa <= 0.0 {
        return Err(Error::Domain(format!("{z} lies outside the strip of convergence")));
    }
    let r = p.arc_radius();

    // Real half-lines folded onto [r, X]:
    // f(x) + f(-x) = 4 (e^{-2izx-βx} - e^{2izx-βx}) / (x·expm1·expm1).
    let line = |x: f64| {
        let xc = Complex64::new(x, 0.0);
        let e1 = (-I * z * 2.0 * x - beta * x).exp();
        let e2 = (I * z * 2.0 * x - beta * x).exp();
        (e1 - e2) * inv_sinh_pair_scaled(b, xc) / x
    };
    let mut upper = (8.0 / (kappa * TAIL_TOL)).ln() / kappa;
    upper = upper.max(r + 1.0);
    let tail_bound = 8.0 * (-kappa * upper).exp() / (kappa * upper) * 1.5;
    let segments = ((upper - r) * (1.0 + 2.0 * z.re.abs())).ceil().clamp(8.0, 400.0) as usize;
    let real_part = integrate(line, r, upper, segments, QUAD_TOL, QUAD_TOL)?;

    // Upper semicircle from -r to r: -∫_0^π f(re^{iθ}) i r e^{iθ} dθ.
    let (nodes, weights) = gauss_legendre(ARC_NODES);
    let mut arc = Complex64::new(0.0, 0.0);
    for (t, w) in nodes.iter().zip(&weights) {
        let theta = 0.5 * PI * (t + 1.0);
        let x = Complex64::from_polar(r, theta);
        let f = (-I * z * x * 2.0 - beta * x).exp() * inv_sinh_pair_scaled(b, x) / x;
        arc -= f * I * x * (0.5 * PI * w);
    }
    let total = real_part.value + arc;
    if !(total.re.is_finite() && total.im.is_finite()) {
        return Err(Error::QuadratureFailure { estimate: real_part.error + tail_bound });
    }
    Ok(-total * 0.25)
}

/// Moves `z` into the strip with the difference equations. Returns the point
/// reached and the factor `F` with `Φ_b(z) = F·Φ_b(z₀)`.
fn shift_into_strip(z: Complex64, p: &PhibParams) -> Result<(Complex64, Complex64)> {
    let b = p.representative();
    let limit = STRIP_FRACTION * p.strip_half_width();
    let (s, big_q) = if b.re <= b.inv().re { (b, p.q()) } else { (b.inv(), p.q_dual()) };
    let mut z0 = z;
    let mut factor = ONE;
    let mut steps = 0;
    while z0.im >= limit || z0.im <= -limit {
        steps += 1;
        if steps > 10_000 {
            return Err(Error::Domain(format!("cannot shift {z} into the strip")));
        }
        if z0.im >= limit {
            z0 -= I * s;
            factor *= ONE + (z0 * s * 2.0 * PI).exp() * big_q;
        } else {
            z0 += I * s;
            let d = ONE + (z0 * s * 2.0 * PI).exp() / big_q;
            if d.norm() == 0.0 {
                return Err(Error::Domain(format!("Φ_b has a pole at {z}")));
            }
            factor /= d;
        }
    }
    Ok((z0, factor))
}

/// `Φ_b(z)`.
pub fn phib(z: Complex64, p: &PhibParams) -> Result<Complex64> {
    let (z0, factor) = shift_into_strip(z, p)?;
    Ok(factor * log_phib_strip(z0, p)?.exp())
}

/// A logarithm of `Φ_b(z)`: the integral itself inside the strip, plus
/// principal logarithms of the shift factors outside it.
pub fn log_phib(z: Complex64, p: &PhibParams) -> Result<Complex64> {
    let (z0, factor) = shift_into_strip(z, p)?;
    Ok(factor.ln() + log_phib_strip(z0, p)?)
}

/// `|Φ_b(z) - Φ_{1/b}(z)|` and `|Φ_b(z) - Φ_{-b}(z)|`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DualityResidual {
    pub inverse: f64,
    pub negative: f64,
}

impl DualityResidual {
    pub fn max(&self) -> f64 {
        self.inverse.max(self.negative)
    }
}

pub fn check_duality(z: Complex64, b: Complex64) -> Result<DualityResidual> {
    let p = PhibParams::new(b)?;
    let v = phib(z, &p)?;
    Ok(DualityResidual {
        inverse: (v - phib(z, &p.inverse())?).norm(),
        negative: (v - phib(z, &p.negated())?).norm(),
    })
}

/// Residuals of `Φ_b(z + ib/2) = (1 + e^{2πb(z-ib/2)} q) Φ_b(z - ib/2)` and
/// its `b ↦ 1/b` twin with `q^∨`, as `|ratio - factor|`.
pub fn check_recurrence(z: Complex64, p: &PhibParams) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (s, big_q) in [(p.b, p.q()), (p.b.inv(), p.q_dual())] {
        let lo = z - I * s * 0.5;
        let hi = z + I * s * 0.5;
        let ratio = phib(hi, p)? / phib(lo, p)?;
        let expected = ONE + (lo * s * 2.0 * PI).exp() * big_q;
        worst = worst.max((ratio - expected).norm());
    }
    Ok(worst)
}

/// `||Φ_b(z)| - 1|`; meaningful for real `z` and `b` real or `|b| = 1`.
pub fn check_unitarity(z: f64, p: &PhibParams) -> Result<f64> {
    Ok((phib(Complex64::new(z, 0.0), p)?.norm() - 1.0).abs())
}

/// `|Φ_b(z) - Ψ_q(e^{2πbz}) / Ψ_{q̄}(e^{2πz/b})|`, requiring `Im b² > 0`.
pub fn check_product_form(z: Complex64, p: &PhibParams) -> Result<f64> {
    if (p.b * p.b).im <= 0.0 {
        return Err(Error::Domain("product form needs Im b² > 0".into()));
    }
    let num = psiq_numeric((z * p.b * 2.0 * PI).exp(), p.q())?;
    let den = psiq_numeric((z / p.b * 2.0 * PI).exp(), p.q_bar())?;
    Ok((phib(z, p)? - num / den).norm())
}

/// One row of an asymptotics scan.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AsymptoticRow {
    pub parameter: f64,
    pub argument: f64,
    pub deviation: f64,
}

/// `|2πi b² log Φ_b(z/(2πb)) + Li₂(-e^z)|` for each `b`.
pub fn check_phib_asymptotics(z: f64, bs: &[f64]) -> Result<Vec<AsymptoticRow>> {
    let target = li2_complex(Complex64::new(-z.exp(), 0.0))?;
    bs.iter()
        .map(|&b| {
            let p = PhibParams::real(b)?;
            let l = log_phib(Complex64::new(z / (2.0 * PI * b), 0.0), &p)?;
            let deviation = (I * 2.0 * PI * b * b * l + target).norm();
            Ok(AsymptoticRow { parameter: b, argument: z, deviation })
        })
        .collect()
}

/// `|2 log q · log Ψ_q(x) + Li₂(-x)|` for each real `q ∈ (0, 1)`.
pub fn check_psi_asymptotics(x: f64, qs: &[f64]) -> Result<Vec<AsymptoticRow>> {
    let target = li2(-x)?;
    qs.iter()
        .map(|&q| {
            let l = log_psiq_numeric(Complex64::new(x, 0.0), Complex64::new(q, 0.0))?;
            let deviation = (Complex64::new(2.0 * q.ln(), 0.0) * l + target).norm();
            Ok(AsymptoticRow { parameter: q, argument: x, deviation })
        })
        .collect()
}

/// True when the deviations strictly decrease along the scan.
pub fn strictly_decreasing(rows: &[AsymptoticRow]) -> bool {
    rows.windows(2).all(|w| w[1].deviation < w[0].deviation)
}
