//! Euler dilogarithm `Li₂` (real and principal-branch complex) and the Rogers
//! dilogarithm `L`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const PI2_6: f64 = PI * PI / 6.0;

/// Distance from the cut `[1, ∞)` below which complex evaluation refuses.
pub const BRANCH_GUARD: f64 = 1e-6;

/// `B_{2k} / (2k+1)!` for `k = 1..15`; the series is
/// `Li₂(z) = u - u²/4 + Σ_k B_{2k} u^{2k+1} / (2k+1)!` with `u = -log(1-z)`.
const BERNOULLI_COEFFS: [f64; 15] = [
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211_680.0,
    -1.0 / 10_886_400.0,
    1.0 / 526_901_760.0,
    -4.064_761_645_144_226e-11,
    8.921_691_020_456_453e-13,
    -1.993_929_586_072_107_6e-14,
    4.518_980_029_619_918e-16,
    -1.035_651_761_218_125_8e-17,
    2.395_218_621_026_186_7e-19,
    -5.581_785_874_325_656e-21,
    1.309_150_755_418_321e-22,
    -3.087_419_802_426_740_4e-24,
    7.315_975_652_702_2e-26,
];

fn bernoulli_series_real(u: f64) -> f64 {
    let u2 = u * u;
    let mut p = u * u2;
    let mut s = 0.0;
    for c in BERNOULLI_COEFFS {
        s += c * p;
        p *= u2;
    }
    u - 0.25 * u2 + s
}

fn bernoulli_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut p = u * u2;
    let mut s = Complex64::new(0.0, 0.0);
    for c in BERNOULLI_COEFFS {
        s += p * c;
        p *= u2;
    }
    u - u2 * 0.25 + s
}

/// `Li₂(x)` for real `x ≤ 1`.
pub fn li2(x: f64) -> Result<f64> {
    if x.is_nan() || x > 1.0 {
        return Err(Error::Domain(format!("li2 needs x <= 1 on the real line, got {x}")));
    }
    Ok(li2_unchecked(x))
}

fn li2_unchecked(x: f64) -> f64 {
    if x == 1.0 {
        PI2_6
    } else if x == 0.0 {
        0.0
    } else if x < -1.0 {
        let l = (-x).ln();
        -PI2_6 - 0.5 * l * l - li2_unchecked(1.0 / x)
    } else if x < 0.0 {
        // Landen: maps [-1, 0) onto (0, 1/2].
        let l = (-x).ln_1p();
        -li2_unchecked(x / (x - 1.0)) - 0.5 * l * l
    } else if x > 0.5 {
        PI2_6 - x.ln() * (-x).ln_1p() - li2_unchecked(1.0 - x)
    } else {
        bernoulli_series_real(-(-x).ln_1p())
    }
}

/// Principal branch of `Li₂(z)`, with the cut along `(1, ∞)`.
pub fn li2_complex(z: Complex64) -> Result<Complex64> {
    check_branch(z)?;
    Ok(li2_complex_unchecked(z))
}

/// Fails if `z` lies within [`BRANCH_GUARD`] of the cut `(1, ∞)`.
pub fn check_branch(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.re > 1.0 && z.im.abs() < BRANCH_GUARD {
        return Err(Error::BranchProximity { value: z.to_string(), distance: z.im.abs() });
    }
    Ok(())
}

fn li2_complex_unchecked(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if z.im == 0.0 && z.re <= 1.0 {
        return Complex64::new(li2_unchecked(z.re), 0.0);
    }
    if z.norm_sqr() > 1.0 {
        let l = (-z).ln();
        return -l * l * 0.5 - PI2_6 - li2_complex_unchecked(one / z);
    }
    if z.re > 0.5 {
        let w = one - z;
        return -z.ln() * w.ln() + PI2_6 - li2_complex_unchecked(w);
    }
    bernoulli_series(-(one - z).ln())
}

/// Rogers dilogarithm `L(x) = Li₂(x) + ½ log x log(1-x)` on `[0, 1]`.
pub fn rogers_l(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Rogers L needs 0 <= x <= 1, got {x}")));
    }
    Ok(rogers_l_unchecked(x))
}

fn rogers_l_unchecked(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x == 1.0 {
        PI2_6
    } else if x > 0.5 {
        PI2_6 - rogers_l_unchecked(1.0 - x)
    } else {
        li2_unchecked(x) + 0.5 * x.ln() * (-x).ln_1p()
    }
}

/// `L(y / (1 + y))` for `y ≥ 0`, without forming an argument close to 1.
pub fn rogers_l_ratio(y: f64) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(Error::Domain(format!("need y >= 0, got {y}")));
    }
    if y.is_infinite() {
        return Ok(PI2_6);
    }
    Ok(if y <= 1.0 {
        rogers_l_unchecked(y / (1.0 + y))
    } else {
        PI2_6 - rogers_l_unchecked(1.0 / (1.0 + y))
    })
}

/// Complex Rogers dilogarithm on the principal branch.
pub fn rogers_l_complex(z: Complex64) -> Result<Complex64> {
    check_branch(z)?;
    let one = Complex64::new(1.0, 0.0);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    if z == one {
        return Ok(Complex64::new(PI2_6, 0.0));
    }
    Ok(li2_complex_unchecked(z) + z.ln() * (one - z).ln() * 0.5)
}
