//! Numerical `Ψ_q(x) = 1 / (-qx; q²)_∞` for `|q| < 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tail bound at which the product is truncated.
pub const PSI_TAIL: f64 = 1e-15;

const POLE_GUARD: f64 = 1e-14;

/// `log Ψ_q(x) = -Σ_{k≥0} log(1 + q^{2k+1} x)`, summed factorwise.
pub fn log_psiq_numeric(x: Complex64, q: Complex64) -> Result<Complex64> {
    let aq = q.norm();
    if !(aq < 1.0) {
        return Err(Error::QNotInDisk(aq));
    }
    let q2 = q * q;
    let mut qk = q;
    let mut acc = Complex64::new(0.0, 0.0);
    let ax = x.norm();
    if ax == 0.0 {
        return Ok(acc);
    }
    let tail_den = 1.0 - aq * aq;
    for k in 0.. {
        let t = qk * x;
        let f = Complex64::new(1.0, 0.0) + t;
        if f.norm() < POLE_GUARD {
            return Err(Error::PoleHit(k + 1));
        }
        acc -= ln_1p(t);
        qk *= q2;
        if qk.norm() * ax / tail_den < PSI_TAIL {
            break;
        }
    }
    Ok(acc)
}

pub fn psiq_numeric(x: Complex64, q: Complex64) -> Result<Complex64> {
    Ok(log_psiq_numeric(x, q)?.exp())
}

/// `log(1 + z)` accurate for small `z`.
pub fn ln_1p(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        // z - z²/2 + z³/3 - z⁴/4 + z⁵/5
        let mut s = Complex64::new(0.0, 0.0);
        let mut p = z;
        for n in 1..=6 {
            let term = p / n as f64;
            s += if n % 2 == 1 { term } else { -term };
            p *= z;
        }
        s
    } else {
        (Complex64::new(1.0, 0.0) + z).ln()
    }
}
