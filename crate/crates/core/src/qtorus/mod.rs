//! Exact arithmetic in the completed quantum torus and the Ψ_q identities.

pub mod coeff;
pub mod element;
pub mod identities;
pub mod poly;
pub mod psi;
pub mod seeds;

pub use coeff::{Coefficient, QCoefficient, Rational};
pub use element::{Ctx, TorusContext, TorusElement};
pub use identities::{
    dual_factor_data, tropical_factor_data, universal_arguments, verify_dual_pair,
    verify_shuffle, verify_tropical_identity, verify_universal_identity, MonomialFactor,
    Residual, Verdict,
};
pub use psi::{psi_series, psi_series_param};
pub use seeds::{quantum_mutate, quantum_trajectory, QuantumSeedSeries};

use crate::error::Result;
use crate::exchange::ExchangeMatrix;

/// `⟨α, β⟩ = αᵀBβ`.
pub fn pairing(alpha: &[i64], beta: &[i64], b: &ExchangeMatrix) -> Result<i64> {
    b.pairing(alpha, beta)
}
