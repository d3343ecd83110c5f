//! Cluster y-seed mutation and dilogarithm identities attached to periods.
//!
//! * [`exchange`]: matrix, numeric, and tropical mutation; period checks.
//! * [`qtorus`]: exact quantum-torus series and the Ψ_q identities.
//! * [`dilog`]: Euler/Rogers dilogarithms, Ψ_q and Φ_b numerics.
//! * [`saddle`]: the constructed saddle point and its action.
//! * [`search`]: bounded breadth-first period search.

pub mod dilog;
pub mod error;
pub mod exchange;
pub mod qtorus;
pub mod saddle;
pub mod search;
pub mod seedspec;

pub use error::{Error, Result};
pub use exchange::{
    check_period, mutate_matrix, mutate_tropical, mutate_y_numeric, principal_extension,
    sign_sequence, tropical_sign, ExchangeMatrix, MutationSchedule, NumericSeed, PeriodReport,
    SignSequence, TropicalState,
};
pub use seedspec::{Builtin, SeedSpec};
