//! Dilogarithm numerics: Euler/Rogers dilogarithms, the classical identities
//! of a period, `Ψ_q` as an infinite product, and Faddeev's `Φ_b`.

pub mod classical;
pub mod li2;
pub mod phib;
pub mod psiq;
pub mod quad;

pub use classical::{verify_classical_identity, ClassicalIdentityReport, ClassicalTerm};
pub use li2::{li2, li2_complex, rogers_l, rogers_l_complex, rogers_l_ratio, PI2_6};
pub use phib::{
    check_duality, check_phib_asymptotics, check_product_form, check_psi_asymptotics,
    check_recurrence, check_unitarity, log_phib, phib, strictly_decreasing, AsymptoticRow,
    DualityResidual, PhibParams,
};
pub use psiq::{log_psiq_numeric, psiq_numeric};
