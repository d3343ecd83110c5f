//! Stationary point of the semiclassical exponent attached to a period.
//!
//! The exponent is `Σ_t {½ε_t Li₂(-y_{k_t}(t)^{ε_t}) + u(t)·(p(t) - p̃(t))}`
//! (with `λ` folded in for the deformed variant). The point is built from
//! `u(1)` by running the classical y-seed mutation; its residuals, action, and
//! a Newton step are then checked independently.

pub mod maps;
pub mod newton;
pub mod scan;
pub mod solution;

pub use maps::{coordinate_maps, TransformSpec};
pub use newton::newton_step_size;
pub use scan::{lambda_ray, lambda_scan, LambdaRow};
pub use solution::{
    action, build_solution, build_solution_with, residuals, SaddleMode, SaddleReport, SaddleState,
    DEFAULT_LAMBDA_IM_MAX,
};
