//! Continuation of the λ-deformed stationary point towards `λ = 1`.

use num_complex::Complex64;
use serde::Serialize;

use super::solution::{build_solution_with, residuals, SaddleMode};
use crate::error::Result;
use crate::exchange::{ExchangeMatrix, MutationSchedule};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LambdaRow {
    pub lambda: Complex64,
    /// `|λ - 1|`.
    pub distance: f64,
    pub action: Complex64,
    pub action_abs: f64,
    /// `|action(λ) - action(b-mode)|`.
    pub action_gap: f64,
    /// `max_t |y_{k_t}(t; λ) - y_{k_t}(t; b-mode)|`.
    pub y_gap: f64,
    pub max_residual: f64,
}

/// `λ = 1 + δ e^{iθ}` for each `δ`.
pub fn lambda_ray(theta: f64, distances: &[f64]) -> Vec<Complex64> {
    distances.iter().map(|&d| Complex64::new(1.0, 0.0) + Complex64::from_polar(d, theta)).collect()
}

pub fn lambda_scan(
    b: &ExchangeMatrix,
    sched: &MutationSchedule,
    u1: &[f64],
    lambdas: &[Complex64],
    lambda_im_max: f64,
) -> Result<Vec<LambdaRow>> {
    let base = build_solution_with(b, sched, u1, SaddleMode::B, lambda_im_max)?;
    lambdas
        .iter()
        .map(|&lambda| {
            let st = build_solution_with(b, sched, u1, SaddleMode::Lambda { lambda }, lambda_im_max)?;
            let rep = residuals(&st, b, sched)?;
            let y_gap = st.yvals.iter().zip(&base.yvals).map(|(a, c)| (a - c).norm()).fold(0.0, f64::max);
            Ok(LambdaRow {
                lambda,
                distance: (lambda - 1.0).norm(),
                action: st.action,
                action_abs: st.action.norm(),
                action_gap: (st.action - base.action).norm(),
                y_gap,
                max_residual: rep.max_residual(),
            })
        })
        .collect()
}
