use thiserror::Error;

/// Errors produced by the mutation, torus, and numerics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} out of range for rank {rank} (indices are 1-based externally)")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },

    #[error("y-variable {index} is not strictly positive ({value})")]
    NonPositive { index: usize, value: f64 },

    #[error("c-vector {0:?} has entries of both signs")]
    MixedSignCVector(Vec<i64>),

    #[error("zero c-vector")]
    ZeroCVector,

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("sequence is not a period of the seed (matrix periodic: {matrix}, tropical periodic: {tropical})")]
    NotAPeriod { matrix: bool, tropical: bool },

    #[error("element is not invertible: zero leading shift coefficient")]
    NonInvertible,

    #[error("series argument does not truncate: {0}")]
    NonTruncating(String),

    #[error("torus elements live in incompatible contexts")]
    IncompatibleContext,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("|q| must be < 1 (got {0})")]
    QNotInDisk(f64),

    #[error("product hit a pole at factor {0}")]
    PoleHit(usize),

    #[error("quadrature failed to converge (error estimate {estimate:e})")]
    QuadratureFailure { estimate: f64 },

    #[error("argument {value} is within {distance:e} of a branch cut")]
    BranchProximity { value: String, distance: f64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("search resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
