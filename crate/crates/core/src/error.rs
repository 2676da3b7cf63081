use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate cone: {0}")]
    DegenerateCone(String),

    /// Dykstra's iteration hit the cycle cap without satisfying the
    /// feasibility/slackness tolerances.
    #[error(
        "projection did not converge after {cycles} cycles \
         (constraint violation {violation:.3e}, slackness residual {slackness:.3e})"
    )]
    ProjectionDidNotConverge {
        cycles: usize,
        violation: f64,
        slackness: f64,
    },

    #[error("estimation failed: {0}")]
    EstimationFailed(String),

    #[error("empty input: {0}")]
    EmptyInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
