use thiserror::Error;

/// Errors raised by evaluation, reduction and minimization routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("theta argument X must be positive, got {0}")]
    NonPositiveX(f64),

    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(f64),

    #[error("y must be positive, got {0}")]
    NonPositiveY(f64),

    #[error("series did not reach tolerance within {max_terms} terms")]
    TruncationFailure { max_terms: usize },

    #[error("unsupported derivative order ({x_order}, {y_order})")]
    UnsupportedOrder { x_order: u8, y_order: u8 },

    #[error("invalid series configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("lattice enumeration would visit {count} points")]
    RadiusTooLarge { count: u64 },

    #[error("reduction did not converge in {iterations} steps")]
    ReductionDivergence { iterations: usize },

    #[error("tail bound {tail:e} exceeds tolerance for sum {sum:e} at cutoff {cutoff}")]
    TailTooLarge { tail: f64, sum: f64, cutoff: f64 },

    #[error("quadrature tail did not converge before x = {x_max}")]
    QuadratureDivergence { x_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
