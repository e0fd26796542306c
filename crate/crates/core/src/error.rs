use thiserror::Error;

/// Failures reported by the numerical kernels and functionals.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid size {0} must be even and at least 4")]
    InvalidGridSize(usize),

    #[error("frequency bound {requested} exceeds the limit {limit} for this grid")]
    FrequencyOutOfRange { requested: usize, limit: usize },

    #[error("order {order} exceeds the available maximum {max}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("expected {expected} samples, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("point (u={u}, v={v}) lies within {margin} of a pole of the tangent identity")]
    SingularMargin { u: f64, v: f64, margin: f64 },

    #[error("sequence is empty")]
    EmptySequence,

    #[error("sequence of {len} terms exceeds the cap of {cap}")]
    SequenceTooLong { len: usize, cap: usize },

    #[error("grid size {size} exceeds the diagnostic limit {limit}")]
    GridTooLarge { size: usize, limit: usize },

    #[error("invalid function `{name}`: {reason}")]
    InvalidFunction { name: String, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
