//! Error type shared across the crate.

/// Errors reported by samplers, targets, and estimators.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A state vector's length does not match the target dimension.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// An input or intermediate value was NaN or infinite where a finite
    /// value is required.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// The requested operation is not defined for the given configuration
    /// (e.g. exact sampling from a black-box target).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A configuration value violates its documented constraints.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An operation that needs at least one element received none.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// Every candidate weight is zero, so no candidate can be selected.
    #[error("all candidate weights are zero")]
    DegenerateWeights,

    /// Writing results failed.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
