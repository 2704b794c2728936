use thiserror::Error;

/// Failures surfaced by the computational pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    #[error("constant term {0} is not the square of a rational")]
    NotASquare(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("residual nonzero in {what} at {index}")]
    Residual { what: String, index: String },
    #[error("division left a remainder: {0}")]
    Remainder(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
