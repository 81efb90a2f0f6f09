//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by fallible operations in this crate.
///
/// Programmer errors (out-of-bounds indexing, misuse of internal helpers)
/// panic instead; `Error` covers conditions a caller can hit with valid code
/// but unsuitable data or parameters.
#[derive(Debug, Error)]
pub enum Error {
    /// Operand shapes do not agree, e.g. multiplying a `3 x 4` by a `5 x 3`.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A search primitive was invoked over zero candidates.
    #[error("empty search domain")]
    EmptyDomain,

    /// A parameter is outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An edge weight is negative where the algorithm requires nonnegative
    /// weights.
    #[error("negative weight {weight} on edge ({u}, {v})")]
    NegativeWeight { u: usize, v: usize, weight: f64 },

    /// An instance failed structural validation.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// An algorithm was asked to run on an instance kind it does not handle.
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
