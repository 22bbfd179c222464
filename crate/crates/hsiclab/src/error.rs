//! Error types shared across the crate.

use thiserror::Error;

/// Errors reported by kernel evaluation, distribution construction,
/// dependence computation, selection, and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("feature index {index} out of range for dimension {p}")]
    IndexOutOfRange { index: usize, p: usize },

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("kernel not admissible: {0}")]
    InadmissibleKernel(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("feature count {p} exceeds the {mode} limit of {max}")]
    TooManyFeatures {
        p: usize,
        max: usize,
        mode: &'static str,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
