use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimensionality mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimensionality {0} is not supported (must be in {min}..={max})", min = crate::point::MIN_DIM, max = crate::point::MAX_DIM)]
    UnsupportedDimension(usize),

    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid dimension mask for d={dim}: {reason}")]
    InvalidMask { dim: usize, reason: &'static str },

    #[error("{0} requires a non-empty input")]
    EmptyInput(&'static str),

    #[error("input set is not marked as a verified Pareto set")]
    NotParetoVerified,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dataset generation failed: {0}")]
    Generation(String),

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
