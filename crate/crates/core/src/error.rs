use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown basis index {index} (algebra has dimension {dim})")]
    UnknownBasis { index: usize, dim: usize },
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("cochain flavor mismatch: expected {expected}, got {got}")]
    FlavorMismatch { expected: String, got: String },
    #[error("a weight must be supplied for the infinite-dimensional algebra {0}")]
    WeightRequired(String),
    #[error("degree must be at least {min}, got {got}")]
    Degree { min: usize, got: usize },
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("malformed algebra definition: {0}")]
    Definition(String),
    #[error("map is not injective on degree {degree}: rank {rank} < {cols} columns")]
    NotInjective { degree: usize, rank: usize, cols: usize },
    #[error("consecutive coboundaries do not compose to zero at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
