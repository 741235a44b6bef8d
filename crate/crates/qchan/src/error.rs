use qmat::QmatError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChanError {
    #[error(transparent)]
    Matrix(#[from] QmatError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("channel has no Kraus operators")]
    Empty,
    #[error("not unital: ‖ΣV†V − 1‖ = {deviation:.3e}")]
    NotUnital { deviation: f64 },
    #[error("not a POVM: {0}")]
    NotPovm(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}
