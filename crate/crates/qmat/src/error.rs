use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QmatError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix has no rows or columns")]
    Empty,
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("not Hermitian: deviation {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error("dimension {0} exceeds eigensolver cap")]
    TooLarge(usize),
    #[error("factor index {0} out of range")]
    BadFactor(usize),
}
