use qchan::ChanError;
use qmat::QmatError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error(transparent)]
    Matrix(#[from] QmatError),
    #[error(transparent)]
    Channel(#[from] ChanError),
    #[error("truncation level must be at least 1")]
    TooSmall,
    #[error("tail mass {tail:.3e} beyond level {n_max} exceeds {limit:.1e}")]
    Tail { tail: f64, n_max: usize, limit: f64 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}
