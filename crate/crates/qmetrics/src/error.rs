use qchan::ChanError;
use qmat::QmatError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error(transparent)]
    Channel(#[from] ChanError),
    #[error(transparent)]
    Matrix(#[from] QmatError),
    #[error("{0} distinct spectral points; subset enumeration is capped at 16")]
    SpectrumTooLarge(usize),
    #[error("vectors are not orthonormal (overlap {0:.3e})")]
    NotOrthonormal(f64),
    #[error("map is not square: {0} -> {1}")]
    NotSquare(usize, usize),
    #[error("coding map does not factor through a classical algebra (off-diagonal leak {0:.3e})")]
    NotClassical(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
