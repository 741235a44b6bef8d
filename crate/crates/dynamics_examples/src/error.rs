use qbounds::BoundError;
use qchan::ChanError;
use qmat::QmatError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynError {
    #[error(transparent)]
    Matrix(#[from] QmatError),
    #[error(transparent)]
    Channel(#[from] ChanError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("amplitudes are not normalized (|α0|²+|α1|² = {0})")]
    NotNormalized(f64),
    #[error("chain length {0} exceeds the exact-simulation cap of {MAX_CHAIN}")]
    TooLarge(usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

pub const MAX_CHAIN: usize = 14;
