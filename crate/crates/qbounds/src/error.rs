use qchan::ChanError;
use qmat::QmatError;
use qmetrics::MetricError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Channel(#[from] ChanError),
    #[error(transparent)]
    Matrix(#[from] QmatError),
    #[error("pointers do not commute (‖[B, B~]‖ = {0:.3e})")]
    NonCommuting(f64),
    #[error("eigenvalues coincide: {0} and {1}")]
    Degenerate(f64, f64),
    #[error("vector is not an eigenvector of the transferred observable (residual {0:.3e})")]
    NotEigenvector(f64),
    #[error("transfer is destructive on the eigenbasis (defect {0:.3e})")]
    Destructive(f64),
    #[error("commutator exceeds the stated bound: {found:.3e} > {allowed:.3e}")]
    CommutatorTooLarge { found: f64, allowed: f64 },
    #[error("pointer expectations coincide ({0})")]
    EqualExpectations(f64),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}
