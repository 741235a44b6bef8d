use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PointerError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("singular constraint denominator {0:.3e}")]
    Singular(f64),
    #[error("bracketing failed: {0}")]
    Bracket(String),
    #[error("divergent integrand: {0}")]
    Divergent(String),
    #[error("unsupported pointer: {0}")]
    Unsupported(String),
    #[error("invalid Bloch vector {0:?}")]
    InvalidBloch([f64; 3]),
}
