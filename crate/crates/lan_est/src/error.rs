use thiserror::Error;

#[derive(Debug, Error)]
pub enum LanError {
    #[error(transparent)]
    Matrix(#[from] qmat::QmatError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("eigenvalue parameter μ = {0} outside the allowed range")]
    Mu(f64),
    #[error("degenerate frame: Bloch length {0:.3e}")]
    Degenerate(f64),
    #[error("block window normalization {0} below 1 − 1e-9")]
    Window(f64),
}
