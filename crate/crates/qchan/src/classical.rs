use qmat::{basis, ComplexMatrix, C64};

use crate::error::ChanError;

/// Classical system with `k` outcomes, realized as the diagonal subalgebra of
/// `k x k` matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalSystem {
    k: usize,
}

impl ClassicalSystem {
    pub fn new(k: usize) -> Result<Self, ChanError> {
        if k == 0 {
            return Err(ChanError::Invalid("classical system needs an outcome".into()));
        }
        Ok(Self { k })
    }

    pub fn outcomes(&self) -> usize {
        self.k
    }

    /// Function on the outcomes as a diagonal matrix.
    pub fn embed(&self, f: &[f64]) -> Result<ComplexMatrix, ChanError> {
        if f.len() != self.k {
            return Err(ChanError::DimensionMismatch {
                expected: self.k,
                found: f.len(),
            });
        }
        Ok(ComplexMatrix::from_real_diag(f))
    }

    /// Indicator of outcome `i`.
    pub fn delta(&self, i: usize) -> ComplexMatrix {
        let e = basis(self.k, i);
        ComplexMatrix::outer(&e, &e)
    }

    /// Whether `m` lies in the diagonal algebra.
    pub fn contains(&self, m: &ComplexMatrix, tol: f64) -> bool {
        m.rows() == self.k
            && m.cols() == self.k
            && (0..self.k).all(|i| (0..self.k).all(|j| i == j || m[(i, j)].norm() <= tol))
    }

    /// Probability vector as a diagonal density matrix.
    pub fn distribution(&self, p: &[f64]) -> Result<ComplexMatrix, ChanError> {
        self.embed(p)
    }

    pub fn unit(&self) -> ComplexMatrix {
        ComplexMatrix::from_diag(&vec![C64::new(1.0, 0.0); self.k])
    }
}
