use qmat::{eig_hermitian, op_norm, ComplexMatrix, DensityMatrix, HermitianOp};

use crate::channel::{lift_ancilla, KrausChannel};
use crate::error::ChanError;

/// Eigenvalues closer than this are treated as one spectral point.
pub const SPECTRAL_MERGE_TOL: f64 = 1e-9;

/// Finite POVM with real outcome labels.
#[derive(Debug, Clone)]
pub struct FinitePovm {
    dim: usize,
    elements: Vec<HermitianOp>,
    labels: Vec<f64>,
}

impl FinitePovm {
    pub fn new(elements: Vec<HermitianOp>, labels: Vec<f64>) -> Result<Self, ChanError> {
        let first = elements.first().ok_or(ChanError::Empty)?;
        let dim = first.dim();
        if labels.len() != elements.len() {
            return Err(ChanError::NotPovm(format!(
                "{} elements but {} labels",
                elements.len(),
                labels.len()
            )));
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (k, e) in elements.iter().enumerate() {
            if e.dim() != dim {
                return Err(ChanError::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            let (v, _) = eig_hermitian(e)?;
            let min = v.last().copied().unwrap_or(0.0);
            if min < -1e-10 {
                return Err(ChanError::NotPovm(format!("element {k} has eigenvalue {min:.3e}")));
            }
            sum += e.matrix();
        }
        let dev = op_norm(&(&sum - &ComplexMatrix::identity(dim)));
        if dev > 1e-10 {
            return Err(ChanError::NotPovm(format!("elements sum to 1 only within {dev:.3e}")));
        }
        Ok(Self {
            dim,
            elements,
            labels,
        })
    }

    /// Projection-valued measure of a Hermitian operator.
    pub fn spectral(b: &HermitianOp) -> Result<Self, ChanError> {
        let sp = b.eig()?;
        let (labels, elements): (Vec<f64>, Vec<HermitianOp>) = sp
            .projectors(SPECTRAL_MERGE_TOL)
            .into_iter()
            .map(|(v, p)| Ok((v, HermitianOp::with_tol(p, 1e-10)?)))
            .collect::<Result<Vec<_>, ChanError>>()?
            .into_iter()
            .unzip();
        Self::new(elements, labels)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOp] {
        &self.elements
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    /// Outcome probabilities `tr(ρ E(ω))`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Vec<f64> {
        self.elements
            .iter()
            .map(|e| rho.expectation(e.matrix()).re)
            .collect()
    }
}

/// `E(ω) = T(1_{ω}(B))` for a pointer `B` on the output space of `T`.
pub fn povm_from_channel(t: &KrausChannel, b: &HermitianOp) -> Result<FinitePovm, ChanError> {
    let pvm = FinitePovm::spectral(b)?;
    let mut elements = Vec::with_capacity(pvm.len());
    for p in pvm.elements() {
        elements.push(t.heisenberg_apply_herm(p)?);
    }
    FinitePovm::new(elements, pvm.labels().to_vec())
}

/// Same as [`povm_from_channel`] with the pointer acting on the ancilla factor.
pub fn povm_from_pointer(t: &KrausChannel, b: &HermitianOp) -> Result<FinitePovm, ChanError> {
    let pvm = FinitePovm::spectral(b)?;
    let mut elements = Vec::with_capacity(pvm.len());
    for p in pvm.elements() {
        elements.push(t.heisenberg_apply_herm(&lift_ancilla(t.out_dim(), p)?)?);
    }
    FinitePovm::new(elements, pvm.labels().to_vec())
}
