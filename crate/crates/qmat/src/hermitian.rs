use nalgebra::SymmetricEigen;

use crate::error::QmatError;
use crate::matrix::{inner, vec_norm, ComplexMatrix, C64, ONE, ZERO};
use crate::tol::{MAX_EIG_DIM, TOL};

/// Self-adjoint matrix. Construction symmetrizes inputs that are Hermitian up
/// to rounding and rejects the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    matrix: ComplexMatrix,
}

/// Eigen-decomposition with eigenvalues in descending order; column `k` of
/// `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.col(k)
    }

    /// Spectral projectors, one per cluster of eigenvalues closer than `tol`.
    /// Returned in descending eigenvalue order; the reported value is the
    /// cluster mean.
    pub fn projectors(&self, tol: f64) -> Vec<(f64, ComplexMatrix)> {
        let n = self.values.len();
        let mut out: Vec<(f64, ComplexMatrix)> = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && (self.values[end - 1] - self.values[end]).abs() <= tol {
                end += 1;
            }
            let mut p = ComplexMatrix::zeros(n, n);
            for k in start..end {
                let v = self.vector(k);
                p += &ComplexMatrix::outer(&v, &v);
            }
            let mean = self.values[start..end].iter().sum::<f64>() / (end - start) as f64;
            out.push((mean, p));
            start = end;
        }
        out
    }

    /// `f(H)` by functional calculus.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let s = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        scaled.dot(&self.vectors.adjoint())
    }
}

impl HermitianOp {
    pub fn new(m: ComplexMatrix) -> Result<Self, QmatError> {
        Self::with_tol(m, TOL.herm)
    }

    pub fn with_tol(m: ComplexMatrix, rel_tol: f64) -> Result<Self, QmatError> {
        if !m.is_square() {
            return Err(QmatError::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        let defect = m.hermiticity_defect();
        if defect > rel_tol * m.max_abs().max(1.0) {
            return Err(QmatError::NotHermitian { deviation: defect });
        }
        Ok(Self {
            matrix: m.hermitian_part(),
        })
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diag(d),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n),
        }
    }

    /// Projector `|v><v|` for a unit vector.
    pub fn projector(v: &[C64]) -> Self {
        Self {
            matrix: ComplexMatrix::outer(v, v).hermitian_part(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eig(&self) -> Result<Spectrum, QmatError> {
        let (values, vectors) = eig_raw(&self.matrix)?;
        Ok(Spectrum { values, vectors })
    }

    pub fn square(&self) -> Self {
        Self {
            matrix: self.matrix.dot(&self.matrix).hermitian_part(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            matrix: self.matrix.scale_re(s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix + &other.matrix,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix - &other.matrix,
        }
    }

    /// `<v|H|v>`
    pub fn expectation(&self, v: &[C64]) -> f64 {
        self.matrix.sandwich(v, v).re
    }

    /// Conjugation `U^dag H U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        Self {
            matrix: u.adjoint_dot(&self.matrix.dot(u)).hermitian_part(),
        }
    }

    pub fn op_norm(&self) -> Result<f64, QmatError> {
        let (v, _) = eig_raw(&self.matrix)?;
        Ok(v.iter().map(|x| x.abs()).fold(0.0, f64::max))
    }
}

fn eig_raw(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), QmatError> {
    let n = m.rows();
    if n > MAX_EIG_DIM {
        return Err(QmatError::TooLarge(n));
    }
    if n == 1 {
        return Ok((vec![m[(0, 0)].re], ComplexMatrix::identity(1)));
    }
    let se = SymmetricEigen::new(m.hermitian_part().to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].total_cmp(&se.eigenvalues[a]));
    let values = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| se.eigenvectors[(i, order[j])]);
    Ok((values, vectors))
}

/// Eigenvalues (descending) and orthonormal eigenvectors as columns.
pub fn eig_hermitian(h: &HermitianOp) -> Result<(Vec<f64>, ComplexMatrix), QmatError> {
    eig_raw(h.matrix())
}

pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let svd = m.to_nalgebra().svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn exactly_hermitian(m: &ComplexMatrix) -> bool {
    m.is_square() && m.hermiticity_defect() <= 1e-14 * m.max_abs().max(1e-300)
}

/// Largest singular value.
pub fn op_norm(m: &ComplexMatrix) -> f64 {
    if exactly_hermitian(m) && m.rows() <= MAX_EIG_DIM {
        if let Ok((v, _)) = eig_raw(m) {
            return v.iter().map(|x| x.abs()).fold(0.0, f64::max);
        }
    }
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    if exactly_hermitian(m) && m.rows() <= MAX_EIG_DIM {
        if let Ok((v, _)) = eig_raw(m) {
            return v.iter().map(|x| x.abs()).sum();
        }
    }
    singular_values(m).iter().sum()
}

/// `ab - ba`
pub fn commutator(a: &HermitianOp, b: &HermitianOp) -> Result<ComplexMatrix, QmatError> {
    if a.dim() != b.dim() {
        return Err(QmatError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(&a.matrix.dot(&b.matrix) - &b.matrix.dot(&a.matrix))
}

/// Positive unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self, QmatError> {
        let h = HermitianOp::new(m)?;
        let tr = h.matrix().trace().re;
        if (tr - 1.0).abs() > TOL.trace.max(1e-12 * h.dim() as f64) {
            return Err(QmatError::NotDensity(format!("trace {tr}")));
        }
        let (vals, _) = eig_raw(h.matrix())?;
        let min = vals.last().copied().unwrap_or(0.0);
        if min < -TOL.psd {
            return Err(QmatError::NotDensity(format!("eigenvalue {min:.3e}")));
        }
        Ok(Self {
            matrix: h.into_matrix(),
        })
    }

    /// Like [`DensityMatrix::new`] but renormalizes the trace first; used for
    /// outputs of trace-preserving maps where rounding drifts the trace.
    pub fn renormalized(m: ComplexMatrix) -> Result<Self, QmatError> {
        let tr = m.trace().re;
        if !(tr > 0.0) {
            return Err(QmatError::NotDensity(format!("trace {tr}")));
        }
        Self::new(m.scale_re(1.0 / tr))
    }

    pub fn pure(v: &[C64]) -> Result<Self, QmatError> {
        let n = vec_norm(v);
        if (n - 1.0).abs() > 1e-10 {
            return Err(QmatError::NotDensity(format!("vector norm {n}")));
        }
        Ok(Self {
            matrix: ComplexMatrix::outer(v, v).hermitian_part(),
        })
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(d).scale_re(1.0 / d as f64),
        }
    }

    /// Qubit state `(1 + r·σ)/2`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self, QmatError> {
        let n2 = r.iter().map(|x| x * x).sum::<f64>();
        if n2 > 1.0 + 1e-12 {
            return Err(QmatError::NotDensity(format!("Bloch length {}", n2.sqrt())));
        }
        let m = ComplexMatrix::new(
            2,
            2,
            vec![
                C64::new((1.0 + r[2]) / 2.0, 0.0),
                C64::new(r[0] / 2.0, -r[1] / 2.0),
                C64::new(r[0] / 2.0, r[1] / 2.0),
                C64::new((1.0 - r[2]) / 2.0, 0.0),
            ],
        )?;
        Ok(Self { matrix: m })
    }

    /// Bloch vector of a qubit state.
    pub fn bloch(&self) -> Option<[f64; 3]> {
        if self.dim() != 2 {
            return None;
        }
        let m = &self.matrix;
        Some([2.0 * m[(1, 0)].re, 2.0 * m[(1, 0)].im, (m[(0, 0)] - m[(1, 1)]).re])
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `tr(ρ A)`
    pub fn expectation(&self, a: &ComplexMatrix) -> C64 {
        let n = self.dim();
        let mut s = ZERO;
        for i in 0..n {
            for k in 0..n {
                s += self.matrix[(i, k)] * a[(k, i)];
            }
        }
        s
    }

    pub fn fidelity_pure(&self, v: &[C64]) -> f64 {
        self.matrix.sandwich(v, v).re
    }

    /// `½‖ρ − σ‖₁`
    pub fn trace_distance(&self, other: &Self) -> f64 {
        0.5 * trace_norm(&(&self.matrix - &other.matrix))
    }
}

/// Pauli matrices and qubit basis helpers.
pub mod pauli {
    use super::*;

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO])
            .unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&[1.0, -1.0])
    }

    pub fn up() -> Vec<C64> {
        vec![ONE, ZERO]
    }

    pub fn down() -> Vec<C64> {
        vec![ZERO, ONE]
    }

    pub fn plus() -> Vec<C64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        vec![C64::new(s, 0.0), C64::new(s, 0.0)]
    }

    /// `|<u|v>|`
    pub fn overlap(u: &[C64], v: &[C64]) -> f64 {
        inner(u, v).norm()
    }
}
