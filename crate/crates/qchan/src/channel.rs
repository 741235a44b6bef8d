use qmat::{
    basis, eig_hermitian, op_norm, tensor, ComplexMatrix, DensityMatrix, HermitianOp, C64, TOL,
};

use crate::error::ChanError;

/// Completely positive unital map given by Kraus operators.
///
/// Each operator `V` is `out_dim x in_dim`. States on `C^in_dim` go to
/// `sum V ρ V^dag` on `C^out_dim`; observables on `C^out_dim` come back as
/// `sum V^dag B V`. Unitality of the Heisenberg map is `sum V^dag V = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    in_dim: usize,
    out_dim: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self, ChanError> {
        let ch = Self::new_unchecked(ops)?;
        let dev = ch.unitality_defect();
        if dev > TOL.unital {
            return Err(ChanError::NotUnital { deviation: dev });
        }
        Ok(ch)
    }

    /// Shape checks only. Used for sub-unital pieces such as instrument
    /// branches.
    pub fn new_unchecked(ops: Vec<ComplexMatrix>) -> Result<Self, ChanError> {
        let first = ops.first().ok_or(ChanError::Empty)?;
        let (out_dim, in_dim) = (first.rows(), first.cols());
        for v in &ops {
            if v.rows() != out_dim || v.cols() != in_dim {
                return Err(ChanError::DimensionMismatch {
                    expected: out_dim * in_dim,
                    found: v.rows() * v.cols(),
                });
            }
        }
        Ok(Self {
            in_dim,
            out_dim,
            ops,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            in_dim: d,
            out_dim: d,
            ops: vec![ComplexMatrix::identity(d)],
        }
    }

    /// Conjugation by a unitary: `B -> U^dag B U`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self, ChanError> {
        Self::new(vec![u])
    }

    /// Couple the system to an ancilla prepared in `ancilla_state`, apply `u`
    /// on system ⊗ ancilla and keep everything. Kraus operators are
    /// `U (1 ⊗ |a>)` over the eigen-decomposition of the ancilla state.
    pub fn dilation(u: &ComplexMatrix, ancilla: &DensityMatrix) -> Result<Self, ChanError> {
        let k = ancilla.dim();
        if u.rows() % k != 0 || !u.is_square() {
            return Err(ChanError::DimensionMismatch {
                expected: u.rows(),
                found: k,
            });
        }
        let d = u.rows() / k;
        let h = HermitianOp::new(ancilla.matrix().clone())?;
        let (vals, vecs) = eig_hermitian(&h)?;
        let mut ops = Vec::new();
        for (j, &w) in vals.iter().enumerate() {
            if w <= 1e-15 {
                continue;
            }
            let a = ComplexMatrix::column(&vecs.col(j));
            let embed = tensor(&ComplexMatrix::identity(d), &a);
            ops.push(u.dot(&embed).scale_re(w.sqrt()));
        }
        Self::new(ops)
    }

    /// Instrument with classical outcomes: branch `m` has Kraus operators
    /// `branches[m]`, and the outcome is recorded in a `k`-level classical
    /// register as the second tensor factor.
    pub fn from_instrument(branches: &[Vec<ComplexMatrix>]) -> Result<Self, ChanError> {
        let k = branches.len();
        let mut ops = Vec::new();
        for (m, branch) in branches.iter().enumerate() {
            let e = ComplexMatrix::column(&basis(k, m));
            for v in branch {
                ops.push(tensor(v, &e));
            }
        }
        Self::new(ops)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn kraus_count(&self) -> usize {
        self.ops.len()
    }

    /// `sum V^dag V`
    pub fn gram(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.in_dim, self.in_dim);
        for v in &self.ops {
            s += &v.adjoint_dot(v);
        }
        s
    }

    pub fn unitality_defect(&self) -> f64 {
        op_norm(&(&self.gram() - &ComplexMatrix::identity(self.in_dim)))
    }

    /// Heisenberg action `sum V^dag B V` on an arbitrary operator.
    pub fn heisenberg_apply(&self, b: &ComplexMatrix) -> Result<ComplexMatrix, ChanError> {
        if !b.is_square() || b.rows() != self.out_dim {
            return Err(ChanError::DimensionMismatch {
                expected: self.out_dim,
                found: b.rows(),
            });
        }
        let mut s = ComplexMatrix::zeros(self.in_dim, self.in_dim);
        for v in &self.ops {
            s += &v.adjoint_dot(&b.dot(v));
        }
        Ok(s)
    }

    pub fn heisenberg_apply_herm(&self, b: &HermitianOp) -> Result<HermitianOp, ChanError> {
        let m = self.heisenberg_apply(b.matrix())?;
        Ok(HermitianOp::with_tol(m, 1e-10)?)
    }

    /// Predual action `sum V X V^dag` on an arbitrary operator.
    pub fn schrodinger_apply_matrix(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, ChanError> {
        if !x.is_square() || x.rows() != self.in_dim {
            return Err(ChanError::DimensionMismatch {
                expected: self.in_dim,
                found: x.rows(),
            });
        }
        let mut s = ComplexMatrix::zeros(self.out_dim, self.out_dim);
        for v in &self.ops {
            s += &v.dot(x).dot(&v.adjoint());
        }
        Ok(s)
    }

    pub fn schrodinger_apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix, ChanError> {
        let m = self.schrodinger_apply_matrix(rho.matrix())?;
        Ok(DensityMatrix::renormalized(m)?)
    }

    /// Restriction to the system factor, `R(X) = T(X ⊗ 1)`, when the output
    /// space is system ⊗ ancilla with the given ancilla dimension.
    pub fn restrict_to_system(&self, ancilla_dim: usize) -> Result<KrausChannel, ChanError> {
        if ancilla_dim == 0 || self.out_dim % ancilla_dim != 0 {
            return Err(ChanError::DimensionMismatch {
                expected: self.out_dim,
                found: ancilla_dim,
            });
        }
        let d = self.out_dim / ancilla_dim;
        let mut ops = Vec::with_capacity(self.ops.len() * ancilla_dim);
        for v in &self.ops {
            for b in 0..ancilla_dim {
                let r = ComplexMatrix::from_fn(d, self.in_dim, |i, j| v[(i * ancilla_dim + b, j)]);
                if r.max_abs() > 0.0 {
                    ops.push(r);
                }
            }
        }
        KrausChannel::new(ops)
    }

    /// `T(1 ⊗ B)` for a pointer `B` on the ancilla factor.
    pub fn pointer_image(&self, b: &HermitianOp) -> Result<HermitianOp, ChanError> {
        self.heisenberg_apply_herm(&lift_ancilla(self.out_dim, b)?)
    }

    /// Choi matrix `sum_ij |i><j| ⊗ Φ(|i><j|)` of the predual map.
    pub fn choi(&self) -> ComplexMatrix {
        choi_of_map(self.in_dim, self.out_dim, |x| {
            self.schrodinger_apply_matrix(x).expect("shape checked")
        })
    }

    pub fn is_completely_positive(&self, tol: f64) -> bool {
        is_cp_map(self.in_dim, self.out_dim, tol, |x| {
            self.schrodinger_apply_matrix(x).expect("shape checked")
        })
    }
}

/// `1 ⊗ B` on a space of total dimension `total`.
pub fn lift_ancilla(total: usize, b: &HermitianOp) -> Result<HermitianOp, ChanError> {
    let k = b.dim();
    if k == 0 || total % k != 0 {
        return Err(ChanError::DimensionMismatch {
            expected: total,
            found: k,
        });
    }
    Ok(HermitianOp::new(tensor(&ComplexMatrix::identity(total / k), b.matrix()))?)
}

/// `X ⊗ 1`
pub fn lift_system(x: &ComplexMatrix, ancilla_dim: usize) -> ComplexMatrix {
    tensor(x, &ComplexMatrix::identity(ancilla_dim))
}

/// Choi matrix of an arbitrary linear map given as a closure.
pub fn choi_of_map(
    in_dim: usize,
    out_dim: usize,
    f: impl Fn(&ComplexMatrix) -> ComplexMatrix,
) -> ComplexMatrix {
    let n = in_dim * out_dim;
    let mut c = ComplexMatrix::zeros(n, n);
    for i in 0..in_dim {
        for j in 0..in_dim {
            let mut e = ComplexMatrix::zeros(in_dim, in_dim);
            e[(i, j)] = C64::new(1.0, 0.0);
            let img = f(&e);
            for k in 0..out_dim {
                for l in 0..out_dim {
                    c[(i * out_dim + k, j * out_dim + l)] = img[(k, l)];
                }
            }
        }
    }
    c
}

/// Complete positivity via the smallest Choi eigenvalue.
pub fn is_cp_map(
    in_dim: usize,
    out_dim: usize,
    tol: f64,
    f: impl Fn(&ComplexMatrix) -> ComplexMatrix,
) -> bool {
    let c = choi_of_map(in_dim, out_dim, f);
    let Ok(h) = HermitianOp::with_tol(c, 1e-9) else {
        return false;
    };
    match eig_hermitian(&h) {
        Ok((v, _)) => v.last().copied().unwrap_or(0.0) >= -tol,
        Err(_) => false,
    }
}

/// Heisenberg composition `(T1 ∘ T2)(X) = T1(T2(X))`.
pub fn compose(t1: &KrausChannel, t2: &KrausChannel) -> Result<KrausChannel, ChanError> {
    if t2.in_dim != t1.out_dim {
        return Err(ChanError::DimensionMismatch {
            expected: t1.out_dim,
            found: t2.in_dim,
        });
    }
    let mut ops = Vec::with_capacity(t1.ops.len() * t2.ops.len());
    for v1 in &t1.ops {
        for v2 in &t2.ops {
            ops.push(v2.dot(v1));
        }
    }
    KrausChannel::new(ops)
}

/// `T1 ⊗ T2`
pub fn tensor_channel(t1: &KrausChannel, t2: &KrausChannel) -> Result<KrausChannel, ChanError> {
    let mut ops = Vec::with_capacity(t1.ops.len() * t2.ops.len());
    for v1 in &t1.ops {
        for v2 in &t2.ops {
            ops.push(tensor(v1, v2));
        }
    }
    KrausChannel::new(ops)
}
