use qchan::KrausChannel;
use qmat::{commutator, op_norm, tensor_vec, ComplexMatrix, HermitianOp, C64};

use crate::error::FockError;
use crate::space::{CoherentVector, FockSpace};

/// `U = exp(θ(a†⊗a − a⊗a†))` on two truncated modes with the second input in
/// the vacuum.
///
/// The exponent conserves the total photon number, so `U` is assembled from
/// exponentials of the number blocks. Blocks with total number `≤ n_max` are
/// complete, hence `U` is exact on every input `|n>⊗|0>`.
#[derive(Debug, Clone)]
pub struct BeamSplitter {
    theta: f64,
    space: FockSpace,
    unitary: ComplexMatrix,
    /// `V = U(1⊗|0>)`, shape `D² × D`.
    isometry: ComplexMatrix,
}

/// Added-variance figures of the beamsplitter as a joint `x`/`p` measurement,
/// evaluated on the protected levels `0..=protected`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointQuality {
    pub sigma_b: f64,
    pub sigma_b_tilde: f64,
    pub product: f64,
    /// `½‖[T(B), T(B̃)]‖` on the protected levels.
    pub commutator_rhs: f64,
    pub n_max: usize,
    pub protected: usize,
}

impl BeamSplitter {
    pub fn new(theta: f64, space: FockSpace) -> Result<Self, FockError> {
        if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
            return Err(FockError::OutOfRange(format!("θ = {theta} outside (0, π/2)")));
        }
        let d = space.dim();
        let n_max = space.n_max();
        let mut u = ComplexMatrix::zeros(d * d, d * d);
        for total in 0..=2 * n_max {
            let lo = total.saturating_sub(n_max);
            let hi = total.min(n_max);
            let size = hi - lo + 1;
            // i·G restricted to the block, indexed by the first-mode number
            let mut h = ComplexMatrix::zeros(size, size);
            for (r, n1) in (lo..=hi).enumerate() {
                let n2 = total - n1;
                // a†⊗a: |n1, n2> -> √(n1+1)√n2 |n1+1, n2−1>
                if n1 < hi {
                    let g = ((n1 + 1) as f64).sqrt() * (n2 as f64).sqrt();
                    h[(r + 1, r)] += C64::new(0.0, g);
                    h[(r, r + 1)] += C64::new(0.0, -g);
                }
            }
            let herm = HermitianOp::new(h)?;
            let block = herm.eig()?;
            // exp(θG) = exp(−iθ H) with H = iG
            let mut e = ComplexMatrix::zeros(size, size);
            for (k, &lam) in block.values.iter().enumerate() {
                let phase = C64::from_polar(1.0, -theta * lam);
                let v = block.vector(k);
                for i in 0..size {
                    for j in 0..size {
                        e[(i, j)] += v[i] * v[j].conj() * phase;
                    }
                }
            }
            let index = |n1: usize| n1 * d + (total - n1);
            for (r, n1) in (lo..=hi).enumerate() {
                for (c, m1) in (lo..=hi).enumerate() {
                    u[(index(n1), index(m1))] = e[(r, c)];
                }
            }
        }
        let isometry = ComplexMatrix::from_fn(d * d, d, |i, n| u[(i, n * d)]);
        Ok(Self { theta, space, unitary: u, isometry })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// The channel `T(Y) = (id⊗Φ)(U†YU)` with `Φ` the vacuum state.
    pub fn channel(&self) -> Result<KrausChannel, FockError> {
        Ok(KrausChannel::new(vec![self.isometry.clone()])?)
    }

    /// `T(X⊗Z) = V†(X⊗Z)V` without forming the two-mode operator.
    pub fn heisenberg_product(&self, x: &ComplexMatrix, z: &ComplexMatrix) -> ComplexMatrix {
        let d = self.space.dim();
        let zt = z.transpose();
        let mut w = ComplexMatrix::zeros(d * d, d);
        for n in 0..d {
            // column n of V reshaped to a d×d matrix M, then X M Zᵀ
            let m = ComplexMatrix::from_fn(d, d, |i, j| self.isometry[(i * d + j, n)]);
            let img = x.dot(&m).dot(&zt);
            for i in 0..d {
                for j in 0..d {
                    w[(i * d + j, n)] = img[(i, j)];
                }
            }
        }
        self.isometry.adjoint_dot(&w)
    }

    /// `U(|α>⊗|β>)`
    pub fn apply_to_coherent(&self, alpha: C64, beta: C64) -> Result<Vec<C64>, FockError> {
        let a = CoherentVector::new(alpha, self.space)?.into_vec();
        let b = CoherentVector::new(beta, self.space)?.into_vec();
        Ok(self.unitary.apply(&tensor_vec(&a, &b)))
    }

    /// `|<expected|U|α,β>|²` with the expected output
    /// `|α cosθ + β sinθ> ⊗ |−α sinθ + β cosθ>`.
    pub fn coherent_fidelity(&self, alpha: C64, beta: C64) -> Result<f64, FockError> {
        let (s, c) = self.theta.sin_cos();
        let out = self.apply_to_coherent(alpha, beta)?;
        let e1 = CoherentVector::new(alpha * c + beta * s, self.space)?.into_vec();
        let e2 = CoherentVector::new(-alpha * s + beta * c, self.space)?.into_vec();
        Ok(qmat::inner(&tensor_vec(&e1, &e2), &out).norm_sqr())
    }

    /// Pointers `B = x⊗1/cosθ` and `B̃ = −1⊗p/sinθ`; norms are taken on the
    /// levels `0..=n_max/2`, where truncation does not reach.
    pub fn joint_quality(&self) -> Result<JointQuality, FockError> {
        let d = self.space.dim();
        let protected = self.space.n_max() / 2;
        let k = protected + 1;
        let (s, c) = self.theta.sin_cos();
        let (x, p) = self.space.quadratures();
        let (x2, p2) = self.space.quadrature_squares();
        let id = ComplexMatrix::identity(d);

        let tb = self.heisenberg_product(x.matrix(), &id).scale_re(1.0 / c);
        let tb2 = self.heisenberg_product(x2.matrix(), &id).scale_re(1.0 / (c * c));
        let tbt = self.heisenberg_product(&id, p.matrix()).scale_re(-1.0 / s);
        let tbt2 = self.heisenberg_product(&id, p2.matrix()).scale_re(1.0 / (s * s));

        let var = |t2: &ComplexMatrix, t1: &ComplexMatrix| {
            let form = (t2 - &t1.dot(t1)).compress(k);
            op_norm(&form.hermitian_part())
        };
        let sigma_b = var(&tb2, &tb).sqrt();
        let sigma_b_tilde = var(&tbt2, &tbt).sqrt();
        let a = HermitianOp::new(tb.hermitian_part())?;
        let at = HermitianOp::new(tbt.hermitian_part())?;
        let comm = commutator(&a, &at)?.compress(k);
        Ok(JointQuality {
            sigma_b,
            sigma_b_tilde,
            product: sigma_b * sigma_b_tilde,
            commutator_rhs: 0.5 * op_norm(&comm),
            n_max: self.space.n_max(),
            protected,
        })
    }
}
