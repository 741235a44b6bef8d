use nalgebra::{Matrix3, Matrix4, Vector3};
use qchan::KrausChannel;
use qmat::{eig_hermitian, pauli, ComplexMatrix, HermitianOp, C64};

use crate::error::DynError;

/// Bloch vector of a qubit state `½(1 + xσx + yσy + zσz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, DynError> {
        let v = Self { x, y, z };
        if !(x.is_finite() && y.is_finite() && z.is_finite()) || v.norm() > 1.0 + 1e-12 {
            return Err(DynError::OutOfRange(format!("Bloch vector ({x}, {y}, {z})")));
        }
        Ok(v)
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    fn from_vec(v: Vector3<f64>) -> Self {
        Self { x: v[0], y: v[1], z: v[2] }
    }
}

/// Which solution of the driven-atom Bloch equation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlochMode {
    /// Exact solution of the affine equation for the given drive.
    Exact,
    /// Strong-drive approximation with the Rabi rotation kept.
    StrongFieldLab,
    /// Strong-drive approximation after rotating away the Rabi oscillation:
    /// `(e^{−t/2}x, e^{−3t/4}y, e^{−3t/4}z)`.
    StrongFieldInteraction,
}

fn generator(omega: f64) -> Matrix3<f64> {
    Matrix3::new(-0.5, 0.0, 0.0, 0.0, -0.5, omega, 0.0, -omega, -1.0)
}

/// Exact solution of `d/dt r = M r − (0,0,1)`.
pub fn bloch_evolve(omega: f64, b0: BlochVector, t: f64) -> Result<BlochVector, DynError> {
    bloch_evolve_mode(omega, b0, t, BlochMode::Exact)
}

/// Affine part `(M_t, c_t)` of the flow, `r(t) = M_t r0 + c_t`.
fn affine_flow(omega: f64, t: f64, mode: BlochMode) -> (Matrix3<f64>, Vector3<f64>) {
    match mode {
        BlochMode::Exact => {
            // augmented generator [[M, −e_z], [0, 0]]
            let m = generator(omega);
            let mut g = Matrix4::<f64>::zeros();
            g.fixed_view_mut::<3, 3>(0, 0).copy_from(&m);
            g[(2, 3)] = -1.0;
            let e = (g * t).exp();
            let lin = e.fixed_view::<3, 3>(0, 0).into_owned();
            let off = Vector3::new(e[(0, 3)], e[(1, 3)], e[(2, 3)]);
            (lin, off)
        }
        BlochMode::StrongFieldLab => {
            let a = (-0.5 * t).exp();
            let b = (-0.75 * t).exp();
            let (s, c) = (omega * t).sin_cos();
            (Matrix3::new(a, 0.0, 0.0, 0.0, b * c, b * s, 0.0, -b * s, b * c), Vector3::zeros())
        }
        BlochMode::StrongFieldInteraction => {
            let a = (-0.5 * t).exp();
            let b = (-0.75 * t).exp();
            (Matrix3::from_diagonal(&Vector3::new(a, b, b)), Vector3::zeros())
        }
    }
}

pub fn bloch_evolve_mode(
    omega: f64,
    b0: BlochVector,
    t: f64,
    mode: BlochMode,
) -> Result<BlochVector, DynError> {
    if !(t >= 0.0) || !omega.is_finite() {
        return Err(DynError::OutOfRange(format!("t = {t}, Ω = {omega}")));
    }
    let (m, c) = affine_flow(omega, t, mode);
    Ok(BlochVector::from_vec(m * Vector3::new(b0.x, b0.y, b0.z) + c))
}

/// Qubit channel (Schrödinger picture) acting on Bloch vectors as
/// `r ↦ M r + c`, built from its Choi matrix.
pub fn bloch_channel(m: [[f64; 3]; 3], c: [f64; 3]) -> Result<KrausChannel, DynError> {
    let sig = [pauli::x(), pauli::y(), pauli::z()];
    // image of σ_k, and of 1
    let image_sigma = |k: usize| {
        let mut out = ComplexMatrix::zeros(2, 2);
        for (l, s) in sig.iter().enumerate() {
            out += &s.scale_re(m[l][k]);
        }
        out
    };
    let mut image_id = ComplexMatrix::identity(2);
    for (l, s) in sig.iter().enumerate() {
        image_id += &s.scale_re(c[l]);
    }
    let half = |x: &ComplexMatrix| x.scale_re(0.5);
    let i = C64::new(0.0, 1.0);
    // |0><0| = (1+σz)/2, |1><1| = (1−σz)/2, |0><1| = (σx+iσy)/2
    let e00 = half(&(&image_id + &image_sigma(2)));
    let e11 = half(&(&image_id - &image_sigma(2)));
    let e01 = half(&(&image_sigma(0) + &image_sigma(1).scale(i)));
    let e10 = e01.adjoint();
    let blocks = [[&e00, &e01], [&e10, &e11]];
    let choi = ComplexMatrix::from_fn(4, 4, |r, s| blocks[r / 2][s / 2][(r % 2, s % 2)]);
    let choi = HermitianOp::with_tol(choi, 1e-10)?;
    let (vals, vecs) = eig_hermitian(&choi)?;
    if vals[vals.len() - 1] < -1e-10 {
        return Err(DynError::OutOfRange(format!(
            "Bloch map is not completely positive (Choi eigenvalue {:.3e})",
            vals[vals.len() - 1]
        )));
    }
    let mut ops = Vec::new();
    for (k, &lam) in vals.iter().enumerate() {
        if lam <= 1e-14 {
            continue;
        }
        let v = vecs.col(k);
        // Choi index (input i, output a) = 2i + a
        ops.push(ComplexMatrix::from_fn(2, 2, |a, i| v[2 * i + a] * lam.sqrt()));
    }
    Ok(KrausChannel::new(ops)?)
}

/// Channel of the driven atom over time `t` in the chosen mode.
pub fn rf_channel(omega: f64, t: f64, mode: BlochMode) -> Result<KrausChannel, DynError> {
    if !(t >= 0.0) {
        return Err(DynError::OutOfRange(format!("t = {t}")));
    }
    let (m, c) = affine_flow(omega, t, mode);
    let rows = [
        [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
        [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
        [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
    ];
    bloch_channel(rows, [c[0], c[1], c[2]])
}

/// `Δ(t) = ½(1 − e^{−3t/4})` in the strong-drive interaction frame.
pub fn rf_disturbance(t: f64) -> f64 {
    0.5 * (1.0 - (-0.75 * t).exp())
}

/// `½ − ½√(1 − e^{−3t/2})`
pub fn rf_infidelity_bound(t: f64) -> f64 {
    0.5 - 0.5 * (1.0 - (-1.5 * t).exp()).sqrt()
}

/// `(½−δ)² + (½−Δ)² − ¼` for the two closed forms above.
pub fn rf_identity_residual(t: f64) -> f64 {
    (0.5 - rf_infidelity_bound(t)).powi(2) + (0.5 - rf_disturbance(t)).powi(2) - 0.25
}
