use serde::Serialize;

use crate::error::LanError;

/// Local coordinates `u` of `ρ_{u/√n}` around `diag(μ, 1−μ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LocalParams {
    pub ux: f64,
    pub uy: f64,
    pub uz: f64,
}

impl LocalParams {
    pub fn new(ux: f64, uy: f64, uz: f64) -> Self {
        Self { ux, uy, uz }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.ux, self.uy, self.uz]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self { ux: a[0], uy: a[1], uz: a[2] }
    }

    pub fn norm(&self) -> f64 {
        (self.ux * self.ux + self.uy * self.uy + self.uz * self.uz).sqrt()
    }
}

/// Bloch vector of `U(v) diag(μ+v_z, 1−μ−v_z) U(v)†` with
/// `U(v) = exp(i(v_x σx + v_y σy))`.
pub fn family_bloch(mu: f64, v: [f64; 3]) -> [f64; 3] {
    let len = 2.0 * mu - 1.0 + 2.0 * v[2];
    let a = v[0].hypot(v[1]);
    if a == 0.0 {
        return [0.0, 0.0, len];
    }
    let (s, c) = (2.0 * a).sin_cos();
    [-len * v[1] / a * s, len * v[0] / a * s, len * c]
}

/// Exact inverse of [`family_bloch`] for `|2v| < π`.
pub fn family_inverse(mu: f64, r: [f64; 3]) -> Result<[f64; 3], LanError> {
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if len < 1e-12 {
        return Err(LanError::Degenerate(len));
    }
    let vz = 0.5 * (len - (2.0 * mu - 1.0));
    let perp = r[0].hypot(r[1]);
    if perp == 0.0 {
        return Ok([0.0, 0.0, vz]);
    }
    let a = 0.5 * perp.atan2(r[2]);
    Ok([a * r[1] / perp, -a * r[0] / perp, vz])
}

/// Proper rotation taking the direction of `r` to `+z` (minimal, about
/// `r × ẑ`); identity when already aligned.
pub fn alignment_rotation(r: [f64; 3]) -> Result<[[f64; 3]; 3], LanError> {
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if len < 1e-12 {
        return Err(LanError::Degenerate(len));
    }
    let n = [r[0] / len, r[1] / len, r[2] / len];
    // axis k = n × ẑ, cos = n_z, sin = |k|
    let k = [n[1], -n[0], 0.0];
    let s = k[0].hypot(k[1]);
    let c = n[2];
    if s < 1e-15 {
        return Ok(if c > 0.0 {
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        } else {
            // half turn about x
            [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]
        });
    }
    let kx = k[0] / s;
    let ky = k[1] / s;
    // Rodrigues with unit axis (kx, ky, 0)
    let t = 1.0 - c;
    Ok([
        [c + kx * kx * t, kx * ky * t, ky * s],
        [kx * ky * t, c + ky * ky * t, -kx * s],
        [-ky * s, kx * s, c],
    ])
}

pub(crate) fn apply(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

pub(crate) fn apply_transpose(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
        m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
        m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2],
    ]
}

/// Local parameters of the true Bloch vector in the frame `(rotation, μ)`.
pub fn local_params(
    bloch_true: [f64; 3],
    rotation: &[[f64; 3]; 3],
    mu: f64,
    n: u64,
) -> Result<LocalParams, LanError> {
    if !(mu > 0.5 && mu <= 1.0) {
        return Err(LanError::Mu(mu));
    }
    let v = family_inverse(mu, apply(rotation, bloch_true))?;
    let s = (n as f64).sqrt();
    Ok(LocalParams::new(v[0] * s, v[1] * s, v[2] * s))
}

/// Bloch vector of `ρ_{u/√n}` mapped back out of the rotated frame.
pub fn reconstruct(u: LocalParams, rotation: &[[f64; 3]; 3], mu: f64, n: u64) -> [f64; 3] {
    let s = (n as f64).sqrt();
    let r = family_bloch(mu, [u.ux / s, u.uy / s, u.uz / s]);
    apply_transpose(rotation, r)
}

/// `‖ρ_a − ρ_b‖₁ = |a − b|` for qubit Bloch vectors.
pub fn trace_distance_bloch(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}
