use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::LanError;
use crate::local::LocalParams;

/// Smallest admissible `μ − ½` for the heterodyne law.
pub const MU_GUARD: f64 = 1e-3;

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// `j/√n − √n(μ − ½)` smoothed by an independent `N(0, 1/(2√n))`.
pub fn energy_outcome<R: Rng + ?Sized>(j: f64, n: u64, mu: f64, rng: &mut R) -> f64 {
    let s = (n as f64).sqrt();
    j / s - s * (mu - 0.5) + (0.5 / s).sqrt() * normal(rng)
}

pub fn heterodyne_variance(mu: f64) -> Result<f64, LanError> {
    if !(mu - 0.5 >= MU_GUARD && mu < 1.0) {
        return Err(LanError::Mu(mu));
    }
    Ok(mu / (2.0 * (2.0 * mu - 1.0).powi(2)))
}

/// Independent `N(u_x, σ²)`, `N(u_y, σ²)` with `σ² = μ/(2(2μ−1)²)`.
pub fn heterodyne_outcome<R: Rng + ?Sized>(u: LocalParams, mu: f64, rng: &mut R) -> Result<(f64, f64), LanError> {
    let sd = heterodyne_variance(mu)?.sqrt();
    Ok((u.ux + sd * normal(rng), u.uy + sd * normal(rng)))
}

/// Zero every component with `|ũ_i| > 3n^η`.
pub fn truncate_estimator(u: LocalParams, n: u64, eta: f64) -> LocalParams {
    let cap = 3.0 * (n as f64).powf(eta);
    let t = |x: f64| if x.abs() <= cap { x } else { 0.0 };
    LocalParams::new(t(u.ux), t(u.uy), t(u.uz))
}

/// `(trace, fidelity)` quadratic losses in local coordinates.
pub fn loss(u: LocalParams, est: LocalParams, mu: f64) -> Result<(f64, f64), LanError> {
    if !(mu > 0.5 && mu < 1.0) {
        return Err(LanError::Mu(mu));
    }
    let c2 = (2.0 * mu - 1.0).powi(2);
    let dz2 = (u.uz - est.uz).powi(2);
    let dxy2 = (u.ux - est.ux).powi(2) + (u.uy - est.uy).powi(2);
    Ok((4.0 * (dz2 + c2 * dxy2), c2 * dxy2 + dz2 / (1.0 - c2)))
}

/// `8μ − 4μ²`
pub fn trace_risk_theory(mu: f64) -> f64 {
    8.0 * mu - 4.0 * mu * mu
}

/// `μ + ¼`
pub fn fidelity_risk_theory(mu: f64) -> f64 {
    mu + 0.25
}
