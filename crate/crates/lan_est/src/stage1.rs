use qmat::DensityMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::error::LanError;
use crate::local::{alignment_rotation, trace_distance_bloch};

/// Result of the localization stage.
#[derive(Debug, Clone)]
pub struct Stage1 {
    pub estimate: DensityMatrix,
    pub bloch: [f64; 3],
    /// Rotation taking `bloch` to `+z`.
    pub rotation: [[f64; 3]; 3],
    /// Largest eigenvalue `(1 + |r̃|)/2` of the estimate.
    pub mu: f64,
    pub clipped: bool,
    pub n_tilde: u64,
    pub tosses_per_axis: u64,
}

/// `ñ = ⌊n^{1−κ}⌋`
pub fn n_tilde(n: u64, kappa: f64) -> u64 {
    ((n as f64).powf(1.0 - kappa) + 1e-9).floor() as u64
}

fn check_bloch(r: [f64; 3]) -> Result<(), LanError> {
    let n2: f64 = r.iter().map(|v| v * v).sum();
    if !r.iter().all(|v| v.is_finite()) || n2 > 1.0 + 1e-12 {
        return Err(LanError::Config(format!("invalid Bloch vector {r:?}")));
    }
    Ok(())
}

/// Raw Bloch average from `ñ/3` tosses per Pauli axis, then radial clipping
/// to the unit ball.
pub fn stage1_bloch(
    n: u64,
    kappa: f64,
    bloch_true: [f64; 3],
    rng: &mut ChaCha8Rng,
) -> Result<([f64; 3], bool, u64), LanError> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(LanError::Config(format!("κ = {kappa} outside (0, 1)")));
    }
    check_bloch(bloch_true)?;
    let m = n_tilde(n, kappa) / 3;
    if m == 0 {
        return Err(LanError::Config(format!("ñ/3 < 1 for n = {n}, κ = {kappa}")));
    }
    let mut r = [0.0; 3];
    for (ri, &ti) in r.iter_mut().zip(&bloch_true) {
        let p = (0.5 * (1.0 + ti)).clamp(0.0, 1.0);
        let ups = Binomial::new(m, p).expect("p in [0,1]").sample(rng);
        *ri = (2.0 * ups as f64 - m as f64) / m as f64;
    }
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let clipped = len > 1.0;
    if clipped {
        r = [r[0] / len, r[1] / len, r[2] / len];
    }
    Ok((r, clipped, m))
}

pub fn stage1_estimate(n: u64, kappa: f64, bloch_true: [f64; 3], seed: u64) -> Result<Stage1, LanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (r, clipped, m) = stage1_bloch(n, kappa, bloch_true, &mut rng)?;
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    Ok(Stage1 {
        estimate: DensityMatrix::from_bloch(r)?,
        bloch: r,
        rotation: alignment_rotation(r)?,
        mu: 0.5 * (1.0 + len),
        clipped,
        n_tilde: n_tilde(n, kappa),
        tosses_per_axis: m,
    })
}

/// Frequency of `‖ρ̃ − ρ‖₁² > 3n^{2ε−1}` against `6 exp(−½ ñ n^{2ε−1})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MissReport {
    pub n: u64,
    pub kappa: f64,
    pub epsilon: f64,
    pub repetitions: usize,
    pub misses: usize,
    pub frequency: f64,
    pub bound: f64,
    pub clipped: usize,
    /// Mean of `‖ρ̃ − ρ‖₁² χ_miss`, bounded by 4 × frequency.
    pub miss_risk: f64,
    pub within_bound: bool,
}

pub fn stage1_miss_rate(
    n: u64,
    kappa: f64,
    epsilon: f64,
    bloch_true: [f64; 3],
    repetitions: usize,
    seed: u64,
) -> Result<MissReport, LanError> {
    let threshold = 3.0 * (n as f64).powf(2.0 * epsilon - 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut misses, mut clipped, mut risk) = (0usize, 0usize, 0.0);
    for _ in 0..repetitions {
        let (r, c, _) = stage1_bloch(n, kappa, bloch_true, &mut rng)?;
        let d2 = trace_distance_bloch(r, bloch_true).powi(2);
        if d2 > threshold {
            misses += 1;
            risk += d2;
        }
        clipped += c as usize;
    }
    let nt = n_tilde(n, kappa) as f64;
    let bound = 6.0 * (-0.5 * nt * (n as f64).powf(2.0 * epsilon - 1.0)).exp();
    let frequency = misses as f64 / repetitions.max(1) as f64;
    Ok(MissReport {
        n,
        kappa,
        epsilon,
        repetitions,
        misses,
        frequency,
        bound,
        clipped,
        miss_risk: risk / repetitions.max(1) as f64,
        within_bound: frequency <= bound,
    })
}
