use rand::Rng;
use statrs::function::gamma::ln_gamma;

use crate::error::LanError;

/// `ln p_{n,μ}(j)` for `j = n/2 − k`, `k = 0..=⌊n/2⌋`.
pub fn block_log_weight(n: u64, k: u64, mu: f64) -> f64 {
    let nf = n as f64;
    let kf = k as f64;
    let two_j1 = nf - 2.0 * kf + 1.0;
    let ln_binom = ln_gamma(nf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0);
    let ln_nj = ln_binom + two_j1.ln() - (nf - kf + 1.0).ln();
    let p = (1.0 - mu) / mu;
    let tail = (-(two_j1 * p.ln()).exp()).ln_1p();
    ln_nj + kf * (1.0 - mu).ln() + (nf - kf + 1.0) * mu.ln() + tail - (2.0 * mu - 1.0).ln()
}

/// Inverse-CDF sampler for the block label `j` over a window around
/// `n(μ − ½)`.
#[derive(Debug, Clone)]
pub struct BlockSampler {
    n: u64,
    mu: f64,
    k_lo: u64,
    cdf: Vec<f64>,
    /// Total probability inside the window before renormalization.
    pub mass: f64,
}

impl BlockSampler {
    pub fn new(n: u64, mu: f64) -> Result<Self, LanError> {
        if !(mu > 0.5 && mu < 1.0) || n == 0 {
            return Err(LanError::Mu(mu));
        }
        let nf = n as f64;
        let base = 12.0 * (nf * mu * (1.0 - mu)).sqrt() + 12.0;
        let mut last = 0.0;
        for widen in [1.0, 2.0] {
            let s = Self::with_half_width(n, mu, widen * base);
            if s.mass >= 1.0 - 1e-9 {
                return Ok(s);
            }
            last = s.mass;
        }
        Err(LanError::Window(last))
    }

    fn with_half_width(n: u64, mu: f64, half: f64) -> Self {
        let nf = n as f64;
        let kmax = n / 2;
        // j = n/2 − k  near  n(μ − ½)  ⇔  k near n(1 − μ)
        let centre = nf * (1.0 - mu);
        let k_lo = (centre - half).floor().max(0.0) as u64;
        let k_hi = ((centre + half).ceil().max(0.0) as u64).min(kmax);
        let mut cdf = Vec::with_capacity((k_hi - k_lo + 1) as usize);
        let mut acc = 0.0;
        for k in k_lo..=k_hi {
            acc += block_log_weight(n, k, mu).exp();
            cdf.push(acc);
        }
        let mass = acc;
        for c in &mut cdf {
            *c /= mass;
        }
        Self { n, mu, k_lo, cdf, mass }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Draw `j` (half-integer for odd `n`).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let x: f64 = rng.random();
        let idx = self.cdf.partition_point(|&c| c < x).min(self.cdf.len() - 1);
        self.n as f64 / 2.0 - (self.k_lo + idx as u64) as f64
    }
}

pub fn sample_block<R: Rng + ?Sized>(n: u64, mu: f64, rng: &mut R) -> Result<f64, LanError> {
    Ok(BlockSampler::new(n, mu)?.sample(rng))
}
