use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::block::BlockSampler;
use crate::error::LanError;
use crate::local::{family_bloch, trace_distance_bloch, LocalParams};
use crate::outcome::{
    energy_outcome, fidelity_risk_theory, heterodyne_outcome, loss, trace_risk_theory,
    truncate_estimator, MU_GUARD,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMode {
    /// Heterodyne and energy outcomes drawn from their limit laws.
    GaussianLimit,
    /// Block label drawn from its exact law, then smoothed.
    ExactBlock,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimationConfig {
    pub n: u64,
    pub kappa: f64,
    pub eta: f64,
    pub mu0: f64,
    pub u_true: LocalParams,
    pub mode: SamplingMode,
    pub trials: usize,
    pub seed: u64,
}

impl Default for EstimationConfig {
    fn default() -> Self {
        Self {
            n: 100_000,
            kappa: 0.1,
            eta: 0.2,
            mu0: 0.9,
            u_true: LocalParams::default(),
            mode: SamplingMode::GaussianLimit,
            trials: 100_000,
            seed: 0,
        }
    }
}

impl EstimationConfig {
    pub fn validate(&self) -> Result<(), LanError> {
        let bad = |m: String| Err(LanError::Config(m));
        if !(self.kappa > 0.0 && self.kappa < 1.0) {
            return bad(format!("κ = {} outside (0, 1)", self.kappa));
        }
        if !(self.eta > 0.0 && self.eta < 0.25) {
            return bad(format!("η = {} outside (0, ¼)", self.eta));
        }
        if !(self.mu0 - 0.5 >= MU_GUARD && self.mu0 < 1.0) {
            return bad(format!("μ₀ = {} outside (½ + 1e-3, 1)", self.mu0));
        }
        if self.trials == 0 || self.n < 2 {
            return bad("need trials ≥ 1 and n ≥ 2".into());
        }
        if !self.u_true.to_array().iter().all(|v| v.is_finite()) {
            return bad("non-finite local parameter".into());
        }
        let mu_u = self.mu_u();
        if self.mode == SamplingMode::ExactBlock && !(mu_u > 0.5 && mu_u < 1.0) {
            return bad(format!("μ₀ + u_z/√n = {mu_u} outside (½, 1)"));
        }
        Ok(())
    }

    /// `μ₀ + u_z/√n`
    pub fn mu_u(&self) -> f64 {
        self.mu0 + self.u_true.uz / (self.n as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LossKind {
    Trace,
    Fidelity,
    /// `n‖ρ_{u/√n} − ρ_{û/√n}‖₁²` from the reconstructed states.
    ExactTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiskReport {
    pub trials: usize,
    pub mean_n_risk: f64,
    pub std_error: f64,
    pub theory: f64,
    pub loss_kind: LossKind,
}

impl RiskReport {
    fn from_samples(xs: &[f64], theory: f64, loss_kind: LossKind) -> Self {
        let m = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / m;
        let var = if xs.len() > 1 {
            xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0)
        } else {
            0.0
        };
        Self { trials: xs.len(), mean_n_risk: mean, std_error: (var / m).sqrt(), theory, loss_kind }
    }

    /// `|mean − theory|` in units of the standard error.
    pub fn z_score(&self) -> f64 {
        (self.mean_n_risk - self.theory).abs() / self.std_error.max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub config: EstimationConfig,
    pub trace: RiskReport,
    pub fidelity: RiskReport,
    pub exact_trace: RiskReport,
    /// Components zeroed by the truncation rule.
    pub truncated: usize,
    /// Trials where truncation moved a component away from `u`
    /// although `‖u‖ ≤ n^η`; zero by construction.
    pub improvement_violations: usize,
}

/// Outcome of one Monte Carlo trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialRecord {
    pub index: u64,
    pub u_hat: LocalParams,
    pub trace: f64,
    pub fidelity: f64,
    pub exact_trace: f64,
    pub truncated: usize,
    pub violation: bool,
}

fn one_trial(cfg: &EstimationConfig, sampler: Option<&BlockSampler>, index: u64) -> Result<TrialRecord, LanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let u = cfg.u_true;
    let mu = cfg.mu0;
    let (hx, hy) = heterodyne_outcome(u, mu, &mut rng)?;
    let g = match sampler {
        None => {
            let law = Normal::new(u.uz, (mu * (1.0 - mu)).sqrt()).expect("positive variance");
            law.sample(&mut rng)
        }
        Some(s) => energy_outcome(s.sample(&mut rng), cfg.n, mu, &mut rng),
    };
    let raw = LocalParams::new(hx, hy, g);
    let est = truncate_estimator(raw, cfg.n, cfg.eta);
    let (tr, fid) = loss(u, est, mu)?;
    let ua = u.to_array();
    let (ra, ea) = (raw.to_array(), est.to_array());
    let truncated = (0..3).filter(|&i| ea[i] != ra[i]).count();
    let inside = u.norm() <= (cfg.n as f64).powf(cfg.eta);
    let violation = inside && (0..3).any(|i| (ea[i] - ua[i]).abs() > (ra[i] - ua[i]).abs());
    let s = (cfg.n as f64).sqrt();
    let r_true = family_bloch(mu, [u.ux / s, u.uy / s, u.uz / s]);
    let r_est = family_bloch(mu, [est.ux / s, est.uy / s, est.uz / s]);
    let exact = cfg.n as f64 * trace_distance_bloch(r_true, r_est).powi(2);
    Ok(TrialRecord { index, u_hat: est, trace: tr, fidelity: fid, exact_trace: exact, truncated, violation })
}

/// Per-trial records in trial order. Trial `i` uses ChaCha8 stream `i` of
/// the master seed, so results do not depend on the number of threads.
pub fn trial_records(cfg: &EstimationConfig) -> Result<Vec<TrialRecord>, LanError> {
    cfg.validate()?;
    let sampler = match cfg.mode {
        SamplingMode::GaussianLimit => None,
        SamplingMode::ExactBlock => Some(BlockSampler::new(cfg.n, cfg.mu_u())?),
    };
    (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| one_trial(cfg, sampler.as_ref(), i))
        .collect()
}

/// Aggregate risks of the given per-trial records.
pub fn summarize(cfg: &EstimationConfig, trials: &[TrialRecord]) -> TrialReport {
    let col = |f: fn(&TrialRecord) -> f64| trials.iter().map(f).collect::<Vec<f64>>();
    TrialReport {
        config: *cfg,
        trace: RiskReport::from_samples(&col(|t| t.trace), trace_risk_theory(cfg.mu0), LossKind::Trace),
        fidelity: RiskReport::from_samples(
            &col(|t| t.fidelity),
            fidelity_risk_theory(cfg.mu0),
            LossKind::Fidelity,
        ),
        exact_trace: RiskReport::from_samples(
            &col(|t| t.exact_trace),
            trace_risk_theory(cfg.mu0),
            LossKind::ExactTrace,
        ),
        truncated: trials.iter().map(|t| t.truncated).sum(),
        improvement_violations: trials.iter().filter(|t| t.violation).count(),
    }
}

/// Monte Carlo risk of the stage-2 estimator in local coordinates.
pub fn run_trials(cfg: &EstimationConfig) -> Result<TrialReport, LanError> {
    Ok(summarize(cfg, &trial_records(cfg)?))
}

/// `|a − b|` in units of the combined standard error.
pub fn combined_z(a: &RiskReport, b: &RiskReport) -> f64 {
    (a.mean_n_risk - b.mean_n_risk).abs() / a.std_error.hypot(b.std_error).max(f64::MIN_POSITIVE)
}
