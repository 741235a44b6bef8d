//! Two-stage adaptive estimation of a qubit state: a coarse localization
//! from Pauli coin tosses, then sampling of the limiting Gaussian outcome
//! laws in local coordinates, truncation and Monte Carlo risk.

mod block;
mod error;
mod local;
mod outcome;
mod stage1;
mod trials;

pub use block::{block_log_weight, sample_block, BlockSampler};
pub use error::LanError;
pub use local::{
    alignment_rotation, family_bloch, family_inverse, local_params, reconstruct,
    trace_distance_bloch, LocalParams,
};
pub use outcome::{
    energy_outcome, fidelity_risk_theory, heterodyne_outcome, heterodyne_variance, loss,
    trace_risk_theory, truncate_estimator, MU_GUARD,
};
pub use stage1::{n_tilde, stage1_bloch, stage1_estimate, stage1_miss_rate, MissReport, Stage1};
pub use trials::{
    combined_z, run_trials, summarize, trial_records, EstimationConfig, LossKind, RiskReport,
    SamplingMode, TrialRecord, TrialReport,
};
