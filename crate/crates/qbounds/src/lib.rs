//! Evaluators for the information/disturbance trade-off inequalities, the
//! family that saturates them, and a seeded randomized audit.

mod audit;
mod checks;
mod error;

pub use audit::{
    audit, audit_instance, sharp_sweep, AuditConfig, AuditReport, BoundSummary, InstanceFamily,
    InstanceReport, SharpPoint,
};
pub use checks::{
    coding_bounds, collapse_check, collapse_check_all_pairs, collapse_rhs, decoherence_estimate,
    decoherence_estimate_with, heisenberg_check, heisenberg_from_values, heisenberg_rhs,
    info_disturbance_check, joint_measurement_check, nondestructive_collapse_check,
    nondestructive_collapse_rhs, sharp_family, sharp_family_checks, BoundCheck,
    DecoherenceEstimate, OperatorAction, BOUND_TOL,
};
pub use error::BoundError;
