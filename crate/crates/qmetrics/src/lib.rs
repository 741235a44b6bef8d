//! Figures of merit for information transfer: maximal added variance,
//! measurement infidelity, maximal disturbance, remaining coherence and
//! coding imperfection.

mod error;
mod metrics;
pub mod optim;

pub use error::MetricError;
pub use metrics::{
    coding_imperfection, coherence, distance_to_center, max_added_variance,
    max_added_variance_with_square, max_disturbance, max_disturbance_with, measure_prepare,
    measurement_infidelity, measurement_infidelity_pointer, quality_report, sesquilinear_form,
    DisturbanceWitness, QualityReport, SearchOptions, MAX_SPECTRAL_POINTS,
};
