//! Worked information-transfer examples: the controlled-not gate, a spin
//! chain as measuring apparatus, and the driven two-level atom.

mod bloch;
mod chain;
mod error;

pub use bloch::{
    bloch_channel, bloch_evolve, bloch_evolve_mode, rf_channel, rf_disturbance,
    rf_identity_residual, rf_infidelity_bound, BlochMode, BlochVector,
};
pub use chain::{
    cnot_transfer, evolve_chain, spin_chain, spin_chain_bound, thermal_chain_bound,
    thermal_epsilon, SpinChainReport, SpinObservable,
};
pub use error::{DynError, MAX_CHAIN};
