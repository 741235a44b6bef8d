//! Truncated Fock spaces: ladder and quadrature operators, coherent and
//! thermal states, and the two-mode beamsplitter.

mod beamsplitter;
mod error;
mod space;

pub use beamsplitter::{BeamSplitter, JointQuality};
pub use error::FockError;
pub use space::{
    coherent_overlap, min_levels_for, CoherentVector, FockSpace, ThermalState, DEFAULT_TAIL,
};
