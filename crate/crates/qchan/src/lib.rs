//! Quantum probability layer: channels in the Heisenberg picture, POVMs and
//! classical systems embedded as diagonal algebras.

mod channel;
mod classical;
mod error;
mod povm;
mod random;

pub use channel::{
    choi_of_map, compose, is_cp_map, lift_ancilla, lift_system, tensor_channel, KrausChannel,
};
pub use classical::ClassicalSystem;
pub use error::ChanError;
pub use povm::{povm_from_channel, povm_from_pointer, FinitePovm, SPECTRAL_MERGE_TOL};
pub use random::{
    gaussian_matrix, random_channel, random_channel_rng, random_density, random_hermitian,
    random_pure, random_unitary, rng_from_seed,
};
