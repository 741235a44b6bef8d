//! Pointer functions for a qubit read out through the homodyne record of
//! its decay: special functions, the outcome density, closed-form and
//! optimized pointer qualities, and densities of pointer values.

mod density;
mod error;
mod pointer;
pub mod quad;
mod special;

pub use density::{beta_t, density_p, density_q, DensityCoefficients};
pub use error::PointerError;
pub use pointer::{
    d1_d2, naive_optimum, naive_qualities, optimize_pointer, output_density, pointer_range,
    quality_by_quadrature, simple_pointer_qualities, unbiasedness_check, NaiveOptimum,
    PointerKind, PointerSpec, QualityPair, Target, Unbiasedness, QUAD_HALF_WIDTH, QUAD_TOL,
};
pub use special::{erf, erfc, i_eps, j_eps};
