//! Dense complex linear algebra for finite quantum systems.
//!
//! [`ComplexMatrix`] is a plain row-major matrix. [`HermitianOp`] and
//! [`DensityMatrix`] wrap it with validated invariants.

mod error;
mod hermitian;
mod matrix;
mod tol;

pub use error::QmatError;
pub use hermitian::{
    commutator, eig_hermitian, op_norm, pauli, singular_values, trace_norm, DensityMatrix,
    HermitianOp, Spectrum,
};
pub use matrix::{
    basis, inner, normalize, partial_trace, tensor, tensor_vec, vec_norm, ComplexMatrix, C64, I,
    ONE, ZERO,
};
pub use tol::{Tolerances, MAX_EIG_DIM, TOL};
