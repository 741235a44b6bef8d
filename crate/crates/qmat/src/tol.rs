/// Numerical tolerances shared by every crate in the workspace.
///
/// The defaults are the values the invariants are stated against; callers that
/// need looser checks clone and adjust.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative deviation from Hermiticity absorbed by symmetrization.
    pub herm: f64,
    /// Most negative eigenvalue accepted for a positive operator.
    pub psd: f64,
    /// Allowed deviation of a state's trace from one.
    pub trace: f64,
    /// Allowed deviation of `sum V^dag V` from the identity.
    pub unital: f64,
    /// Most negative Choi eigenvalue accepted for complete positivity.
    pub choi: f64,
    /// Probability mass allowed beyond a Fock truncation.
    pub trunc: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        TOL
    }
}

pub const TOL: Tolerances = Tolerances {
    herm: 1e-12,
    psd: 1e-10,
    trace: 1e-12,
    unital: 1e-10,
    choi: 1e-9,
    trunc: 1e-12,
};

/// Largest dimension accepted by the dense eigensolver.
pub const MAX_EIG_DIM: usize = 4096;
