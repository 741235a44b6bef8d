use qmat::{normalize, ComplexMatrix, DensityMatrix, HermitianOp, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channel::KrausChannel;
use crate::error::ChanError;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Random unital CP map: Gaussian Kraus operators `G_i` renormalized as
/// `G_i S^{-1/2}` with `S = sum G_i^dag G_i`.
pub fn random_channel_rng(
    in_dim: usize,
    out_dim: usize,
    kraus_count: usize,
    rng: &mut impl Rng,
) -> Result<KrausChannel, ChanError> {
    if in_dim == 0 || out_dim == 0 || kraus_count == 0 {
        return Err(ChanError::Invalid("dimensions and Kraus count must be positive".into()));
    }
    let gs: Vec<ComplexMatrix> = (0..kraus_count)
        .map(|_| gaussian_matrix(out_dim, in_dim, rng))
        .collect();
    let mut s = ComplexMatrix::zeros(in_dim, in_dim);
    for g in &gs {
        s += &g.adjoint_dot(g);
    }
    let s = HermitianOp::with_tol(s, 1e-10)?;
    let inv_sqrt = s.eig()?.apply_fn(|x| 1.0 / x.sqrt());
    KrausChannel::new(gs.iter().map(|g| g.dot(&inv_sqrt)).collect())
}

pub fn random_channel(
    in_dim: usize,
    out_dim: usize,
    kraus_count: usize,
    seed: u64,
) -> Result<KrausChannel, ChanError> {
    random_channel_rng(in_dim, out_dim, kraus_count, &mut rng_from_seed(seed))
}

/// Haar unitary via the polar part of a Ginibre matrix.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let ch = random_channel_rng(d, d, 1, rng).expect("positive dimension");
    ch.ops()[0].clone()
}

pub fn random_pure(d: usize, rng: &mut impl Rng) -> Vec<C64> {
    let v: Vec<C64> = (0..d).map(|_| gaussian(rng)).collect();
    normalize(&v)
}

/// Ginibre-induced mixed state.
pub fn random_density(d: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = gaussian_matrix(d, d, rng);
    let m = g.dot(&g.adjoint());
    DensityMatrix::renormalized(m.hermitian_part()).expect("Ginibre matrix is positive")
}

/// Hermitian matrix with Gaussian entries.
pub fn random_hermitian(d: usize, rng: &mut impl Rng) -> HermitianOp {
    let g = gaussian_matrix(d, d, rng);
    HermitianOp::new(g.hermitian_part()).expect("symmetrized")
}
