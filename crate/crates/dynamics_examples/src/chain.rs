use qbounds::{decoherence_estimate_with, OperatorAction};
use qmat::{partial_trace, tensor_vec, ComplexMatrix, DensityMatrix, C64};

use crate::error::{DynError, MAX_CHAIN};

/// Controlled-not transfer on `K ⊗ H`: the apparatus qubit `K` starts in
/// `|0>` and is flipped when the system qubit is `|1>`. Returns the joint
/// output vector and the reduced state of the system.
pub fn cnot_transfer(alpha0: C64, alpha1: C64) -> Result<(Vec<C64>, DensityMatrix), DynError> {
    let norm = alpha0.norm_sqr() + alpha1.norm_sqr();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(DynError::NotNormalized(norm));
    }
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let input = tensor_vec(&[one, zero], &[alpha0, alpha1]);
    // basis |k s>, index 2k + s; flip k when s = 1
    let mut cnot = ComplexMatrix::zeros(4, 4);
    for k in 0..2 {
        for s in 0..2 {
            let k_out = if s == 1 { 1 - k } else { k };
            cnot[(2 * k_out + s, 2 * k + s)] = one;
        }
    }
    let out = cnot.apply(&input);
    let joint = ComplexMatrix::outer(&out, &out);
    let reduced = partial_trace(&joint, &[2, 2], &[1])?;
    Ok((out, DensityMatrix::new(reduced)?))
}

/// Observables used to probe the coherence between the two chain branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinObservable {
    /// `σx` on the first chain spin.
    Micro,
    /// Mean `σx` over all `N+1` spins.
    Macro,
    /// `σx ⊗ … ⊗ σx` over all `N+1` spins.
    Product,
}

/// Coherence left between `θ0 = U(|0…0>⊗ψ0)` and `θ1 = U(|0…0>⊗ψ1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinChainReport {
    pub n: usize,
    /// Off-diagonal weight `½|<θ0|Aθ1>|` seen in the balanced superposition.
    pub coherence: f64,
    /// `|<θ0|Aθ1>|`
    pub interference: f64,
    /// Commutator bound on `|<θ0|Aθ1>|`.
    pub bound: f64,
    pub delta_comm: f64,
    pub b: [f64; 2],
    pub sigma: [f64; 2],
    pub satisfied: bool,
}

/// Bit of chain spin `i` (1-based); the system qubit is bit 0.
fn spin_bit(n: usize, i: usize) -> usize {
    1 << (n + 1 - i)
}

/// Apply `U_N ⋯ U_1` to `|0…0> ⊗ (α0|ψ0> + α1|ψ1>)`, where `U_i` flips chain
/// spin `i` when the system qubit is `ψ1`. Spin order: chain 1..N, then system.
pub fn evolve_chain(n: usize, alpha0: C64, alpha1: C64) -> Result<Vec<C64>, DynError> {
    if n == 0 || n > MAX_CHAIN {
        return Err(DynError::TooLarge(n));
    }
    let dim = 1usize << (n + 1);
    let mut psi = vec![C64::new(0.0, 0.0); dim];
    psi[0] = alpha0;
    psi[1] = alpha1;
    for i in 1..=n {
        let bit = spin_bit(n, i);
        for idx in 0..dim {
            if idx & 1 == 1 && idx & bit == 0 {
                psi.swap(idx, idx | bit);
            }
        }
    }
    Ok(psi)
}

fn mean_sigma_z(n: usize, v: &[C64]) -> Vec<C64> {
    v.iter()
        .enumerate()
        .map(|(idx, &a)| {
            let ups = (1..=n).filter(|&i| idx & spin_bit(n, i) == 0).count() as f64;
            a * ((2.0 * ups - n as f64) / n as f64)
        })
        .collect()
}

fn flip(v: &[C64], mask: usize) -> Vec<C64> {
    (0..v.len()).map(|idx| v[idx ^ mask]).collect()
}

/// Exact chain simulation with pointer `B = (1/N) Σ σz,i` on the chain.
///
/// For the micro and macro observables the commutator constant is the
/// symbolic `2/N`; for the product observable it is the exact value 2.
pub fn spin_chain(n: usize, kind: SpinObservable) -> Result<SpinChainReport, DynError> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let theta0 = evolve_chain(n, one, zero)?;
    let theta1 = evolve_chain(n, zero, one)?;
    let all = (1usize << (n + 1)) - 1;
    let apply_b = |v: &[C64]| mean_sigma_z(n, v);
    let micro = |v: &[C64]| flip(v, spin_bit(n, 1));
    let macro_ = |v: &[C64]| {
        let mut out = vec![zero; v.len()];
        for k in 0..=n {
            for (o, a) in out.iter_mut().zip(flip(v, 1 << k)) {
                *o += a;
            }
        }
        out.iter().map(|a| a / (n + 1) as f64).collect()
    };
    let product = |v: &[C64]| flip(v, all);
    let (apply_a, delta): (&dyn Fn(&[C64]) -> Vec<C64>, f64) = match kind {
        SpinObservable::Micro => (&micro, 2.0 / n as f64),
        SpinObservable::Macro => (&macro_, 2.0 / n as f64),
        SpinObservable::Product => (&product, 2.0),
    };
    let est = decoherence_estimate_with(
        &theta0,
        &theta1,
        &OperatorAction { apply: apply_a, norm: 1.0 },
        &OperatorAction { apply: &apply_b, norm: 1.0 },
        delta,
        1e-12,
    )?;
    Ok(SpinChainReport {
        n,
        coherence: 0.5 * est.measured,
        interference: est.measured,
        bound: est.bound,
        delta_comm: est.delta_comm,
        b: est.b,
        sigma: est.sigma,
        satisfied: est.satisfied,
    })
}

/// Bound `‖A‖/N` for micro or macro observables at any chain length.
pub fn spin_chain_bound(n: usize) -> f64 {
    1.0 / n as f64
}

/// `ε(β) = tr(B τ_β) = −tanh β`
pub fn thermal_epsilon(beta: f64) -> f64 {
    -beta.tanh()
}

/// `1/(|ε|N) + √(1−ε²)/(|ε|√N)` for a chain started in the product thermal
/// state; infinite at `β = 0`.
pub fn thermal_chain_bound(beta: f64, n: usize) -> f64 {
    let e = thermal_epsilon(beta).abs();
    let n = n as f64;
    if e == 0.0 {
        return f64::INFINITY;
    }
    1.0 / (e * n) + (1.0 - e * e).sqrt() / (e * n.sqrt())
}
