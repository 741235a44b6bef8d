use qchan::{
    lift_ancilla, random_channel_rng, random_unitary, rng_from_seed, KrausChannel,
};
use qmat::{ComplexMatrix, HermitianOp, C64};
use qmetrics::{distance_to_center, max_added_variance, max_disturbance, measurement_infidelity_pointer};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{
    collapse_check_all_pairs, heisenberg_from_values, info_disturbance_check,
    joint_measurement_check, nondestructive_collapse_check, sharp_family_checks, BoundCheck,
};
use crate::error::BoundError;

/// Settings of a randomized audit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AuditConfig {
    pub instances: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self { instances: 1000, seed: 2024, tol: 1e-9 }
    }
}

/// How an audit instance was generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InstanceFamily {
    /// Random unital CP map into system ⊗ ancilla with random pointers.
    RandomChannel,
    /// Random nondestructive instrument with a noisy outcome register.
    Nondestructive,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    pub family: InstanceFamily,
    pub dim: usize,
    pub ancilla: usize,
    pub checks: Vec<BoundCheck>,
}

/// Per-inequality summary.
#[derive(Debug, Clone, Serialize)]
pub struct BoundSummary {
    pub name: &'static str,
    pub evaluated: usize,
    pub void: usize,
    pub violations: usize,
    pub min_gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SharpPoint {
    pub p: f64,
    pub checks: Vec<BoundCheck>,
    pub max_abs_gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub config: AuditConfig,
    pub summaries: Vec<BoundSummary>,
    pub violations: Vec<InstanceReport>,
    pub sharp: Vec<SharpPoint>,
}

impl AuditReport {
    pub fn total_violations(&self) -> usize {
        self.summaries.iter().map(|s| s.violations).sum()
    }

    pub fn sharp_max_gap(&self) -> f64 {
        self.sharp.iter().map(|s| s.max_abs_gap).fold(0.0, f64::max)
    }
}

/// Instance seeds are a fixed mix of the base seed and the index, so every
/// instance is reproducible on its own and independent of thread count.
fn instance_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn unitary_diag(u: &ComplexMatrix, d: &[f64]) -> HermitianOp {
    let m = u.dot(&ComplexMatrix::from_real_diag(d)).dot(&u.adjoint());
    HermitianOp::new(m.hermitian_part()).expect("symmetrized")
}

fn normal_vec(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal)).collect()
}

/// Transfer checks shared by both families.
fn transfer_checks(
    t: &KrausChannel,
    b: &HermitianOp,
    a_info: &HermitianOp,
    tol: f64,
) -> Result<Vec<BoundCheck>, BoundError> {
    let lifted = lift_ancilla(t.out_dim(), b)?;
    let sigma = max_added_variance(t, &lifted)?.sqrt();
    let dc = distance_to_center(&t.pointer_image(b)?)?;
    let dist = max_disturbance(&t.restrict_to_system(b.dim())?)?;
    let info = measurement_infidelity_pointer(t, a_info, b)?;
    let mut out = vec![
        heisenberg_from_values(sigma, dc, dist, tol)?,
        info_disturbance_check(info, dist, tol),
    ];
    if let Some(c) = collapse_check_all_pairs(t, b, tol)? {
        out.push(c);
    }
    Ok(out)
}

fn random_channel_instance(
    index: usize,
    seed: u64,
    tol: f64,
) -> Result<InstanceReport, BoundError> {
    let mut rng = rng_from_seed(seed);
    let d = 2 + index % 3;
    let k = 2 + (index / 3) % 2;
    let kraus = 1 + rng.random_range(0..4usize);
    let t = random_channel_rng(d, d * k, kraus, &mut rng)?;
    let b = HermitianOp::from_real_diag(&normal_vec(k, &mut rng));

    // δ is judged against the observable the pointer actually transfers.
    let a = t.pointer_image(&b)?;
    let mut checks = transfer_checks(&t, &b, &a, tol)?;

    let w = random_unitary(d * k, &mut rng);
    let b1 = unitary_diag(&w, &normal_vec(d * k, &mut rng));
    let b2 = unitary_diag(&w, &normal_vec(d * k, &mut rng));
    checks.push(joint_measurement_check(&t, &b1, &b2, tol)?);
    Ok(InstanceReport { index, family: InstanceFamily::RandomChannel, dim: d, ancilla: k, checks })
}

/// `V_m = U diag(c_m) U† ⊗ |m>` with outcome law `q(m|i) = |c_{mi}|²` close to
/// the identity, so `R*` fixes every eigenprojection of `A = U diag(a) U†`.
fn nondestructive_instance(
    index: usize,
    seed: u64,
    tol: f64,
) -> Result<InstanceReport, BoundError> {
    let mut rng = rng_from_seed(seed);
    let d = 2 + index % 3;
    let u = random_unitary(d, &mut rng);
    let mut labels: Vec<f64> = Vec::with_capacity(d);
    let mut acc = rng.random_range(-1.0..0.0);
    for _ in 0..d {
        labels.push(acc);
        acc += 0.2 + rng.random::<f64>();
    }
    let mut q = vec![vec![0.0; d]; d];
    for i in 0..d {
        let noise = 0.6 * rng.random::<f64>();
        let spread: Vec<f64> = (0..d).map(|m| if m == i { 0.0 } else { rng.random::<f64>() }).collect();
        let total: f64 = spread.iter().sum();
        for m in 0..d {
            q[m][i] = if m == i { 1.0 - noise } else { noise * spread[m] / total };
        }
    }
    // real amplitudes keep as much coherence as the outcome law allows
    let phased = index % 2 == 1;
    let branches: Vec<Vec<ComplexMatrix>> = (0..d)
        .map(|m| {
            let diag: Vec<C64> = (0..d)
                .map(|i| {
                    let ph = if phased { rng.random_range(0.0..std::f64::consts::TAU) } else { 0.0 };
                    C64::from_polar(q[m][i].sqrt(), ph)
                })
                .collect();
            vec![u.dot(&ComplexMatrix::from_diag(&diag)).dot(&u.adjoint())]
        })
        .collect();
    let t = KrausChannel::from_instrument(&branches)?;
    let a = unitary_diag(&u, &labels);
    let b = HermitianOp::from_real_diag(&labels);

    let mut checks = transfer_checks(&t, &b, &a, tol)?;
    checks.push(nondestructive_collapse_check(&t, &a, &b, tol)?);

    let w = random_unitary(d * d, &mut rng);
    let b1 = unitary_diag(&w, &normal_vec(d * d, &mut rng));
    let b2 = unitary_diag(&w, &normal_vec(d * d, &mut rng));
    checks.push(joint_measurement_check(&t, &b1, &b2, tol)?);
    Ok(InstanceReport { index, family: InstanceFamily::Nondestructive, dim: d, ancilla: d, checks })
}

/// Evaluate instance `index` of the audit with base seed `seed`. Even indices
/// are random channels, odd indices nondestructive instruments.
pub fn audit_instance(index: usize, seed: u64, tol: f64) -> Result<InstanceReport, BoundError> {
    let s = instance_seed(seed, index);
    if index % 2 == 0 {
        random_channel_instance(index / 2, s, tol)
    } else {
        nondestructive_instance(index / 2, s, tol)
    }
}

/// The sharp family on the grid `p = 0.05, 0.10, …, 0.45`.
pub fn sharp_sweep(tol: f64) -> Result<Vec<SharpPoint>, BoundError> {
    (1..=9)
        .map(|i| {
            let p = 0.05 * i as f64;
            let checks = sharp_family_checks(p, tol)?;
            let max_abs_gap = checks.iter().map(|c| c.gap.abs()).fold(0.0, f64::max);
            Ok(SharpPoint { p, checks, max_abs_gap })
        })
        .collect()
}

const NAMES: [&str; 5] = [
    "joint_measurement",
    "heisenberg",
    "info_disturbance",
    "collapse",
    "nondestructive_collapse",
];

/// Randomized audit of every inequality plus the sharp-family sweep.
/// Deterministic for a given config regardless of thread count.
pub fn audit(config: AuditConfig) -> Result<AuditReport, BoundError> {
    let reports: Vec<InstanceReport> = (0..config.instances)
        .into_par_iter()
        .map(|i| audit_instance(i, config.seed, config.tol))
        .collect::<Result<_, _>>()?;
    let summaries = NAMES
        .iter()
        .map(|&name| {
            let mut s = BoundSummary { name, evaluated: 0, void: 0, violations: 0, min_gap: f64::INFINITY };
            for c in reports.iter().flat_map(|r| &r.checks).filter(|c| c.name == name) {
                if !c.applicable {
                    s.void += 1;
                    continue;
                }
                s.evaluated += 1;
                s.min_gap = s.min_gap.min(c.gap);
                if !c.satisfied {
                    s.violations += 1;
                }
            }
            s
        })
        .collect();
    let violations = reports
        .into_iter()
        .filter(|r| r.checks.iter().any(|c| !c.satisfied))
        .collect();
    Ok(AuditReport { config, summaries, violations, sharp: sharp_sweep(config.tol)? })
}
