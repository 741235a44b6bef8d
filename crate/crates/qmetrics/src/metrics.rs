use qchan::{lift_ancilla, rng_from_seed, random_pure, FinitePovm, KrausChannel, SPECTRAL_MERGE_TOL};
use qmat::{
    eig_hermitian, inner, op_norm, trace_norm, vec_norm, ComplexMatrix, DensityMatrix, HermitianOp,
    C64,
};

use crate::error::MetricError;
use crate::optim::{nelder_mead, scan_golden_max};

/// Largest spectrum handled by exact subset enumeration.
pub const MAX_SPECTRAL_POINTS: usize = 16;

/// Figures of merit of one information transfer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    /// Maximal added variance Σ².
    pub sigma2: f64,
    /// Measurement infidelity δ.
    pub delta: f64,
    /// Maximal disturbance Δ of the restriction.
    pub disturbance: f64,
    /// Distance of the target observable to the centre.
    pub d_center: f64,
}

/// Settings of the projector search behind Δ.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    pub theta_grid: usize,
    pub phi_grid: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 24,
            seed: 0x5eed,
            theta_grid: 32,
            phi_grid: 16,
        }
    }
}

/// Maximizer found by the disturbance search.
#[derive(Debug, Clone)]
pub struct DisturbanceWitness {
    pub value: f64,
    pub state: Vec<C64>,
    /// Projector `P` attaining `‖R(P) − P‖` for that state.
    pub projector: ComplexMatrix,
}

/// `(X, Y)_T = T(X^dag Y) − T(X)^dag T(Y)`
pub fn sesquilinear_form(
    t: &KrausChannel,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
) -> Result<ComplexMatrix, MetricError> {
    let xy = x.adjoint().try_dot(y)?;
    let txy = t.heisenberg_apply(&xy)?;
    let tx = t.heisenberg_apply(x)?;
    let ty = t.heisenberg_apply(y)?;
    Ok(&txy - &tx.adjoint().dot(&ty))
}

/// `Σ² = ‖T(B²) − T(B)²‖` for a pointer on the output space.
pub fn max_added_variance(t: &KrausChannel, b: &HermitianOp) -> Result<f64, MetricError> {
    max_added_variance_with_square(t, b, &b.square())
}

/// Same as [`max_added_variance`] with `B²` supplied, for pointers whose
/// square is cheaper to build directly than by multiplication.
pub fn max_added_variance_with_square(
    t: &KrausChannel,
    b: &HermitianOp,
    b2: &HermitianOp,
) -> Result<f64, MetricError> {
    let tb = t.heisenberg_apply(b.matrix())?;
    let tb2 = t.heisenberg_apply(b2.matrix())?;
    let form = &tb2 - &tb.dot(&tb);
    Ok(op_norm(&form.hermitian_part()))
}

/// `(λ_max − λ_min)/2`
pub fn distance_to_center(a: &HermitianOp) -> Result<f64, MetricError> {
    let (v, _) = eig_hermitian(a)?;
    Ok((v[0] - v[v.len() - 1]) / 2.0)
}

/// Merge two spectra into one sorted list of distinct points.
fn spectral_union(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut all: Vec<f64> = a.iter().chain(b).copied().collect();
    all.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for x in all {
        match out.last() {
            Some(&l) if (x - l).abs() <= SPECTRAL_MERGE_TOL => {}
            _ => out.push(x),
        }
    }
    out
}

fn nearest(points: &[f64], x: f64) -> usize {
    let mut best = 0;
    for (i, &p) in points.iter().enumerate() {
        if (p - x).abs() < (points[best] - x).abs() {
            best = i;
        }
    }
    best
}

/// `δ = sup_S ‖1_S(A) − T(1_S(B))‖` with `S` ranging over subsets of the
/// union of the two spectra. `B` acts on the output space of `T`.
pub fn measurement_infidelity(
    t: &KrausChannel,
    a: &HermitianOp,
    b: &HermitianOp,
) -> Result<f64, MetricError> {
    if a.dim() != t.in_dim() {
        return Err(MetricError::DimensionMismatch {
            expected: t.in_dim(),
            found: a.dim(),
        });
    }
    let pa = FinitePovm::spectral(a)?;
    let pb = FinitePovm::spectral(b)?;
    let points = spectral_union(pa.labels(), pb.labels());
    if points.len() > MAX_SPECTRAL_POINTS {
        return Err(MetricError::SpectrumTooLarge(points.len()));
    }
    let d = a.dim();
    let mut a_parts = vec![ComplexMatrix::zeros(d, d); points.len()];
    for (v, e) in pa.labels().iter().zip(pa.elements()) {
        a_parts[nearest(&points, *v)] += e.matrix();
    }
    let mut b_parts = vec![ComplexMatrix::zeros(d, d); points.len()];
    for (v, e) in pb.labels().iter().zip(pb.elements()) {
        b_parts[nearest(&points, *v)] += &t.heisenberg_apply(e.matrix())?;
    }
    let diffs: Vec<ComplexMatrix> = a_parts.iter().zip(&b_parts).map(|(x, y)| x - y).collect();
    let n = points.len();
    let mut worst: f64 = 0.0;
    // S and its complement give the same norm; fix the last point outside S.
    for mask in 1u32..(1u32 << (n - 1)).max(2) {
        let mut s = ComplexMatrix::zeros(d, d);
        for (k, dk) in diffs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                s += dk;
            }
        }
        worst = worst.max(op_norm(&s.hermitian_part()));
    }
    Ok(worst)
}

/// Infidelity for a pointer on the ancilla factor (`1 ⊗ B`).
pub fn measurement_infidelity_pointer(
    t: &KrausChannel,
    a: &HermitianOp,
    b: &HermitianOp,
) -> Result<f64, MetricError> {
    measurement_infidelity(t, a, &lift_ancilla(t.out_dim(), b)?)
}

fn require_square(r: &KrausChannel) -> Result<(), MetricError> {
    if r.in_dim() != r.out_dim() {
        return Err(MetricError::NotSquare(r.in_dim(), r.out_dim()));
    }
    Ok(())
}

/// `½‖R*(|ψ><ψ|) − |ψ><ψ|‖₁`, the largest `‖R(P)−P‖`-contribution of `ψ`.
fn state_disturbance(r: &KrausChannel, psi: &[C64]) -> f64 {
    let p = ComplexMatrix::outer(psi, psi);
    let img = r.schrodinger_apply_matrix(&p).expect("square channel");
    0.5 * trace_norm(&(&img - &p).hermitian_part())
}

fn bloch_vector(theta: f64, phi: f64) -> Vec<C64> {
    vec![
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    ]
}

/// One alternating-ascent step: best projector for `ψ`, then best `ψ` for
/// that projector.
fn ascend(r: &KrausChannel, psi: &[C64]) -> (Vec<C64>, ComplexMatrix, f64) {
    let p = ComplexMatrix::outer(psi, psi);
    let x = (&r.schrodinger_apply_matrix(&p).expect("square") - &p).hermitian_part();
    let h = HermitianOp::new(x).expect("symmetrized");
    let sp = h.eig().expect("small");
    let proj = sp.apply_fn(|v| if v > 0.0 { 1.0 } else { 0.0 });
    let g = (&r.heisenberg_apply(&proj).expect("square") - &proj).hermitian_part();
    let g = HermitianOp::new(g).expect("symmetrized");
    let gs = g.eig().expect("small");
    (gs.vector(0), proj, gs.values[0])
}

fn polish(r: &KrausChannel, start: Vec<C64>, steps: usize) -> (Vec<C64>, f64) {
    let mut psi = start;
    let mut val = state_disturbance(r, &psi);
    for _ in 0..steps {
        let (next, _, _) = ascend(r, &psi);
        let v = state_disturbance(r, &next);
        if v <= val + 1e-14 {
            if v > val {
                psi = next;
                val = v;
            }
            break;
        }
        psi = next;
        val = v;
    }
    (psi, val)
}

/// Maximal disturbance `Δ = sup_{0≤P≤1} ‖R(P) − P‖`.
///
/// Evaluated through its dual form: the maximum over pure states `ψ` of
/// `½‖R*(ψ) − ψ‖₁`, which equals the supremum over effects and is attained
/// on the positive spectral projector of `R*(ψ) − ψ`.
pub fn max_disturbance(r: &KrausChannel) -> Result<f64, MetricError> {
    Ok(max_disturbance_with(r, &SearchOptions::default())?.value)
}

pub fn max_disturbance_with(
    r: &KrausChannel,
    opts: &SearchOptions,
) -> Result<DisturbanceWitness, MetricError> {
    require_square(r)?;
    let d = r.in_dim();
    let mut best: (Vec<C64>, f64) = (qmat::basis(d, 0), state_disturbance(r, &qmat::basis(d, 0)));
    if d == 1 {
        return Ok(DisturbanceWitness {
            value: 0.0,
            state: best.0,
            projector: ComplexMatrix::identity(1),
        });
    }
    if d == 2 {
        let f = |th: f64, ph: f64| state_disturbance(r, &bloch_vector(th, ph));
        let mut grid = Vec::with_capacity(opts.theta_grid * opts.phi_grid);
        for i in 0..opts.theta_grid {
            let th = std::f64::consts::PI * i as f64 / (opts.theta_grid - 1) as f64;
            for j in 0..opts.phi_grid {
                let ph = 2.0 * std::f64::consts::PI * j as f64 / opts.phi_grid as f64;
                grid.push((th, ph, f(th, ph)));
            }
        }
        grid.sort_by(|a, b| b.2.total_cmp(&a.2));
        for &(th, ph, _) in grid.iter().take(4) {
            let (x, _) = nelder_mead(|x| -f(x[0], x[1]), &[th, ph], 0.05, 1e-15, 2000);
            let cand = polish(r, bloch_vector(x[0], x[1]), 500);
            if cand.1 > best.1 {
                best = cand;
            }
        }
    } else {
        let mut rng = rng_from_seed(opts.seed);
        let mut starts: Vec<Vec<C64>> = (0..d).map(|k| qmat::basis(d, k)).collect();
        starts.extend((0..opts.restarts).map(|_| random_pure(d, &mut rng)));
        // short ascent from every start, full polish of the best few
        let mut rough: Vec<(Vec<C64>, f64)> = starts.into_iter().map(|s| polish(r, s, 10)).collect();
        rough.sort_by(|a, b| b.1.total_cmp(&a.1));
        for (s, _) in rough.into_iter().take(4) {
            let cand = polish(r, s, 500);
            if cand.1 > best.1 {
                best = cand;
            }
        }
    }
    let (_, projector, _) = ascend(r, &best.0);
    Ok(DisturbanceWitness {
        value: best.1.clamp(0.0, 1.0),
        state: best.0,
        projector,
    })
}

fn check_orthonormal(x: &[C64], y: &[C64]) -> Result<(), MetricError> {
    let ov = inner(x, y).norm();
    let nx = (vec_norm(x) - 1.0).abs();
    let ny = (vec_norm(y) - 1.0).abs();
    let worst = ov.max(nx).max(ny);
    if worst > 1e-9 {
        return Err(MetricError::NotOrthonormal(worst));
    }
    Ok(())
}

/// Remaining coherence `sup_{0≤P≤1} |<ψx|R(P)ψy>|`.
///
/// For fixed phase φ the supremum over `P` is the positive part of the
/// Hermitian operator `R*(e^{iφ}|ψy><ψx| + h.c.)/2`, so only a one-dimensional
/// phase search remains.
pub fn coherence(r: &KrausChannel, psi_x: &[C64], psi_y: &[C64]) -> Result<f64, MetricError> {
    require_square(r)?;
    if psi_x.len() != r.in_dim() || psi_y.len() != r.in_dim() {
        return Err(MetricError::DimensionMismatch {
            expected: r.in_dim(),
            found: psi_x.len(),
        });
    }
    check_orthonormal(psi_x, psi_y)?;
    let yx = r.schrodinger_apply_matrix(&ComplexMatrix::outer(psi_y, psi_x))?;
    let xy = yx.adjoint();
    let g = |phi: f64| {
        let e = C64::from_polar(0.5, phi);
        let h = &yx.scale(e) + &xy.scale(e.conj());
        0.5 * trace_norm(&h.hermitian_part())
    };
    let (_, v) = scan_golden_max(g, 0.0, std::f64::consts::PI, 180, 1e-12);
    Ok(v)
}

/// Coding imperfection `sup ‖B − C(D(B))‖` of a measurement `C` (classical
/// algebra to B(H)) followed by a preparation `D` (B(H) to the classical
/// algebra).
pub fn coding_imperfection(c: &KrausChannel, d: &KrausChannel) -> Result<f64, MetricError> {
    if d.in_dim() != c.out_dim() {
        return Err(MetricError::DimensionMismatch {
            expected: c.out_dim(),
            found: d.in_dim(),
        });
    }
    let k = c.out_dim();
    let mut leak: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let mut e = ComplexMatrix::zeros(k, k);
                e[(i, j)] = C64::new(1.0, 0.0);
                leak = leak.max(op_norm(&c.heisenberg_apply(&e)?));
            }
        }
    }
    if leak > 1e-10 {
        return Err(MetricError::NotClassical(leak));
    }
    let cd = qchan::compose(c, d)?;
    max_disturbance(&cd)
}

/// Measure with `povm`, then prepare `states[i]` on outcome `i`. Returns the
/// coding pair `(C, D)`.
pub fn measure_prepare(
    povm: &FinitePovm,
    states: &[DensityMatrix],
) -> Result<(KrausChannel, KrausChannel), MetricError> {
    let k = povm.len();
    let d = povm.dim();
    if states.len() != k {
        return Err(MetricError::DimensionMismatch {
            expected: k,
            found: states.len(),
        });
    }
    let mut c_ops = Vec::new();
    for (i, e) in povm.elements().iter().enumerate() {
        let root = e.eig()?.apply_fn(|x| x.max(0.0).sqrt());
        for m in 0..d {
            let mut op = ComplexMatrix::zeros(k, d);
            for col in 0..d {
                op[(i, col)] = root[(m, col)];
            }
            if op.max_abs() > 0.0 {
                c_ops.push(op);
            }
        }
    }
    let mut d_ops = Vec::new();
    for (i, s) in states.iter().enumerate() {
        let h = HermitianOp::new(s.matrix().clone())?;
        let (vals, vecs) = eig_hermitian(&h)?;
        for (a, &w) in vals.iter().enumerate() {
            if w <= 1e-15 {
                continue;
            }
            let mut op = ComplexMatrix::zeros(d, k);
            for row in 0..d {
                op[(row, i)] = vecs[(row, a)] * w.sqrt();
            }
            d_ops.push(op);
        }
    }
    Ok((KrausChannel::new(c_ops)?, KrausChannel::new(d_ops)?))
}

/// All four figures for a transfer `T` of `A` to the ancilla pointer `B`.
pub fn quality_report(
    t: &KrausChannel,
    a: &HermitianOp,
    b: &HermitianOp,
) -> Result<QualityReport, MetricError> {
    let lifted = lift_ancilla(t.out_dim(), b)?;
    let r = t.restrict_to_system(b.dim())?;
    Ok(QualityReport {
        sigma2: max_added_variance(t, &lifted)?,
        delta: measurement_infidelity(t, a, &lifted)?,
        disturbance: max_disturbance(&r)?,
        d_center: distance_to_center(a)?,
    })
}
