use qchan::{lift_ancilla, KrausChannel};
use qmat::{basis, commutator, eig_hermitian, op_norm, vec_norm, ComplexMatrix, HermitianOp, C64};
use qmetrics::{
    coherence, distance_to_center, max_added_variance, max_disturbance, measurement_infidelity_pointer,
};
use serde::Serialize;

use crate::error::BoundError;

/// Default tolerance on the gap of a bound check.
pub const BOUND_TOL: f64 = 1e-9;

/// Eigenvalues closer than this are treated as equal.
const EIG_SEP: f64 = 1e-9;

/// Outcome of evaluating one inequality on one instance.
///
/// `gap` is oriented so that `gap >= 0` means the inequality holds: it is
/// `lhs - rhs` for lower bounds and `rhs - lhs` for upper bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub satisfied: bool,
    /// False when the hypotheses of the inequality fail and nothing is claimed.
    pub applicable: bool,
    pub note: String,
}

impl BoundCheck {
    fn lower(name: &'static str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let gap = lhs - rhs;
        Self { name, lhs, rhs, gap, satisfied: gap >= -tol, applicable: true, note: String::new() }
    }

    fn upper(name: &'static str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let gap = rhs - lhs;
        Self { name, lhs, rhs, gap, satisfied: gap >= -tol, applicable: true, note: String::new() }
    }

    fn void(name: &'static str, lhs: f64, rhs: f64, note: &str) -> Self {
        Self {
            name,
            lhs,
            rhs,
            gap: f64::INFINITY,
            satisfied: true,
            applicable: false,
            note: note.to_string(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

/// `d(A,Z)·(½−Δ)/√(Δ(1−Δ))`, clamped at zero for `Δ ≥ ½`.
/// Returns `+∞` for `Δ = 0` and a non-central `A`.
pub fn heisenberg_rhs(d_center: f64, delta: f64) -> f64 {
    if delta >= 0.5 || d_center <= 0.0 {
        return 0.0;
    }
    if delta <= 0.0 {
        return f64::INFINITY;
    }
    d_center * (0.5 - delta) / (delta * (1.0 - delta)).sqrt()
}

/// `s/√(1+4s²)` with `s = Σ/|x−y|`.
pub fn collapse_rhs(ratio: f64) -> f64 {
    ratio / (1.0 + 4.0 * ratio * ratio).sqrt()
}

/// `√(δ(1−δ))`
pub fn nondestructive_collapse_rhs(delta: f64) -> f64 {
    (delta * (1.0 - delta)).max(0.0).sqrt()
}

/// `Σ_B Σ_B̃ ≥ ½‖[T(B),T(B̃)]‖` for commuting pointers on the output space.
pub fn joint_measurement_check(
    t: &KrausChannel,
    b: &HermitianOp,
    b_tilde: &HermitianOp,
    tol: f64,
) -> Result<BoundCheck, BoundError> {
    let scale = 1.0 + b.op_norm()? * b_tilde.op_norm()?;
    let comm = op_norm(&commutator(b, b_tilde)?);
    if comm > 1e-10 * scale {
        return Err(BoundError::NonCommuting(comm));
    }
    let s1 = max_added_variance(t, b)?.sqrt();
    let s2 = max_added_variance(t, b_tilde)?.sqrt();
    let a = t.heisenberg_apply_herm(b)?;
    let at = t.heisenberg_apply_herm(b_tilde)?;
    let rhs = 0.5 * op_norm(&commutator(&a, &at)?);
    Ok(BoundCheck::lower("joint_measurement", s1 * s2, rhs, tol))
}

/// `Σ ≥ d(A,Z)(½−Δ)/√(Δ(1−Δ))` with `A = T(1⊗B)` and `B` on the ancilla.
pub fn heisenberg_check(t: &KrausChannel, b: &HermitianOp, tol: f64) -> Result<BoundCheck, BoundError> {
    let lifted = lift_ancilla(t.out_dim(), b)?;
    let sigma = max_added_variance(t, &lifted)?.sqrt();
    let a = t.pointer_image(b)?;
    let dc = distance_to_center(&a)?;
    let delta = max_disturbance(&t.restrict_to_system(b.dim())?)?;
    heisenberg_from_values(sigma, dc, delta, tol)
}

/// Same check from precomputed `Σ`, `d(A,Z)` and `Δ`.
pub fn heisenberg_from_values(sigma: f64, d_center: f64, delta: f64, tol: f64) -> Result<BoundCheck, BoundError> {
    let delta = if delta < 1e-12 { 0.0 } else { delta };
    let dc = if d_center < 1e-12 { 0.0 } else { d_center };
    let rhs = heisenberg_rhs(dc, delta);
    let check = BoundCheck::lower("heisenberg", sigma, rhs, tol);
    Ok(if rhs.is_infinite() {
        check.with_note("no disturbance but a non-central transferred observable")
    } else {
        check
    })
}

/// `(½−δ)² + (½−Δ)² ≤ ¼`, claimed only for `δ, Δ ∈ [0, ½]`.
pub fn info_disturbance_check(delta_info: f64, delta_dist: f64, tol: f64) -> BoundCheck {
    let lhs = (0.5 - delta_info).powi(2) + (0.5 - delta_dist).powi(2);
    let inside = |x: f64| (-tol..=0.5 + tol).contains(&x);
    if !inside(delta_info) || !inside(delta_dist) {
        return BoundCheck::void("info_disturbance", lhs, 0.25, "hypothesis void");
    }
    BoundCheck::upper("info_disturbance", lhs, 0.25, tol)
}

/// Coding bounds `((3−√5)/4, (d−1)/(d+1))`: the first holds for every
/// classical coding, the second is the optimum for dimension `d`.
pub fn coding_bounds(d: usize) -> Result<(f64, f64), BoundError> {
    if d < 2 {
        return Err(BoundError::OutOfRange(format!("dimension {d} < 2")));
    }
    let d = d as f64;
    Ok(((3.0 - 5f64.sqrt()) / 4.0, (d - 1.0) / (d + 1.0)))
}

fn eigen_residual(a: &HermitianOp, v: &[C64], x: f64) -> f64 {
    let av = a.matrix().apply(v);
    let r: Vec<C64> = av.iter().zip(v).map(|(p, q)| p - q * x).collect();
    vec_norm(&r)
}

/// Remaining coherence between eigenvectors `ψx`, `ψy` of `A = T(1⊗B)` against
/// `(Σ/|x−y|)/√(1+4(Σ/|x−y|)²)`.
pub fn collapse_check(
    t: &KrausChannel,
    b: &HermitianOp,
    psi_x: &[C64],
    psi_y: &[C64],
    x: f64,
    y: f64,
    tol: f64,
) -> Result<BoundCheck, BoundError> {
    if (x - y).abs() <= EIG_SEP {
        return Err(BoundError::Degenerate(x, y));
    }
    let a = t.pointer_image(b)?;
    let scale = 1.0 + a.op_norm()?;
    for (v, e) in [(psi_x, x), (psi_y, y)] {
        let res = eigen_residual(&a, v, e);
        if res > 1e-8 * scale {
            return Err(BoundError::NotEigenvector(res));
        }
    }
    let lifted = lift_ancilla(t.out_dim(), b)?;
    let sigma = max_added_variance(t, &lifted)?.sqrt();
    let r = t.restrict_to_system(b.dim())?;
    let lhs = coherence(&r, psi_x, psi_y)?;
    Ok(BoundCheck::upper("collapse", lhs, collapse_rhs(sigma / (x - y).abs()), tol))
}

/// Worst [`collapse_check`] over all eigenvector pairs of `A = T(1⊗B)` with
/// distinct eigenvalues. `None` when `A` is central.
pub fn collapse_check_all_pairs(
    t: &KrausChannel,
    b: &HermitianOp,
    tol: f64,
) -> Result<Option<BoundCheck>, BoundError> {
    let a = t.pointer_image(b)?;
    let (vals, vecs) = eig_hermitian(&a)?;
    let lifted = lift_ancilla(t.out_dim(), b)?;
    let sigma = max_added_variance(t, &lifted)?.sqrt();
    let r = t.restrict_to_system(b.dim())?;
    let mut worst: Option<BoundCheck> = None;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            let sep = (vals[i] - vals[j]).abs();
            if sep <= 1e-6 * (1.0 + vals[0].abs()) {
                continue;
            }
            let lhs = coherence(&r, &vecs.col(i), &vecs.col(j))?;
            let c = BoundCheck::upper("collapse", lhs, collapse_rhs(sigma / sep), tol);
            if worst.as_ref().is_none_or(|w| c.gap < w.gap) {
                worst = Some(c);
            }
        }
    }
    Ok(worst)
}

/// Coherence left by a nondestructive transfer against `√(δ(1−δ))`, worst
/// case over eigenvector pairs of `A` with distinct eigenvalues. `δ` is
/// measured with the pointer `B` on the ancilla.
pub fn nondestructive_collapse_check(
    t: &KrausChannel,
    a: &HermitianOp,
    b: &HermitianOp,
    tol: f64,
) -> Result<BoundCheck, BoundError> {
    let r = t.restrict_to_system(b.dim())?;
    let (vals, vecs) = eig_hermitian(a)?;
    let n = vals.len();
    let mut defect: f64 = 0.0;
    for i in 0..n {
        let v = vecs.col(i);
        let p = ComplexMatrix::outer(&v, &v);
        defect = defect.max(r.schrodinger_apply_matrix(&p)?.max_abs_diff(&p));
    }
    if defect > 1e-9 {
        return Err(BoundError::Destructive(defect));
    }
    let delta = measurement_infidelity_pointer(t, a, b)?;
    let rhs = nondestructive_collapse_rhs(delta);
    let mut lhs: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            if (vals[i] - vals[j]).abs() > EIG_SEP {
                lhs = lhs.max(coherence(&r, &vecs.col(i), &vecs.col(j))?);
            }
        }
    }
    if delta > 0.5 + tol {
        return Ok(BoundCheck::void("nondestructive_collapse", lhs, rhs, "hypothesis void"));
    }
    Ok(BoundCheck::upper("nondestructive_collapse", lhs, rhs, tol))
}

/// Interference term `|<θ0|Aθ1>|` against its commutator bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecoherenceEstimate {
    pub bound: f64,
    pub measured: f64,
    pub delta_comm: f64,
    pub b: [f64; 2],
    pub sigma: [f64; 2],
    pub satisfied: bool,
}

/// Operator data for [`decoherence_estimate_with`], given by its action on
/// vectors so that large product spaces never need dense matrices.
pub struct OperatorAction<'a> {
    pub apply: &'a dyn Fn(&[C64]) -> Vec<C64>,
    pub norm: f64,
}

fn expect(v: &[C64], w: &[C64]) -> C64 {
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

/// `(δ‖B‖ + σ0 + σ1)/|b0 − b1| · ‖A‖` with `δ` supplied by the caller, who
/// is responsible for `‖[A,B]‖ ≤ δ‖A‖‖B‖`.
pub fn decoherence_estimate_with(
    theta0: &[C64],
    theta1: &[C64],
    a: &OperatorAction<'_>,
    b: &OperatorAction<'_>,
    delta_comm: f64,
    tol: f64,
) -> Result<DecoherenceEstimate, BoundError> {
    let mut bj = [0.0; 2];
    let mut sj = [0.0; 2];
    for (k, th) in [theta0, theta1].into_iter().enumerate() {
        let bt = (b.apply)(th);
        let mean = expect(th, &bt).re;
        let second = expect(&bt, &bt).re;
        bj[k] = mean;
        sj[k] = (second - mean * mean).max(0.0).sqrt();
    }
    let gap = (bj[0] - bj[1]).abs();
    if gap <= 1e-12 {
        return Err(BoundError::EqualExpectations(bj[0]));
    }
    let bound = (delta_comm * b.norm + sj[0] + sj[1]) / gap * a.norm;
    let measured = expect(theta0, &(a.apply)(theta1)).norm();
    Ok(DecoherenceEstimate {
        bound,
        measured,
        delta_comm,
        b: bj,
        sigma: sj,
        satisfied: measured <= bound + tol,
    })
}

/// Dense version: `δ = ‖[A,B]‖/(‖A‖‖B‖)` is computed. A caller-supplied
/// `delta_comm` is verified instead.
pub fn decoherence_estimate(
    theta0: &[C64],
    theta1: &[C64],
    a: &HermitianOp,
    b: &HermitianOp,
    delta_comm: Option<f64>,
    tol: f64,
) -> Result<DecoherenceEstimate, BoundError> {
    let na = a.op_norm()?;
    let nb = b.op_norm()?;
    let comm = op_norm(&commutator(a, b)?);
    let computed = if na * nb > 0.0 { comm / (na * nb) } else { 0.0 };
    let delta = match delta_comm {
        Some(d) => {
            let allowed = d * na * nb;
            if comm > allowed + 1e-10 * (1.0 + na * nb) {
                return Err(BoundError::CommutatorTooLarge { found: comm, allowed });
            }
            d
        }
        None => computed,
    };
    let am = a.matrix();
    let bm = b.matrix();
    let fa = |v: &[C64]| am.apply(v);
    let fb = |v: &[C64]| bm.apply(v);
    decoherence_estimate_with(
        theta0,
        theta1,
        &OperatorAction { apply: &fa, norm: na },
        &OperatorAction { apply: &fb, norm: nb },
        delta,
        tol,
    )
}

/// The sharp qubit family on qubit ⊗ two-outcome register with unbiased
/// pointer `(δ₊ − δ₋)/(1−2p)`.
pub fn sharp_family(p: f64) -> Result<(KrausChannel, HermitianOp), BoundError> {
    if !(0.0..0.5).contains(&p) {
        return Err(BoundError::OutOfRange(format!("p = {p} outside [0, 1/2)")));
    }
    let vp = ComplexMatrix::from_real_diag(&[(1.0 - p).sqrt(), p.sqrt()]);
    let vm = ComplexMatrix::from_real_diag(&[p.sqrt(), (1.0 - p).sqrt()]);
    let t = KrausChannel::from_instrument(&[vec![vp], vec![vm]])?;
    let s = 1.0 / (1.0 - 2.0 * p);
    Ok((t, HermitianOp::from_real_diag(&[s, -s])))
}

/// All four sharp-family checks at one `p`: Heisenberg, info-disturbance,
/// collapse and nondestructive collapse. `δ` uses the outcome labels ±1.
pub fn sharp_family_checks(p: f64, tol: f64) -> Result<Vec<BoundCheck>, BoundError> {
    let (t, b) = sharp_family(p)?;
    let labels = HermitianOp::from_real_diag(&[1.0, -1.0]);
    let sz = HermitianOp::from_real_diag(&[1.0, -1.0]);
    let r = t.restrict_to_system(2)?;
    let dist = max_disturbance(&r)?;
    let info = measurement_infidelity_pointer(&t, &sz, &labels)?;
    let lifted = lift_ancilla(t.out_dim(), &b)?;
    let sigma = max_added_variance(&t, &lifted)?.sqrt();
    let dc = distance_to_center(&t.pointer_image(&b)?)?;
    Ok(vec![
        heisenberg_from_values(sigma, dc, dist, tol)?,
        info_disturbance_check(info, dist, tol),
        collapse_check(&t, &b, &basis(2, 0), &basis(2, 1), 1.0, -1.0, tol)?,
        nondestructive_collapse_check(&t, &sz, &labels, tol)?,
    ])
}
