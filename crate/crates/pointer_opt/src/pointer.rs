use serde::Serialize;

use crate::density::{beta_t, check_bloch, gauss, q_with_beta};
use crate::error::PointerError;
use crate::quad::integrate;
use crate::special::{i_eps, j_eps, SQRT_2PI};

/// Integration window and tolerance for pointer moments.
pub const QUAD_HALF_WIDTH: f64 = 10.0;
pub const QUAD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    SigmaX,
    SigmaZ,
}

impl Target {
    pub fn matrix(self) -> [[f64; 2]; 2] {
        match self {
            Target::SigmaX => [[0.0, 1.0], [1.0, 0.0]],
            Target::SigmaZ => [[1.0, 0.0], [0.0, -1.0]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointerKind {
    /// `(c1·x + c2)/(x² + eps) + c3`
    Rational { c1: f64, c2: f64, c3: f64, eps: f64 },
    /// `x / β_t`
    Linear,
    /// `d4·x² + d5·x + d6`
    Quadratic { d4: f64, d5: f64, d6: f64 },
}

/// Pointer function applied to the normalized path endpoint at time `t`
/// (`t = ∞` allowed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointerSpec {
    pub kind: PointerKind,
    pub target: Target,
    pub t: f64,
}

impl PointerSpec {
    pub fn new(kind: PointerKind, target: Target, t: f64) -> Result<Self, PointerError> {
        beta_t(t)?;
        let finite = match kind {
            PointerKind::Rational { c1, c2, c3, eps } => {
                if !(eps > 0.0) {
                    return Err(PointerError::NonPositive { name: "ε", value: eps });
                }
                [c1, c2, c3, eps].iter().all(|v| v.is_finite())
            }
            PointerKind::Linear => true,
            PointerKind::Quadratic { d4, d5, d6 } => [d4, d5, d6].iter().all(|v| v.is_finite()),
        };
        if !finite {
            return Err(PointerError::Unsupported("non-finite constant".into()));
        }
        Ok(Self { kind, target, t })
    }

    /// Unbiased linear pointer `y/β_t` for `σx`.
    pub fn linear(t: f64) -> Result<Self, PointerError> {
        Self::new(PointerKind::Linear, Target::SigmaX, t)
    }

    /// Unbiased quadratic pointer `β_t⁻²y² − 1 − β_t⁻²` for `σz`.
    pub fn quadratic(t: f64) -> Result<Self, PointerError> {
        let b2 = beta_t(t)?.powi(2);
        Self::new(
            PointerKind::Quadratic { d4: 1.0 / b2, d5: 0.0, d6: -1.0 - 1.0 / b2 },
            Target::SigmaZ,
            t,
        )
    }

    pub fn beta(&self) -> f64 {
        beta_t(self.t).expect("validated at construction")
    }

    pub fn eval(&self, y: f64) -> f64 {
        match self.kind {
            PointerKind::Rational { c1, c2, c3, eps } => (c1 * y + c2) / (y * y + eps) + c3,
            PointerKind::Linear => y / self.beta(),
            PointerKind::Quadratic { d4, d5, d6 } => (d4 * y + d5) * y + d6,
        }
    }
}

/// Diagonal entries of `M(h²) − M(h)²` and `Σ = √max(d1, d2)`; `d1` is the
/// entry on the excited level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QualityPair {
    pub d1: f64,
    pub d2: f64,
    pub sigma: f64,
}

impl QualityPair {
    fn new(d1: f64, d2: f64) -> Self {
        Self { d1, d2, sigma: d1.max(d2).max(0.0).sqrt() }
    }
}

/// `(Σ², Σ̃²)` of the unweighted path pointers as functions of `t`.
pub fn naive_qualities(t: f64) -> (f64, f64) {
    let e = (-0.5 * t).exp() - 1.0;
    let s2 = t / (2.0 * e).powi(2) + 1.0;
    let st2 = t * t / (8.0 * e.powi(4)) + (2.0 * t - 4.0 * e * e) / (e * e);
    (s2, st2)
}

/// `(Σ_lin², Σ̃_quad²)` of the unbiased linear and quadratic pointers.
pub fn simple_pointer_qualities(t: f64) -> Result<(f64, f64), PointerError> {
    let ib2 = beta_t(t)?.powi(-2);
    Ok((1.0 + ib2, 2.0 * ib2 * ib2 + 8.0 * ib2 - 4.0))
}

/// Closed-form rational pointer for `target` with pole parameter `param`
/// (`ε` for σx, `δ` for σz), together with its `d1`, `d2`.
pub fn d1_d2(target: Target, param: f64, t: f64) -> Result<(PointerSpec, QualityPair), PointerError> {
    let b = beta_t(t)?;
    let i = i_eps(param)?;
    let j = j_eps(param)?;
    let b2 = b * b;
    match target {
        Target::SigmaX => {
            let den = SQRT_2PI - param * i;
            if den.abs() < 1e-12 {
                return Err(PointerError::Singular(den));
            }
            let c1 = SQRT_2PI / (b * den);
            let d2 = c1 * c1 * (i - param * j) / SQRT_2PI - 1.0;
            let d1 = d2
                + c1 * c1 * b2 / SQRT_2PI
                    * (SQRT_2PI - (1.0 + 2.0 * param) * i + param * (1.0 + param) * j);
            let spec = PointerSpec::new(
                PointerKind::Rational { c1, c2: 0.0, c3: 0.0, eps: param },
                target,
                t,
            )?;
            Ok((spec, QualityPair::new(d1, d2)))
        }
        Target::SigmaZ => {
            let den = SQRT_2PI - (1.0 + param) * i;
            if den.abs() < 1e-12 {
                return Err(PointerError::Singular(den));
            }
            let dd2 = 2.0 * SQRT_2PI / (b2 * den);
            let dd3 = -1.0 - dd2 * i / SQRT_2PI;
            let a = (dd2 * dd2 * j + 2.0 * dd2 * dd3 * i) / SQRT_2PI + dd3 * dd3;
            let c = b2 / SQRT_2PI
                * (dd2 * dd2 * (i - (1.0 + param) * j) + 2.0 * dd2 * dd3 * den);
            let spec = PointerSpec::new(
                PointerKind::Rational { c1: 0.0, c2: dd2, c3: dd3, eps: param },
                target,
                t,
            )?;
            Ok((spec, QualityPair::new(a + c - 1.0, a - 1.0)))
        }
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimum of `f` on `[a, b]` down to an interval of `tol`.
pub(crate) fn golden_section<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while (b - a).abs() > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Log-spaced pre-scan, golden section and one parabolic polish step.
pub(crate) fn minimize_scalar<F: Fn(f64) -> Result<f64, PointerError>>(
    f: F,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<f64, PointerError> {
    let ratio = (hi / lo).ln() / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|k| lo * (ratio * k as f64).exp()).collect();
    let vals = grid.iter().map(|&x| f(x)).collect::<Result<Vec<_>, _>>()?;
    let best = vals
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .ok_or_else(|| PointerError::Bracket("no finite value in scan".into()))?;
    if best == 0 || best == points - 1 {
        return Err(PointerError::Bracket(format!(
            "minimum at scan edge {} of [{lo}, {hi}]",
            grid[best]
        )));
    }
    let (a, b) = (grid[best - 1], grid[best + 1]);
    let eval = |x: f64| f(x).unwrap_or(f64::INFINITY);
    let x = golden_section(eval, a, b, 1e-8);
    // parabolic step through x ± h, kept only if it improves
    let h = 1e-5 * x;
    let (fm, f0, fp) = (eval(x - h), eval(x), eval(x + h));
    let curv = fp - 2.0 * f0 + fm;
    if curv > 0.0 {
        let xp = x - 0.5 * h * (fp - fm) / curv;
        if (xp - x).abs() < h && eval(xp) < f0 {
            return Ok(xp);
        }
    }
    Ok(x)
}

/// Minimax-optimal rational pointer for `target` at time `t`.
pub fn optimize_pointer(target: Target, t: f64) -> Result<(PointerSpec, QualityPair), PointerError> {
    let param = minimize_scalar(
        |p| {
            let (_, q) = d1_d2(target, p, t)?;
            Ok(q.d1.max(q.d2))
        },
        0.05,
        10.0,
        200,
    )?;
    d1_d2(target, param, t)
}

/// Location and value of the minima of the two naive qualities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NaiveOptimum {
    pub t_sigma: f64,
    pub sigma2: f64,
    pub t_sigma_tilde: f64,
    pub sigma_tilde2: f64,
    /// `√(Σ²Σ̃²)` evaluated at the respective minima.
    pub product: f64,
}

pub fn naive_optimum() -> Result<NaiveOptimum, PointerError> {
    let t1 = minimize_scalar(|t| Ok(naive_qualities(t).0), 0.1, 50.0, 200)?;
    let t2 = minimize_scalar(|t| Ok(naive_qualities(t).1), 0.1, 50.0, 200)?;
    let s2 = naive_qualities(t1).0;
    let st2 = naive_qualities(t2).1;
    Ok(NaiveOptimum { t_sigma: t1, sigma2: s2, t_sigma_tilde: t2, sigma_tilde2: st2, product: (s2 * st2).sqrt() })
}

fn moment<F: Fn(f64) -> f64>(f: F) -> Result<f64, PointerError> {
    let v = integrate(&f, -QUAD_HALF_WIDTH, QUAD_HALF_WIDTH, QUAD_TOL, 16);
    if !v.is_finite() {
        return Err(PointerError::Divergent("non-finite moment".into()));
    }
    Ok(v)
}

/// `∫ g(y) p(y) dy` as a real symmetric 2×2 matrix.
fn operator_moment<G: Fn(f64) -> f64>(g: G, b: f64) -> Result<[[f64; 2]; 2], PointerError> {
    let id = moment(|y| g(y) * gauss(y))?;
    let sx = b * moment(|y| g(y) * y * gauss(y))?;
    let rl = b * b * moment(|y| g(y) * (y * y - 1.0) * gauss(y))?;
    Ok([[id + rl, sx], [sx, id]])
}

fn sym_norm(m: [[f64; 2]; 2]) -> f64 {
    let mean = 0.5 * (m[0][0] + m[1][1]);
    let r = (0.25 * (m[0][0] - m[1][1]).powi(2) + m[0][1] * m[0][1]).sqrt();
    (mean + r).abs().max((mean - r).abs())
}

/// Residual `∫ h p − target` and its operator norm, by adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Unbiasedness {
    pub residual: [[f64; 2]; 2],
    pub norm: f64,
}

pub fn unbiasedness_check(spec: &PointerSpec) -> Result<Unbiasedness, PointerError> {
    let m = operator_moment(|y| spec.eval(y), spec.beta())?;
    let tgt = spec.target.matrix();
    let mut r = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = m[i][j] - tgt[i][j];
        }
    }
    Ok(Unbiasedness { residual: r, norm: sym_norm(r) })
}

/// `‖M(h²) − target²‖`-type quality from quadrature; valid for unbiased pointers.
pub fn quality_by_quadrature(spec: &PointerSpec) -> Result<QualityPair, PointerError> {
    let b = spec.beta();
    let m1 = operator_moment(|y| spec.eval(y), b)?;
    let m2 = operator_moment(|y| spec.eval(y).powi(2), b)?;
    // M(h²) − M(h)²
    let sq = [
        [m1[0][0] * m1[0][0] + m1[0][1] * m1[1][0], m1[0][0] * m1[0][1] + m1[0][1] * m1[1][1]],
        [m1[1][0] * m1[0][0] + m1[1][1] * m1[1][0], m1[1][0] * m1[0][1] + m1[1][1] * m1[1][1]],
    ];
    let d = [
        [m2[0][0] - sq[0][0], m2[0][1] - sq[0][1]],
        [m2[1][0] - sq[1][0], m2[1][1] - sq[1][1]],
    ];
    Ok(QualityPair { d1: d[0][0], d2: d[1][1], sigma: sym_norm(d).sqrt() })
}

/// Pointer range `[lo, hi]` of a rational pointer of either supported shape.
pub fn pointer_range(spec: &PointerSpec) -> Result<(f64, f64), PointerError> {
    match spec.kind {
        PointerKind::Rational { c1, c2, c3, eps } if c2 == 0.0 && c1 != 0.0 => {
            let half = c1.abs() / (2.0 * eps.sqrt());
            Ok((c3 - half, c3 + half))
        }
        PointerKind::Rational { c1, c2, c3, eps } if c1 == 0.0 && c2 != 0.0 => {
            let ends = (c3 + c2 / eps, c3);
            Ok((ends.0.min(ends.1), ends.0.max(ends.1)))
        }
        _ => Err(PointerError::Unsupported(
            "output densities need an odd (c2 = 0) or even (c1 = 0) rational pointer".into(),
        )),
    }
}

/// Density of `h(Y)` at `x` by summing over the preimages of `x`.
fn density_at(spec: &PointerSpec, b: f64, bloch: [f64; 3], x: f64) -> f64 {
    let PointerKind::Rational { c1, c2, c3, eps } = spec.kind else {
        return 0.0;
    };
    let q = |y: f64| q_with_beta(y, b, bloch);
    if c2 == 0.0 {
        // odd shape: u = x − c3 = c1 y/(y²+ε)
        let u = x - c3;
        let mut disc = c1 * c1 - 4.0 * u * u * eps;
        if disc < 0.0 {
            // rounding at the range edge
            if disc < -1e-12 * c1 * c1 {
                return 0.0;
            }
            disc = 0.0;
        }
        let jac = |y: f64| (y * y + eps).powi(2) / (c1.abs() * (y * y - eps).abs());
        if u == 0.0 {
            return q(0.0) * jac(0.0);
        }
        let root = disc.sqrt();
        let s = c1.signum() * (c1.abs() + root);
        let y_far = s / (2.0 * u);
        let y_near = 2.0 * u * eps / s;
        q(y_far) * jac(y_far) + q(y_near) * jac(y_near)
    } else {
        // even shape: u = x − c3 = c2/(y²+ε)
        let u = x - c3;
        if u == 0.0 || u.signum() != c2.signum() {
            return 0.0;
        }
        let y2 = c2 / u - eps;
        if y2 < 0.0 {
            return 0.0;
        }
        let y = y2.sqrt();
        let jac = (y2 + eps).powi(2) / (2.0 * (c2 * y).abs());
        (q(y) + q(-y)) * jac
    }
}

/// Frobenius–Perron density of the pointer value on `grid` for the input
/// state with Bloch vector `bloch`. Zero outside the pointer range; at a
/// branch point the value is the mean of the two one-sided neighbours.
pub fn output_density(spec: &PointerSpec, bloch: [f64; 3], grid: &[f64]) -> Result<Vec<f64>, PointerError> {
    check_bloch(bloch)?;
    let (lo, hi) = pointer_range(spec)?;
    let b = spec.beta();
    let scale = (hi - lo).max(1.0);
    Ok(grid
        .iter()
        .map(|&x| {
            if x < lo || x > hi {
                return 0.0;
            }
            let v = density_at(spec, b, bloch, x);
            if v.is_finite() {
                v
            } else {
                let h = 1e-9 * scale;
                let side = |z: f64| if z < lo || z > hi { 0.0 } else { density_at(spec, b, bloch, z) };
                0.5 * (side(x - h) + side(x + h))
            }
        })
        .collect())
}
