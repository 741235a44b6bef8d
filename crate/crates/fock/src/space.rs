use num_complex::Complex64;
use qmat::{ComplexMatrix, DensityMatrix, HermitianOp, C64};

use crate::error::FockError;

/// Default bound on the probability mass lost to truncation.
pub const DEFAULT_TAIL: f64 = 1e-12;

/// Span of `|0>, …, |n_max>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    n_max: usize,
}

impl FockSpace {
    pub fn new(n_max: usize) -> Result<Self, FockError> {
        if n_max < 1 {
            return Err(FockError::TooSmall);
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// `a|n> = √n |n−1>`
    pub fn annihilation(&self) -> ComplexMatrix {
        let d = self.dim();
        ComplexMatrix::from_fn(d, d, |i, j| {
            if j == i + 1 {
                C64::new((j as f64).sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn number(&self) -> HermitianOp {
        HermitianOp::from_real_diag(&(0..self.dim()).map(|k| k as f64).collect::<Vec<_>>())
    }

    /// `x = (a + a†)/√2`, `p = (a − a†)/(i√2)`, truncated.
    pub fn quadratures(&self) -> (HermitianOp, HermitianOp) {
        let a = self.annihilation();
        let ad = a.adjoint();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x = (&a + &ad).scale_re(s);
        let p = (&a - &ad).scale(C64::new(0.0, -s));
        (
            HermitianOp::new(x).expect("hermitian by construction"),
            HermitianOp::new(p).expect("hermitian by construction"),
        )
    }

    /// Compressions of `x²` and `p²` of the untruncated oscillator. These
    /// differ from the squares of the truncated quadratures on the top level.
    pub fn quadrature_squares(&self) -> (HermitianOp, HermitianOp) {
        let d = self.dim();
        let entry = |i: usize, j: usize, sign: f64| -> f64 {
            if i == j {
                i as f64 + 0.5
            } else if j == i + 2 {
                sign * 0.5 * ((j * (j - 1)) as f64).sqrt()
            } else if i == j + 2 {
                sign * 0.5 * ((i * (i - 1)) as f64).sqrt()
            } else {
                0.0
            }
        };
        let x2 = ComplexMatrix::from_fn(d, d, |i, j| C64::new(entry(i, j, 1.0), 0.0));
        let p2 = ComplexMatrix::from_fn(d, d, |i, j| C64::new(entry(i, j, -1.0), 0.0));
        (
            HermitianOp::new(x2).expect("real symmetric"),
            HermitianOp::new(p2).expect("real symmetric"),
        )
    }

    pub fn vacuum(&self) -> Vec<C64> {
        qmat::basis(self.dim(), 0)
    }
}

/// Smallest `n_max` whose coherent tail at amplitude `|z|` is at most `tail`.
pub fn min_levels_for(r: f64, tail: f64) -> usize {
    let mut n = 1;
    while poisson_tail(r * r, n) > tail {
        n += 1;
    }
    n
}

/// `P(K > n)` for `K ~ Poisson(λ)`, summed directly from the tail.
fn poisson_tail(lambda: f64, n: usize) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    // log of the first tail term e^{−λ} λ^{n+1}/(n+1)!
    let mut log_term = -lambda;
    for k in 1..=n + 1 {
        log_term += lambda.ln() - (k as f64).ln();
    }
    let mut term = log_term.exp();
    let mut sum = 0.0;
    let mut k = n + 1;
    while term > 1e-300 && (term > sum * 1e-17 || (k as f64) < lambda) {
        sum += term;
        k += 1;
        term *= lambda / k as f64;
        if k > n + 100_000 {
            break;
        }
    }
    sum
}

/// Truncated coherent vector with coefficients `e^{−|z|²/2} z^k/√k!`.
#[derive(Debug, Clone)]
pub struct CoherentVector {
    pub z: C64,
    pub tail: f64,
    coeffs: Vec<C64>,
}

impl CoherentVector {
    pub fn new(z: C64, space: FockSpace) -> Result<Self, FockError> {
        Self::with_tail(z, space, DEFAULT_TAIL)
    }

    pub fn with_tail(z: C64, space: FockSpace, limit: f64) -> Result<Self, FockError> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(FockError::OutOfRange(format!("amplitude {z}")));
        }
        let tail = poisson_tail(z.norm_sqr(), space.n_max());
        if tail > limit {
            return Err(FockError::Tail { tail, n_max: space.n_max(), limit });
        }
        let mut coeffs = Vec::with_capacity(space.dim());
        let mut c = Complex64::new((-z.norm_sqr() / 2.0).exp(), 0.0);
        for k in 0..space.dim() {
            if k > 0 {
                c = c * z / (k as f64).sqrt();
            }
            coeffs.push(c);
        }
        Ok(Self { z, tail, coeffs })
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.coeffs
    }
}

/// `<α|β> = exp(−(|α|²+|β|²)/2 + ᾱβ)`
pub fn coherent_overlap(alpha: C64, beta: C64) -> C64 {
    (-(alpha.norm_sqr() + beta.norm_sqr()) / 2.0 + alpha.conj() * beta).exp()
}

/// `(1−p) Σ p^k |k><k|`, truncated and renormalized.
#[derive(Debug, Clone)]
pub struct ThermalState {
    pub p: f64,
    pub tail: f64,
    state: DensityMatrix,
}

impl ThermalState {
    pub fn new(p: f64, space: FockSpace) -> Result<Self, FockError> {
        if !(0.0..1.0).contains(&p) {
            return Err(FockError::OutOfRange(format!("p = {p} outside [0, 1)")));
        }
        let tail = p.powi(space.dim() as i32);
        if tail > DEFAULT_TAIL {
            return Err(FockError::Tail { tail, n_max: space.n_max(), limit: DEFAULT_TAIL });
        }
        let diag: Vec<f64> = (0..space.dim()).map(|k| (1.0 - p) * p.powi(k as i32)).collect();
        let state = DensityMatrix::renormalized(ComplexMatrix::from_real_diag(&diag))?;
        Ok(Self { p, tail, state })
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    /// Mean photon number `p/(1−p)` of the untruncated state.
    pub fn mean_number(&self) -> f64 {
        self.p / (1.0 - self.p)
    }
}
