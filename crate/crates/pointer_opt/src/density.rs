use serde::Serialize;

use crate::error::PointerError;
use crate::special::SQRT_2PI;

/// `β_t = √(1 − e^{−t})`; `t = ∞` gives 1.
pub fn beta_t(t: f64) -> Result<f64, PointerError> {
    if !(t > 0.0) {
        return Err(PointerError::NonPositive { name: "t", value: t });
    }
    Ok((-(-t).exp_m1()).sqrt())
}

/// Operator-valued density of the weighted path endpoint, written as
/// `identity·1 + sigma_x·σx + raise_lower·σ₊σ₋` with `σ₊σ₋ = diag(1,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityCoefficients {
    pub identity: f64,
    pub sigma_x: f64,
    pub raise_lower: f64,
}

impl DensityCoefficients {
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [
            [self.identity + self.raise_lower, self.sigma_x],
            [self.sigma_x, self.identity],
        ]
    }

    /// Scalar density `tr(ρ p(y))` for a state with Bloch vector `r`.
    pub fn expect(&self, r: [f64; 3]) -> f64 {
        self.identity + self.sigma_x * r[0] + self.raise_lower * 0.5 * (r[2] + 1.0)
    }
}

pub(crate) fn gauss(y: f64) -> f64 {
    (-0.5 * y * y).exp() / SQRT_2PI
}

pub fn density_p(y: f64, t: f64) -> Result<DensityCoefficients, PointerError> {
    let b = beta_t(t)?;
    let g = gauss(y);
    Ok(DensityCoefficients {
        identity: g,
        sigma_x: g * b * y,
        raise_lower: g * b * b * (y * y - 1.0),
    })
}

pub(crate) fn check_bloch(r: [f64; 3]) -> Result<(), PointerError> {
    let n2 = r.iter().map(|v| v * v).sum::<f64>();
    if !r.iter().all(|v| v.is_finite()) || n2 > 1.0 + 1e-12 {
        return Err(PointerError::InvalidBloch(r));
    }
    Ok(())
}

/// `q(y) = tr(ρ p(y))`
pub fn density_q(y: f64, t: f64, bloch: [f64; 3]) -> Result<f64, PointerError> {
    check_bloch(bloch)?;
    Ok(density_p(y, t)?.expect(bloch))
}

pub(crate) fn q_with_beta(y: f64, b: f64, r: [f64; 3]) -> f64 {
    gauss(y) * (1.0 + b * y * r[0] + b * b * (y * y - 1.0) * 0.5 * (r[2] + 1.0))
}
