use std::f64::consts::PI;

use crate::error::PointerError;

pub(crate) const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

fn check_eps(eps: f64) -> Result<(), PointerError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(PointerError::NonPositive { name: "ε", value: eps });
    }
    Ok(())
}

/// `∫ e^{−x²/2} / (x²+ε) dx = π √(e^ε/ε) erfc(√(ε/2))`
pub fn i_eps(eps: f64) -> Result<f64, PointerError> {
    check_eps(eps)?;
    // e^{ε/2} erfc(√(ε/2)) overflows/underflows separately for large ε
    let s = (eps / 2.0).sqrt();
    let scaled = if s < 20.0 {
        (eps / 2.0).exp() * erfc(s)
    } else {
        // asymptotic e^{s²} erfc(s) ~ (1/(s√π)) (1 − 1/(2s²) + 3/(4s⁴))
        let s2 = s * s;
        (1.0 - 0.5 / s2 + 0.75 / (s2 * s2) - 1.875 / (s2 * s2 * s2)) / (s * PI.sqrt())
    };
    Ok(PI / eps.sqrt() * scaled)
}

/// `∫ e^{−x²/2} / (x²+ε)² dx`, from the integration-by-parts identity
/// `2εJ − (1−ε)I = √(2π)`.
pub fn j_eps(eps: f64) -> Result<f64, PointerError> {
    let i = i_eps(eps)?;
    Ok((SQRT_2PI + (1.0 - eps) * i) / (2.0 * eps))
}
