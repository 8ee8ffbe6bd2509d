//! The mode transforms `I_n(ω) = ∫dτ exp(iω̂z e^{-aτ}) e^{iωτ} e^{-naτ}`
//! and the thermal spectrum built from `I_0`.

use core::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::gamma_complex;
use super::params::PhysParams;
use super::quadrature::{integrate, QuadConfig};
use crate::error::SpectraError;

fn check_frequency(omega: f64) -> Result<(), SpectraError> {
    if omega == 0.0 {
        return Err(SpectraError::ZeroFrequency);
    }
    if !omega.is_finite() {
        return Err(SpectraError::InvalidParameter {
            name: "omega",
            value: omega,
        });
    }
    Ok(())
}

/// `I_0` at a complex frequency:
/// `(1/a)·β^{iΩ/a}·Γ(-iΩ/a)·e^{πΩ/2a}` with `β = ω̂z` and the principal
/// branch of `β^{iΩ/a}`.
pub fn transform_at(big_omega: Complex64, params: &PhysParams) -> Result<Complex64, SpectraError> {
    params.validate()?;
    let a = params.a;
    let i = Complex64::i();
    let y = big_omega / a;
    let power = (i * y * libm::log(params.beta())).exp();
    let gamma = gamma_complex(-i * y)?;
    let damping = (y * (PI / 2.0)).exp();
    Ok(power * gamma * damping / a)
}

/// `I_n(ω) = I_0(ω + i·n·a)`.
pub fn base_transform(n: u32, omega: f64, params: &PhysParams) -> Result<Complex64, SpectraError> {
    check_frequency(omega)?;
    transform_at(Complex64::new(omega, f64::from(n) * params.a), params)
}

/// `ωP(-ω) = (2π/a)/(e^{2πω/a} - 1)`.
pub fn power_spectrum_base(omega: f64, params: &PhysParams) -> Result<f64, SpectraError> {
    params.validate()?;
    check_frequency(omega)?;
    if omega < 0.0 {
        return Err(SpectraError::NonPositiveFrequency(omega));
    }
    let x = 2.0 * PI * omega / params.a;
    Ok((2.0 * PI / params.a) / libm::expm1(x))
}

/// Independent numerical evaluation of `I_n` for `n ≥ 1`.
///
/// With `u = e^{-aτ}` the transform is `(1/a)∫₀^∞ u^{s-1} e^{iβu} du`,
/// `s = n - iω/a`. Rotating `u = i·t` gives `(i^s/a)∫₀^∞ t^{s-1} e^{-βt} dt`,
/// which is integrated over `x = ln t`.
pub fn quadrature_oracle(
    n: u32,
    omega: f64,
    params: &PhysParams,
    config: &QuadConfig,
) -> Result<Complex64, SpectraError> {
    if n == 0 {
        return Err(SpectraError::OracleOrder(n));
    }
    params.validate()?;
    check_frequency(omega)?;
    let a = params.a;
    let beta = params.beta();
    let s = Complex64::new(f64::from(n), -omega / a);
    // t^n < 1e-17 below, e^{-βt} < e^{-750} above
    let x_lo = -40.0 / f64::from(n) + libm::log(f64::from(n) / beta).min(0.0);
    let x_hi = libm::log(750.0 / beta);
    let integrand = |x: f64| (s * x - beta * libm::exp(x)).exp();
    let r = integrate(integrand, x_lo, x_hi, config)?;
    let rotation = (Complex64::i() * (PI / 2.0) * s).exp();
    Ok(rotation * r.value / a)
}

/// `I_0` from the oracle through the boundary-term-free integration by
/// parts `I_0 = (aβ/ω)·I_1`.
pub fn quadrature_oracle_zero(omega: f64, params: &PhysParams, config: &QuadConfig) -> Result<Complex64, SpectraError> {
    let i1 = quadrature_oracle(1, omega, params, config)?;
    Ok(i1 * (params.a * params.beta() / omega))
}
