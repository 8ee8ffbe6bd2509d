//! Thermal spectrum of a uniformly accelerated detector and its first-order
//! twist corrections.

mod gamma;
mod mode;
mod params;
mod quadrature;
mod transform;
mod twisted;

pub use gamma::{gamma_complex, gamma_real};
pub use mode::{apply_twist_to_mode, twisted_integrand, Dressed, ModeSum, ModeTerm, Wave};
pub use params::PhysParams;
pub use quadrature::{integrate, QuadConfig, QuadResult};
pub use transform::{base_transform, power_spectrum_base, quadrature_oracle, quadrature_oracle_zero, transform_at};
pub use twisted::{
    correction_closed_form, correction_constant, reference_correction, twisted_power_spectrum, twisted_transform,
    SpectrumPoint, SpectrumSeries, TwistedMode, TwistedTransform,
};
