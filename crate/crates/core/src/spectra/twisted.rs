//! Linearized twisted transform `f^T(ω) = I_0(ω)·(1 + c(ω))` and the
//! corrected thermal spectrum.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::mode::{apply_twist_to_mode, ModeSum};
use super::params::PhysParams;
use super::quadrature::QuadConfig;
use super::transform::{base_transform, power_spectrum_base, quadrature_oracle, quadrature_oracle_zero};
use crate::error::{Error, SpectraError};
use crate::symbolic::DeformSymbol;
use crate::twist::{TwistCase, TwistKind};

fn delta(a: u8, b: u8) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// The constant `K` in `c(ω) = K·ω/(a z²)·(iω/a - 1)`.
///
/// Only generators that see `z₀, z₁` contribute, hence the deltas on the
/// first spatial direction.
pub fn correction_constant(case: &TwistCase, params: &PhysParams) -> f64 {
    let (i, k, l) = case.indices();
    let d = &params.deform;
    let transverse = |j: u8| match j {
        2 => params.z2,
        3 => params.z3,
        _ => params.z,
    };
    let (sign, theta) = case.theta();
    let theta0i = sign as f64 * d.get(theta);
    match case.kind() {
        TwistKind::I => delta(k, 1) * transverse(i) * d.get(DeformSymbol::InvKappa) / 2.0,
        TwistKind::II => {
            let kappa = d.get(DeformSymbol::InvKappaHat) / 2.0;
            delta(i, 1) * theta0i + kappa * (delta(l, 1) * transverse(k) - delta(k, 1) * transverse(l))
        }
        TwistKind::III => delta(i, 1) * theta0i,
    }
}

/// Closed-form correction factor `c(ω) = K·ω/(a z²)·(iω/a - 1)`.
pub fn correction_closed_form(case: &TwistCase, omega: f64, params: &PhysParams) -> Complex64 {
    let k = correction_constant(case, params);
    let a = params.a;
    Complex64::new(-1.0, omega / a) * (k * omega / (a * params.z * params.z))
}

/// The relative spectrum correction in the reference form used next to the
/// thermal factor: `-K·ω/(πT z²)`.
pub fn reference_correction(case: &TwistCase, omega: f64, params: &PhysParams) -> f64 {
    let k = correction_constant(case, params);
    -k * omega / (PI * params.temperature() * params.z * params.z)
}

/// One evaluation of the twisted transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistedTransform {
    pub omega: f64,
    /// `I_0(ω)`
    pub base: Complex64,
    /// `f^T(ω)`
    pub twisted: Complex64,
    /// `c(ω) = f^T/I_0 - 1`
    pub correction: Complex64,
}

/// One grid point of a corrected spectrum. `correction` is `c(-ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub omega: f64,
    pub base: f64,
    pub correction: Complex64,
    pub corrected: f64,
    pub paper_magnitude: f64,
    pub magnitude_rel_dev: f64,
    pub sign_agrees: bool,
    pub oracle_residual: f64,
    /// `2·Re c(-ω)` from the quadrature oracle.
    pub oracle_shift: f64,
}

fn signum(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// The twisted integrand of one case at fixed physical parameters, ready to
/// be evaluated at many frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedMode {
    pub case: TwistCase,
    pub params: PhysParams,
    pub first: ModeSum,
    pub second: ModeSum,
}

impl TwistedMode {
    pub fn new(case: &TwistCase, params: &PhysParams) -> Result<Self, Error> {
        let (first, second) = apply_twist_to_mode(case, params)?;
        Ok(TwistedMode {
            case: *case,
            params: *params,
            first,
            second,
        })
    }

    /// Both pieces as one sum.
    pub fn correction_terms(&self) -> ModeSum {
        self.first.merged(&self.second)
    }

    /// Termwise integration with the closed-form `I_n`.
    pub fn transform(&self, omega: f64) -> Result<TwistedTransform, SpectraError> {
        let p = &self.params;
        let base = base_transform(0, omega, p)?;
        let delta = self
            .correction_terms()
            .integrate(omega, p, |n| base_transform(n, omega, p))?;
        Ok(TwistedTransform {
            omega,
            base,
            twisted: base + delta,
            correction: delta / base,
        })
    }

    /// Termwise integration with every `I_n` from the quadrature oracle.
    pub fn oracle_transform(&self, omega: f64, config: &QuadConfig) -> Result<TwistedTransform, SpectraError> {
        let p = &self.params;
        let base = quadrature_oracle_zero(omega, p, config)?;
        let delta = self.correction_terms().integrate(omega, p, |n| {
            if n == 0 {
                Ok(base)
            } else {
                quadrature_oracle(n, omega, p, config)
            }
        })?;
        Ok(TwistedTransform {
            omega,
            base,
            twisted: base + delta,
            correction: delta / base,
        })
    }

    /// Corrected spectrum at `ω > 0` with the reference-form comparison and the
    /// oracle cross-check.
    pub fn point(&self, omega: f64, config: &QuadConfig) -> Result<SpectrumPoint, SpectraError> {
        let p = &self.params;
        let base = power_spectrum_base(omega, p)?;
        let engine = self.transform(-omega)?;
        let oracle = self.oracle_transform(-omega, config)?;
        let closed_c = correction_closed_form(&self.case, -omega, p);
        let closed = engine.base * (Complex64::new(1.0, 0.0) + closed_c);
        let shift = 2.0 * engine.correction.re;
        let reference = reference_correction(&self.case, omega, p);
        let paper_magnitude = reference.abs();
        let magnitude_rel_dev = if paper_magnitude > 0.0 {
            (shift.abs() - paper_magnitude).abs() / paper_magnitude
        } else {
            shift.abs()
        };
        let oracle_shift = 2.0 * oracle.correction.re;
        Ok(SpectrumPoint {
            omega,
            base,
            correction: engine.correction,
            corrected: base * (1.0 + shift),
            paper_magnitude,
            magnitude_rel_dev,
            sign_agrees: signum(oracle_shift) == signum(reference),
            oracle_residual: (oracle.twisted - closed).norm() / closed.norm(),
            oracle_shift,
        })
    }
}

pub fn twisted_transform(case: &TwistCase, omega: f64, params: &PhysParams) -> Result<TwistedTransform, Error> {
    Ok(TwistedMode::new(case, params)?.transform(omega)?)
}

pub fn twisted_power_spectrum(case: &TwistCase, omega: f64, params: &PhysParams) -> Result<SpectrumPoint, Error> {
    Ok(TwistedMode::new(case, params)?.point(omega, &QuadConfig::default())?)
}

/// Corrected spectrum over a frequency grid, in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries {
    pub case: TwistCase,
    pub params: PhysParams,
    pub points: Vec<SpectrumPoint>,
}

impl SpectrumSeries {
    pub fn compute(case: &TwistCase, grid: &[f64], params: &PhysParams) -> Result<Self, Error> {
        let mode = TwistedMode::new(case, params)?;
        let config = QuadConfig::default();
        let points = grid
            .iter()
            .map(|&w| mode.point(w, &config))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SpectrumSeries {
            case: *case,
            params: *params,
            points,
        })
    }

    /// `n` evenly spaced frequencies on `[lo, hi]`.
    pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => alloc::vec![lo],
            _ => (0..n).map(|j| lo + (hi - lo) * (j as f64) / ((n - 1) as f64)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::DeformValues;

    fn params_with(symbol: DeformSymbol, v: f64) -> PhysParams {
        PhysParams::new(1.3, 0.8, 1.7)
            .unwrap()
            .with_transverse(0.6, -1.4)
            .with_deform(DeformValues::zero().with(symbol, v))
    }

    fn check_case(case: &TwistCase, params: &PhysParams) {
        let mode = TwistedMode::new(case, params).unwrap();
        for &w in &[0.4, -1.1, 2.5] {
            let engine = mode.transform(w).unwrap().correction;
            let closed = correction_closed_form(case, w, params);
            let scale = closed.norm().max(1e-300);
            assert!(
                (engine - closed).norm() <= 1e-12 * scale.max(1.0),
                "{} w={w}: engine {engine} closed {closed} ({:?})",
                case.label(),
                mode.correction_terms()
            );
        }
    }

    #[test]
    fn engine_matches_closed_forms() {
        for case in TwistCase::all() {
            let mut symbols = alloc::vec![case.kappa()];
            symbols.push(case.theta().1);
            for s in symbols {
                check_case(&case, &params_with(s, 0.37));
            }
        }
    }

    #[test]
    fn case_iii_integrand_shape() {
        let case = TwistCase::new(TwistKind::III, 1, 2, 3).unwrap();
        let p = params_with(DeformSymbol::theta(0, 1).unwrap(), 1.0);
        let mode = TwistedMode::new(&case, &p).unwrap();
        // every surviving term decays as e^{-aτ}
        for t in mode.correction_terms().terms() {
            assert_eq!(t.n, 1);
        }
        assert!(!mode.first.is_empty() && !mode.second.is_empty());
    }

    #[test]
    fn zero_deformation_is_untouched() {
        let p = PhysParams::default();
        for case in TwistCase::all() {
            let mode = TwistedMode::new(&case, &p).unwrap();
            assert!(mode.first.is_empty() && mode.second.is_empty());
            let pt = mode.point(1.0, &QuadConfig::default()).unwrap();
            assert_eq!(pt.corrected, pt.base);
            assert!(pt.sign_agrees);
        }
    }

    #[test]
    fn case_i_without_first_direction_vanishes() {
        let case = TwistCase::new(TwistKind::I, 1, 2, 3).unwrap();
        let p = params_with(DeformSymbol::InvKappa, 0.5);
        let mode = TwistedMode::new(&case, &p).unwrap();
        assert!(mode.correction_terms().is_empty());
        assert_eq!(correction_closed_form(&case, 1.0, &p), Complex64::new(0.0, 0.0));
    }
}
