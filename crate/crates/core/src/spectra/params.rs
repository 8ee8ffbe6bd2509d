use core::f64::consts::PI;

use crate::error::SpectraError;
use crate::symbolic::DeformValues;

/// Physical inputs of a spectrum evaluation (units ħ = c = k = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    /// Proper acceleration `a > 0`.
    pub a: f64,
    /// Source frequency `ω̂ > 0`.
    pub omega_hat: f64,
    /// Detector coordinate `z = z₁ > 0`.
    pub z: f64,
    pub z2: f64,
    pub z3: f64,
    pub deform: DeformValues,
}

impl Default for PhysParams {
    fn default() -> Self {
        PhysParams {
            a: 1.0,
            omega_hat: 1.0,
            z: 1.0,
            z2: 1.0,
            z3: 1.0,
            deform: DeformValues::zero(),
        }
    }
}

impl PhysParams {
    pub fn new(a: f64, omega_hat: f64, z: f64) -> Result<Self, SpectraError> {
        let p = PhysParams {
            a,
            omega_hat,
            z,
            ..Self::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_transverse(mut self, z2: f64, z3: f64) -> Self {
        self.z2 = z2;
        self.z3 = z3;
        self
    }

    pub fn with_deform(mut self, deform: DeformValues) -> Self {
        self.deform = deform;
        self
    }

    pub fn validate(&self) -> Result<(), SpectraError> {
        let positive = [("a", self.a), ("omega_hat", self.omega_hat), ("z", self.z)];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(SpectraError::InvalidParameter { name, value });
            }
        }
        for (name, value) in [("z2", self.z2), ("z3", self.z3)] {
            if !value.is_finite() {
                return Err(SpectraError::InvalidParameter { name, value });
            }
        }
        for v in self.deform.0 {
            if !v.is_finite() {
                return Err(SpectraError::InvalidParameter {
                    name: "deformation",
                    value: v,
                });
            }
        }
        Ok(())
    }

    /// Unruh temperature `T = a/2π`.
    pub fn temperature(&self) -> f64 {
        self.a / (2.0 * PI)
    }

    /// `β = ω̂·z`, the scale of the mode exponent.
    pub fn beta(&self) -> f64 {
        self.omega_hat * self.z
    }
}
