//! Twisted products of the Rindler mode `φ = exp(iω̂ z₁ e^{-a z₀})` with the
//! Fourier kernel `E = e^{iω z₀}`, kept as polynomials in `ω̂`, `ω` with
//! symbolic coefficients until the very end.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use super::params::PhysParams;
use crate::error::{SpectraError, SymbolicError, TwistError};
use crate::symbolic::{imag, rational, to_complex64, BiOp, Chart, Expr, Monomial, Multidegree, SlotTerm};
use crate::twist::{build_rindler_zfactor, TwistCase};

/// Which wave factor a [`Dressed`] polynomial multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wave {
    /// `φ = exp(iω̂ z₁ e^{-a z₀})`
    Mode,
    /// `E = e^{iω z₀}`
    Kernel,
}

/// `Σ ω̂^p ω^r · expr_{p,r}`, multiplying some product of wave factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dressed {
    order: u32,
    terms: BTreeMap<(u32, u32), Expr>,
}

impl Dressed {
    pub fn zero(order: u32) -> Self {
        Dressed {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_expr(p: u32, r: u32, e: Expr) -> Self {
        let mut d = Self::zero(e.order());
        d.add(p, r, e);
        d
    }

    pub fn one(order: u32) -> Self {
        Self::from_expr(0, 0, Expr::one(Chart::Rindler, order))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Expr)> {
        self.terms.iter()
    }

    fn add(&mut self, p: u32, r: u32, e: Expr) {
        if e.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&(p, r)) {
            Some(old) => old + e,
            None => e,
        };
        if !merged.is_zero() {
            self.terms.insert((p, r), merged);
        }
    }

    pub fn try_add(&self, other: &Dressed) -> Result<Dressed, SymbolicError> {
        let mut out = self.clone();
        for (&(p, r), e) in &other.terms {
            let merged = match out.terms.remove(&(p, r)) {
                Some(old) => old.try_add(e)?,
                None => e.clone(),
            };
            if !merged.is_zero() {
                out.terms.insert((p, r), merged);
            }
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Dressed) -> Result<Dressed, SymbolicError> {
        let mut out = Dressed::zero(self.order);
        for (&(p1, r1), e1) in &self.terms {
            for (&(p2, r2), e2) in &other.terms {
                out.add(p1 + p2, r1 + r2, e1.try_mul(e2)?);
            }
        }
        Ok(out)
    }

    pub fn scale_expr(&self, e: &Expr) -> Result<Dressed, SymbolicError> {
        let mut out = Dressed::zero(self.order);
        for (&(p, r), t) in &self.terms {
            out.add(p, r, t.try_mul(e)?);
        }
        Ok(out)
    }

    /// `∂_var (self · wave) / wave`.
    pub fn derivative(&self, var: usize, wave: Wave) -> Result<Dressed, SymbolicError> {
        let n = self.order;
        let mut out = Dressed::zero(n);
        for (&(p, r), e) in &self.terms {
            out.add(p, r, e.diff(var)?);
        }
        let i = imag(rational(1, 1));
        let shift: Option<(u32, u32, Expr)> = match (wave, var) {
            // ∂_{z1} φ = iω̂ e^{-a z0} φ
            (Wave::Mode, 1) => Some((1, 0, Expr::exp_az0(n, -1).scale(&i))),
            // ∂_{z0} φ = -iω̂ a z1 e^{-a z0} φ
            (Wave::Mode, 0) => {
                let m = Monomial {
                    z: [0, 1, 0, 0],
                    a: 1,
                    exp: -1,
                };
                Some((1, 0, Expr::term(Chart::Rindler, n, m, Multidegree::ZERO, -i)?))
            }
            // ∂_{z0} E = iω E
            (Wave::Kernel, 0) => Some((0, 1, Expr::constant(Chart::Rindler, n, i))),
            _ => None,
        };
        if let Some((dp, dr, factor)) = shift {
            for (&(p, r), e) in &self.terms {
                out.add(p + dp, r + dr, e.try_mul(&factor)?);
            }
        }
        Ok(out)
    }

    fn slot(slot: &SlotTerm, wave: Wave, order: u32) -> Result<Dressed, SymbolicError> {
        let mut d = Dressed::one(order);
        for (var, &count) in slot.deriv.iter().enumerate() {
            for _ in 0..count {
                d = d.derivative(var, wave)?;
            }
        }
        d.scale_expr(&Expr::monomial(Chart::Rindler, order, slot.coeff)?)
    }

    /// `μ∘(op ▷ left ⊗ right)` divided by the product of the two waves.
    pub fn apply_biop(op: &BiOp, left: Wave, right: Wave) -> Result<Dressed, SymbolicError> {
        if op.chart() != Chart::Rindler {
            return Err(SymbolicError::ChartMismatch(op.chart(), Chart::Rindler));
        }
        let n = op.order();
        let mut out = Dressed::zero(n);
        for (slots, degree, value) in op.terms() {
            let l = Self::slot(&slots[0], left, n)?;
            let r = Self::slot(&slots[1], right, n)?;
            let w = Expr::term(Chart::Rindler, n, Monomial::ONE, *degree, *value)?;
            out = out.try_add(&l.try_mul(&r)?.scale_expr(&w)?)?;
        }
        Ok(out)
    }

    /// Evaluate everything except `ω̂`, `ω`, `z₁` and `e^{-aτ}`.
    pub fn to_mode_sum(&self, params: &PhysParams) -> Result<ModeSum, SpectraError> {
        let mut sum = ModeSum::default();
        for (&(p, r), e) in &self.terms {
            for (m, degree, value) in e.terms() {
                if m.z[0] != 0 {
                    return Err(SpectraError::SecularTerm(m.z[0]));
                }
                if m.exp > 0 {
                    return Err(SpectraError::GrowingMode(m.exp));
                }
                let mut c = to_complex64(value) * params.deform.monomial(degree);
                c *= libm::pow(params.a, f64::from(m.a));
                c *= libm::pow(params.z2, f64::from(m.z[2]));
                c *= libm::pow(params.z3, f64::from(m.z[3]));
                sum.push(ModeTerm {
                    coeff: c,
                    p: p as i32,
                    q: m.z[1],
                    r,
                    n: (-m.exp) as u32,
                });
            }
        }
        Ok(sum)
    }
}

/// `coeff · ω̂^p · z^q · ω^r · e^{-naτ}`, multiplying `φ(z,τ)·e^{iωτ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeTerm {
    pub coeff: Complex64,
    pub p: i32,
    pub q: i32,
    pub r: u32,
    pub n: u32,
}

impl ModeTerm {
    /// Everything but the `τ`-integral, at frequency `ω`.
    pub fn prefactor(&self, omega: f64, params: &PhysParams) -> Complex64 {
        self.coeff
            * libm::pow(params.omega_hat, f64::from(self.p))
            * libm::pow(params.z, f64::from(self.q))
            * libm::pow(omega, f64::from(self.r))
    }
}

/// Finite sum of [`ModeTerm`]s, merged by `(p, q, r, n)` and with exact zero
/// coefficients dropped.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModeSum {
    terms: Vec<ModeTerm>,
}

impl ModeSum {
    /// The untwisted integrand `φ·e^{iωτ}`.
    pub fn untwisted() -> Self {
        let mut s = ModeSum::default();
        s.push(ModeTerm {
            coeff: Complex64::new(1.0, 0.0),
            p: 0,
            q: 0,
            r: 0,
            n: 0,
        });
        s
    }

    pub fn push(&mut self, term: ModeTerm) {
        let key = (term.p, term.q, term.r, term.n);
        match self.terms.binary_search_by(|t| (t.p, t.q, t.r, t.n).cmp(&key)) {
            Ok(idx) => {
                self.terms[idx].coeff += term.coeff;
                if self.terms[idx].coeff.is_zero() {
                    self.terms.remove(idx);
                }
            }
            Err(idx) => {
                if !term.coeff.is_zero() {
                    self.terms.insert(idx, term);
                }
            }
        }
    }

    pub fn terms(&self) -> &[ModeTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn merged(&self, other: &ModeSum) -> ModeSum {
        let mut out = self.clone();
        for t in &other.terms {
            out.push(*t);
        }
        out
    }

    /// `∫dτ (Σ terms)·φ·e^{iωτ}`, with `transform(n)` supplying `I_n(ω)`.
    pub fn integrate(
        &self,
        omega: f64,
        params: &PhysParams,
        mut transform: impl FnMut(u32) -> Result<Complex64, SpectraError>,
    ) -> Result<Complex64, SpectraError> {
        let mut total = Complex64::zero();
        for t in &self.terms {
            total += t.prefactor(omega, params) * transform(t.n)?;
        }
        Ok(total)
    }
}

/// First-order twisted integrand split as
/// `(Z⁻¹ - 1)(φ ⊗ E)` and `φE·iω̂·(Z⁻¹ - 1)(z₁ ⊗ e^{-a z₀})`, still symbolic.
pub fn twisted_integrand(case: &TwistCase) -> Result<(Dressed, Dressed), TwistError> {
    let factor = build_rindler_zfactor(case, 1)?;
    let op = factor.inverse.try_sub(&BiOp::identity(Chart::Rindler, 1))?;
    let first = Dressed::apply_biop(&op, Wave::Mode, Wave::Kernel)?;
    let z1 = Expr::coordinate(Chart::Rindler, 1, 1)?;
    let decay = Expr::exp_az0(1, -1);
    let inner = op.apply([&z1, &decay])?.scale(&imag(rational(1, 1)));
    let second = Dressed::from_expr(1, 0, inner);
    Ok((first, second))
}

/// [`twisted_integrand`] evaluated at the physical parameters.
pub fn apply_twist_to_mode(case: &TwistCase, params: &PhysParams) -> Result<(ModeSum, ModeSum), crate::Error> {
    params.validate()?;
    let (first, second) = twisted_integrand(case)?;
    Ok((first.to_mode_sum(params)?, second.to_mode_sum(params)?))
}
