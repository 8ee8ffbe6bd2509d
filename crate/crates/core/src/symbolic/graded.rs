use alloc::collections::BTreeMap;
use core::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::scalar::{to_complex64, Scalar};
use crate::error::SymbolicError;

pub const SYMBOL_COUNT: usize = 9;

/// A formal deformation parameter of grading degree one.
///
/// `Theta(mu, nu)` always has `mu < nu`; use [`DeformSymbol::signed_theta`]
/// to obtain `θ_{νμ} = -θ_{μν}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeformSymbol {
    Theta(u8, u8),
    InvKappa,
    InvKappaHat,
    InvKappaBar,
}

const THETA_PAIRS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl DeformSymbol {
    pub fn theta(mu: u8, nu: u8) -> Result<Self, SymbolicError> {
        if mu < nu && nu <= 3 {
            Ok(DeformSymbol::Theta(mu, nu))
        } else {
            Err(SymbolicError::ThetaIndices(mu, nu))
        }
    }

    /// `θ_{μν}` for any `μ ≠ ν`, returned as a sign times the canonical symbol.
    pub fn signed_theta(mu: u8, nu: u8) -> Result<(i128, Self), SymbolicError> {
        if mu < nu {
            Ok((1, Self::theta(mu, nu)?))
        } else if nu < mu {
            Ok((-1, Self::theta(nu, mu)?))
        } else {
            Err(SymbolicError::ThetaIndices(mu, nu))
        }
    }

    pub fn all() -> [DeformSymbol; SYMBOL_COUNT] {
        core::array::from_fn(Self::from_index)
    }

    pub fn index(self) -> usize {
        match self {
            DeformSymbol::Theta(mu, nu) => THETA_PAIRS
                .iter()
                .position(|&p| p == (mu, nu))
                .expect("canonical theta indices"),
            DeformSymbol::InvKappa => 6,
            DeformSymbol::InvKappaHat => 7,
            DeformSymbol::InvKappaBar => 8,
        }
    }

    pub fn from_index(idx: usize) -> Self {
        match idx {
            0..=5 => {
                let (mu, nu) = THETA_PAIRS[idx];
                DeformSymbol::Theta(mu, nu)
            }
            6 => DeformSymbol::InvKappa,
            7 => DeformSymbol::InvKappaHat,
            8 => DeformSymbol::InvKappaBar,
            _ => panic!("deformation symbol index {idx} out of range"),
        }
    }

    pub fn is_theta(self) -> bool {
        matches!(self, DeformSymbol::Theta(..))
    }

    pub fn is_kappa_type(self) -> bool {
        !self.is_theta()
    }

    /// Machine-readable name: `theta01`, `inv_kappa`, `inv_kappa_hat`, `inv_kappa_bar`.
    pub fn ascii_name(self) -> &'static str {
        const NAMES: [&str; SYMBOL_COUNT] = [
            "theta01",
            "theta02",
            "theta03",
            "theta12",
            "theta13",
            "theta23",
            "inv_kappa",
            "inv_kappa_hat",
            "inv_kappa_bar",
        ];
        NAMES[self.index()]
    }

    pub fn pretty_name(self) -> &'static str {
        const NAMES: [&str; SYMBOL_COUNT] = ["θ₀₁", "θ₀₂", "θ₀₃", "θ₁₂", "θ₁₃", "θ₂₃", "κ⁻¹", "κ̂⁻¹", "κ̄⁻¹"];
        NAMES[self.index()]
    }

    pub fn from_ascii_name(name: &str) -> Option<Self> {
        Self::all().into_iter().find(|s| s.ascii_name() == name)
    }
}

impl fmt::Display for DeformSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ascii_name())
    }
}

/// Exponent vector over the nine deformation symbols.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree(pub [u8; SYMBOL_COUNT]);

impl Multidegree {
    pub const ZERO: Multidegree = Multidegree([0; SYMBOL_COUNT]);

    pub fn of(symbol: DeformSymbol) -> Self {
        let mut d = [0; SYMBOL_COUNT];
        d[symbol.index()] = 1;
        Multidegree(d)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn degree_of(&self, symbol: DeformSymbol) -> u8 {
        self.0[symbol.index()]
    }

    pub fn combine(&self, other: &Multidegree) -> Multidegree {
        Multidegree(core::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// Symbols with nonzero exponent, in canonical order.
    pub fn factors(&self) -> impl Iterator<Item = (DeformSymbol, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (DeformSymbol::from_index(i), e))
    }

    pub fn involves(&self, pred: impl Fn(DeformSymbol) -> bool) -> bool {
        self.factors().any(|(s, _)| pred(s))
    }
}

/// Numeric values substituted for the deformation symbols.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DeformValues(pub [f64; SYMBOL_COUNT]);

impl DeformValues {
    pub fn zero() -> Self {
        DeformValues([0.0; SYMBOL_COUNT])
    }

    pub fn with(mut self, symbol: DeformSymbol, value: f64) -> Self {
        self.0[symbol.index()] = value;
        self
    }

    pub fn set(&mut self, symbol: DeformSymbol, value: f64) {
        self.0[symbol.index()] = value;
    }

    pub fn get(&self, symbol: DeformSymbol) -> f64 {
        self.0[symbol.index()]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        DeformValues(self.0.map(|v| v * factor))
    }

    pub fn monomial(&self, degree: &Multidegree) -> f64 {
        degree.factors().map(|(s, e)| powi(self.get(s), i32::from(e))).product()
    }
}

pub(crate) fn powi(x: f64, n: i32) -> f64 {
    let mut acc = 1.0;
    let base = if n < 0 { 1.0 / x } else { x };
    for _ in 0..n.unsigned_abs() {
        acc *= base;
    }
    acc
}

/// Truncated polynomial in the deformation symbols with Gaussian-rational
/// coefficients. Terms of total degree above `order` are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedCoeff {
    order: u32,
    terms: BTreeMap<Multidegree, Scalar>,
}

impl GradedCoeff {
    pub fn zero(order: u32) -> Self {
        GradedCoeff {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(order: u32, value: Scalar) -> Self {
        let mut c = Self::zero(order);
        c.add_term(Multidegree::ZERO, value);
        c
    }

    pub fn symbol(order: u32, symbol: DeformSymbol, weight: Scalar) -> Self {
        let mut c = Self::zero(order);
        c.add_term(Multidegree::of(symbol), weight);
        c
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multidegree, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest total degree present; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Multidegree::total).min()
    }

    pub(crate) fn add_term(&mut self, degree: Multidegree, value: Scalar) {
        if degree.total() > self.order || value.is_zero() {
            return;
        }
        let slot = self.terms.entry(degree).or_insert_with(Scalar::zero);
        *slot += value;
        if slot.is_zero() {
            self.terms.remove(&degree);
        }
    }

    fn check(&self, other: &Self) -> Result<(), SymbolicError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(SymbolicError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.check(other)?;
        let mut out = self.clone();
        for (d, v) in &other.terms {
            out.add_term(*d, *v);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.check(other)?;
        let mut out = Self::zero(self.order);
        for (d1, v1) in &self.terms {
            for (d2, v2) in &other.terms {
                out.add_term(d1.combine(d2), v1 * v2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(self.order);
        for (d, v) in &self.terms {
            out.add_term(*d, v * factor);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::new(
            -num_rational::Ratio::from_integer(1),
            num_rational::Ratio::from_integer(0),
        ))
    }

    pub fn eval(&self, values: &DeformValues) -> Complex64 {
        self.terms
            .iter()
            .map(|(d, v)| to_complex64(v) * values.monomial(d))
            .sum()
    }
}
