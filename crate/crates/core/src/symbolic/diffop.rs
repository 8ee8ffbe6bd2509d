use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::expr::{Chart, Expr, Monomial};
use super::graded::Multidegree;
use super::render::{derivative_factors, join_terms, Style};
use super::scalar::{int, Scalar};
use crate::error::SymbolicError;

/// Exponents of `∂_{z0} ∂_{z1} ∂_{z2} ∂_{z3}`.
pub type MultiIndex = [u8; 4];

/// Linear differential operator `Σ c_α(z) ∂^α` with coefficients to the left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    chart: Chart,
    order: u32,
    terms: BTreeMap<MultiIndex, Expr>,
}

fn binomial(n: u8, k: u8) -> i128 {
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * i128::from(n - j) / i128::from(j + 1);
    }
    acc
}

/// All `γ ≤ α` together with the multi-index binomial `C(α, γ)`.
fn sub_indices(alpha: &MultiIndex) -> Vec<(MultiIndex, i128)> {
    let mut out = alloc::vec![([0u8; 4], 1i128)];
    for var in 0..4 {
        let mut next = Vec::with_capacity(out.len() * (usize::from(alpha[var]) + 1));
        for (gamma, c) in &out {
            for k in 0..=alpha[var] {
                let mut g = *gamma;
                g[var] = k;
                next.push((g, c * binomial(alpha[var], k)));
            }
        }
        out = next;
    }
    out
}

impl DiffOp {
    pub fn zero(chart: Chart, order: u32) -> Self {
        DiffOp {
            chart,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(chart: Chart, order: u32) -> Self {
        Self::from_term(Expr::one(chart, order), [0; 4])
    }

    /// `∂/∂z_var`.
    pub fn partial(chart: Chart, order: u32, var: usize) -> Result<Self, SymbolicError> {
        if var > 3 {
            return Err(SymbolicError::CoordinateIndex(var));
        }
        let mut alpha = [0; 4];
        alpha[var] = 1;
        Ok(Self::from_term(Expr::one(chart, order), alpha))
    }

    pub fn from_term(coeff: Expr, alpha: MultiIndex) -> Self {
        let mut op = Self::zero(coeff.chart(), coeff.order());
        op.push(alpha, coeff);
        op
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Expr)> {
        self.terms.iter()
    }

    /// Coefficient of `∂^alpha` (zero when absent).
    pub fn coefficient(&self, alpha: &MultiIndex) -> Expr {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| Expr::zero(self.chart, self.order))
    }

    /// Highest derivative order present.
    pub fn max_order(&self) -> u32 {
        self.terms
            .keys()
            .map(|a| a.iter().map(|&k| u32::from(k)).sum())
            .max()
            .unwrap_or(0)
    }

    /// True when every term is a single first derivative (a vector field).
    pub fn is_vector_field(&self) -> bool {
        self.terms
            .keys()
            .all(|a| a.iter().map(|&k| u32::from(k)).sum::<u32>() == 1)
    }

    /// Flattened `(value, symbols, monomial, ∂^α)` terms.
    pub fn flat_terms(&self) -> impl Iterator<Item = (Scalar, Multidegree, Monomial, MultiIndex)> + '_ {
        self.terms
            .iter()
            .flat_map(|(alpha, c)| c.terms().map(move |(m, d, v)| (*v, *d, *m, *alpha)))
    }

    fn push(&mut self, alpha: MultiIndex, coeff: Expr) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&alpha) {
            Some(existing) => {
                let sum = &existing + &coeff;
                if !sum.is_zero() {
                    self.terms.insert(alpha, sum);
                }
            }
            None => {
                self.terms.insert(alpha, coeff);
            }
        }
    }

    fn check_expr(&self, e: &Expr) -> Result<(), SymbolicError> {
        if self.chart != e.chart() {
            return Err(SymbolicError::ChartMismatch(self.chart, e.chart()));
        }
        if self.order != e.order() {
            return Err(SymbolicError::OrderMismatch(self.order, e.order()));
        }
        Ok(())
    }

    fn check(&self, other: &DiffOp) -> Result<(), SymbolicError> {
        if self.chart != other.chart {
            return Err(SymbolicError::ChartMismatch(self.chart, other.chart));
        }
        if self.order != other.order {
            return Err(SymbolicError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DiffOp) -> Result<DiffOp, SymbolicError> {
        self.check(other)?;
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            out.push(*alpha, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DiffOp) -> Result<DiffOp, SymbolicError> {
        self.check(other)?;
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            out.push(*alpha, -c);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Scalar) -> DiffOp {
        let mut out = Self::zero(self.chart, self.order);
        for (alpha, c) in &self.terms {
            out.push(*alpha, c.scale(factor));
        }
        out
    }

    /// `f · D`, the coefficient multiplied on the left.
    pub fn left_mul(&self, f: &Expr) -> Result<DiffOp, SymbolicError> {
        self.check_expr(f)?;
        let mut out = Self::zero(self.chart, self.order);
        for (alpha, c) in &self.terms {
            out.push(*alpha, f * c);
        }
        Ok(out)
    }

    /// `D ▷ f`.
    pub fn apply(&self, f: &Expr) -> Result<Expr, SymbolicError> {
        self.check_expr(f)?;
        let mut out = Expr::zero(self.chart, self.order);
        for (alpha, c) in &self.terms {
            let df = f.diff_multi(alpha);
            if !df.is_zero() {
                out = &out + &(c * &df);
            }
        }
        Ok(out)
    }

    /// `self ∘ other`, normal-ordered by the Leibniz rule.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp, SymbolicError> {
        self.check(other)?;
        let mut acc: BTreeMap<MultiIndex, Expr> = BTreeMap::new();
        for (alpha, c) in &self.terms {
            let subs = sub_indices(alpha);
            for (beta, d) in &other.terms {
                for (gamma, binom) in &subs {
                    let dd = d.diff_multi(gamma);
                    if dd.is_zero() {
                        continue;
                    }
                    let idx: MultiIndex = core::array::from_fn(|v| alpha[v] - gamma[v] + beta[v]);
                    let term = (c * &dd).scale(&int(*binom));
                    match acc.remove(&idx) {
                        Some(prev) => {
                            acc.insert(idx, &prev + &term);
                        }
                        None => {
                            acc.insert(idx, term);
                        }
                    }
                }
            }
        }
        let mut out = Self::zero(self.chart, self.order);
        for (alpha, c) in acc {
            out.push(alpha, c);
        }
        Ok(out)
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp, SymbolicError> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }

    fn render(&self, style: Style) -> String {
        join_terms(self.terms.iter().map(|(alpha, c)| {
            let d = derivative_factors(alpha, self.chart, style).join(match style {
                Style::Ascii => "*",
                Style::Pretty => "·",
            });
            let t = match style {
                Style::Ascii => "*",
                Style::Pretty => "·",
            };
            let coeff = match style {
                Style::Ascii => c.to_ascii(),
                Style::Pretty => c.to_pretty(),
            };
            if d.is_empty() {
                format!("({coeff})")
            } else if c == &Expr::one(self.chart, self.order) {
                d
            } else {
                format!("({coeff}){t}{d}")
            }
        }))
    }

    pub fn to_ascii(&self) -> String {
        self.render(Style::Ascii)
    }

    pub fn to_pretty(&self) -> String {
        self.render(Style::Pretty)
    }
}

macro_rules! panicking_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&DiffOp> for &DiffOp {
            type Output = DiffOp;

            /// # Panics
            ///
            /// On chart or truncation-order mismatch.
            fn $method(self, rhs: &DiffOp) -> DiffOp {
                self.$checked(rhs).expect("operands share chart and order")
            }
        }
    };
}

panicking_binop!(Add, add, try_add);
panicking_binop!(Sub, sub, try_sub);
panicking_binop!(Mul, mul, compose);

impl Neg for &DiffOp {
    type Output = DiffOp;

    fn neg(self) -> DiffOp {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}
