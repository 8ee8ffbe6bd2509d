use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::graded::{powi, DeformSymbol, DeformValues, GradedCoeff, Multidegree};
use super::scalar::{int, rational, real, to_complex64, Scalar};
use crate::error::SymbolicError;

/// Coordinate chart of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chart {
    Minkowski,
    Rindler,
}

impl Chart {
    /// Name of coordinate `idx`: `x0..x3` for Minkowski, `z0..z3` for Rindler.
    pub fn coordinate_name(self, idx: usize) -> &'static str {
        const X: [&str; 4] = ["x0", "x1", "x2", "x3"];
        const Z: [&str; 4] = ["z0", "z1", "z2", "z3"];
        match self {
            Chart::Minkowski => X[idx],
            Chart::Rindler => Z[idx],
        }
    }

    pub fn pretty_coordinate_name(self, idx: usize) -> &'static str {
        const X: [&str; 4] = ["x₀", "x₁", "x₂", "x₃"];
        const Z: [&str; 4] = ["z₀", "z₁", "z₂", "z₃"];
        match self {
            Chart::Minkowski => X[idx],
            Chart::Rindler => Z[idx],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Chart::Minkowski => "minkowski",
            Chart::Rindler => "rindler",
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `z0^p0 z1^p1 z2^p2 z3^p3 · a^q · e^{m a z0}`.
///
/// The derived ordering (powers, then `a`, then `m`) is the canonical term
/// order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub z: [i32; 4],
    pub a: i32,
    pub exp: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        z: [0; 4],
        a: 0,
        exp: 0,
    };

    pub fn coordinate(idx: usize) -> Self {
        let mut m = Self::ONE;
        m.z[idx] = 1;
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            z: core::array::from_fn(|i| self.z[i] + other.z[i]),
            a: self.a + other.a,
            exp: self.exp + other.exp,
        }
    }

    pub fn validate(&self, chart: Chart) -> Result<(), SymbolicError> {
        for (i, &p) in self.z.iter().enumerate() {
            if p < 0 && i != 1 {
                return Err(SymbolicError::NegativePower(i));
            }
        }
        if chart == Chart::Minkowski && (self.a != 0 || self.exp != 0) {
            return Err(SymbolicError::MinkowskiTranscendental);
        }
        Ok(())
    }

    /// `∂_var` of the monomial as a list of `factor · monomial`.
    pub fn diff_terms(&self, var: usize) -> Vec<(i128, Monomial)> {
        let mut out = Vec::with_capacity(2);
        if var == 0 {
            if self.z[0] != 0 {
                let mut m = *self;
                m.z[0] -= 1;
                out.push((i128::from(self.z[0]), m));
            }
            if self.exp != 0 {
                let mut m = *self;
                m.a += 1;
                out.push((i128::from(self.exp), m));
            }
        } else if self.z[var] != 0 {
            let mut m = *self;
            m.z[var] -= 1;
            out.push((i128::from(self.z[var]), m));
        }
        out
    }

    /// Iterated derivative `∂^alpha` as a list of `factor · monomial`.
    pub fn diff_multi(&self, alpha: &[u8; 4]) -> Vec<(i128, Monomial)> {
        let mut current: Vec<(i128, Monomial)> = alloc::vec![(1, *self)];
        for (var, &count) in alpha.iter().enumerate() {
            for _ in 0..count {
                let mut next: BTreeMap<Monomial, i128> = BTreeMap::new();
                for (c, m) in &current {
                    for (d, dm) in m.diff_terms(var) {
                        *next.entry(dm).or_insert(0) += c * d;
                    }
                }
                current = next.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (c, m)).collect();
                if current.is_empty() {
                    return current;
                }
            }
        }
        current
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<f64, SymbolicError> {
        let mut v = 1.0;
        for (i, &p) in self.z.iter().enumerate() {
            if p == 0 {
                continue;
            }
            let x = assignment.z[i];
            if p < 0 && x == 0.0 {
                return Err(SymbolicError::DivisionByZero);
            }
            v *= powi(x, p);
        }
        if self.a != 0 {
            v *= powi(assignment.a, self.a);
        }
        if self.exp != 0 {
            v *= libm::exp(f64::from(self.exp) * assignment.a * assignment.z[0]);
        }
        Ok(v)
    }

    pub fn total_z_degree(&self) -> i32 {
        self.z.iter().sum()
    }
}

/// Numeric values for coordinates, the acceleration and the deformation symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assignment {
    pub z: [f64; 4],
    pub a: f64,
    pub deform: DeformValues,
}

impl Assignment {
    pub fn new(z: [f64; 4], a: f64) -> Self {
        Assignment {
            z,
            a,
            deform: DeformValues::zero(),
        }
    }

    pub fn with_deform(mut self, deform: DeformValues) -> Self {
        self.deform = deform;
        self
    }
}

/// Canonical expression: a sparse sum of `scalar · symbols · monomial`.
///
/// Terms are keyed by `(Monomial, Multidegree)`; zero coefficients are never
/// stored and multidegrees above the truncation order are dropped on entry,
/// so two expressions are equal exactly when their maps are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    chart: Chart,
    order: u32,
    terms: BTreeMap<(Monomial, Multidegree), Scalar>,
}

impl Expr {
    pub fn zero(chart: Chart, order: u32) -> Self {
        Expr {
            chart,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: Chart, order: u32, value: Scalar) -> Self {
        let mut e = Self::zero(chart, order);
        e.push(Monomial::ONE, Multidegree::ZERO, value);
        e
    }

    pub fn one(chart: Chart, order: u32) -> Self {
        Self::constant(chart, order, Scalar::one())
    }

    pub fn integer(chart: Chart, order: u32, n: i128) -> Self {
        Self::constant(chart, order, int(n))
    }

    /// A single validated term.
    pub fn term(
        chart: Chart,
        order: u32,
        monomial: Monomial,
        degree: Multidegree,
        value: Scalar,
    ) -> Result<Self, SymbolicError> {
        monomial.validate(chart)?;
        let mut e = Self::zero(chart, order);
        e.push(monomial, degree, value);
        Ok(e)
    }

    pub fn monomial(chart: Chart, order: u32, monomial: Monomial) -> Result<Self, SymbolicError> {
        Self::term(chart, order, monomial, Multidegree::ZERO, Scalar::one())
    }

    pub fn coordinate(chart: Chart, order: u32, idx: usize) -> Result<Self, SymbolicError> {
        if idx > 3 {
            return Err(SymbolicError::CoordinateIndex(idx));
        }
        Self::monomial(chart, order, Monomial::coordinate(idx))
    }

    /// `z1^power` (the only coordinate that may be inverted).
    pub fn z1_pow(chart: Chart, order: u32, power: i32) -> Self {
        let mut m = Monomial::ONE;
        m.z[1] = power;
        let mut e = Self::zero(chart, order);
        e.push(m, Multidegree::ZERO, Scalar::one());
        e
    }

    /// `a^power`; Rindler only.
    pub fn a_pow(order: u32, power: i32) -> Self {
        let m = Monomial {
            a: power,
            ..Monomial::ONE
        };
        let mut e = Self::zero(Chart::Rindler, order);
        e.push(m, Multidegree::ZERO, Scalar::one());
        e
    }

    /// `e^{m a z0}`; Rindler only.
    pub fn exp_az0(order: u32, multiple: i32) -> Self {
        let m = Monomial {
            exp: multiple,
            ..Monomial::ONE
        };
        let mut e = Self::zero(Chart::Rindler, order);
        e.push(m, Multidegree::ZERO, Scalar::one());
        e
    }

    /// `sinh(a z0) = (e^{a z0} - e^{-a z0}) / 2`.
    pub fn sinh_az0(order: u32) -> Self {
        let half = real(rational(1, 2));
        let mut e = Self::zero(Chart::Rindler, order);
        e.push(
            Monomial {
                exp: 1,
                ..Monomial::ONE
            },
            Multidegree::ZERO,
            half,
        );
        e.push(
            Monomial {
                exp: -1,
                ..Monomial::ONE
            },
            Multidegree::ZERO,
            -half,
        );
        e
    }

    /// `cosh(a z0) = (e^{a z0} + e^{-a z0}) / 2`.
    pub fn cosh_az0(order: u32) -> Self {
        let half = real(rational(1, 2));
        let mut e = Self::zero(Chart::Rindler, order);
        e.push(
            Monomial {
                exp: 1,
                ..Monomial::ONE
            },
            Multidegree::ZERO,
            half,
        );
        e.push(
            Monomial {
                exp: -1,
                ..Monomial::ONE
            },
            Multidegree::ZERO,
            half,
        );
        e
    }

    /// The deformation symbol itself, times `weight`.
    pub fn symbol(chart: Chart, order: u32, symbol: DeformSymbol, weight: Scalar) -> Self {
        let mut e = Self::zero(chart, order);
        e.push(Monomial::ONE, Multidegree::of(symbol), weight);
        e
    }

    pub fn from_graded(chart: Chart, coeff: &GradedCoeff) -> Self {
        let mut e = Self::zero(chart, coeff.order());
        for (d, v) in coeff.terms() {
            e.push(Monomial::ONE, *d, *v);
        }
        e
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Multidegree, &Scalar)> {
        self.terms.iter().map(|((m, d), v)| (m, d, v))
    }

    /// Terms grouped by monomial, each with its graded coefficient.
    pub fn grouped(&self) -> Vec<(Monomial, GradedCoeff)> {
        let mut out: Vec<(Monomial, GradedCoeff)> = Vec::new();
        for ((m, d), v) in &self.terms {
            match out.last_mut() {
                Some((last, coeff)) if last == m => coeff.add_term(*d, *v),
                _ => {
                    let mut coeff = GradedCoeff::zero(self.order);
                    coeff.add_term(*d, *v);
                    out.push((*m, coeff));
                }
            }
        }
        out
    }

    pub(crate) fn push(&mut self, monomial: Monomial, degree: Multidegree, value: Scalar) {
        if degree.total() > self.order || value.is_zero() {
            return;
        }
        let key = (monomial, degree);
        let slot = self.terms.entry(key).or_insert_with(Scalar::zero);
        *slot += value;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check(&self, other: &Expr) -> Result<(), SymbolicError> {
        if self.chart != other.chart {
            return Err(SymbolicError::ChartMismatch(self.chart, other.chart));
        }
        if self.order != other.order {
            return Err(SymbolicError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Expr) -> Result<Expr, SymbolicError> {
        self.check(other)?;
        let mut out = self.clone();
        for ((m, d), v) in &other.terms {
            out.push(*m, *d, *v);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Expr) -> Result<Expr, SymbolicError> {
        self.check(other)?;
        let mut out = self.clone();
        for ((m, d), v) in &other.terms {
            out.push(*m, *d, -*v);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Expr) -> Result<Expr, SymbolicError> {
        self.check(other)?;
        let mut out = Self::zero(self.chart, self.order);
        for ((m1, d1), v1) in &self.terms {
            for ((m2, d2), v2) in &other.terms {
                let d = d1.combine(d2);
                if d.total() <= self.order {
                    out.push(m1.mul(m2), d, v1 * v2);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Scalar) -> Expr {
        let mut out = Self::zero(self.chart, self.order);
        if factor.is_zero() {
            return out;
        }
        for ((m, d), v) in &self.terms {
            out.push(*m, *d, v * factor);
        }
        out
    }

    /// Multiply every term by `value · symbols^degree · monomial`.
    pub(crate) fn scale_term(&self, monomial: &Monomial, degree: &Multidegree, value: &Scalar) -> Expr {
        let mut out = Self::zero(self.chart, self.order);
        for ((m, d), v) in &self.terms {
            let nd = d.combine(degree);
            if nd.total() <= self.order {
                out.push(m.mul(monomial), nd, v * value);
            }
        }
        out
    }

    pub fn scale_graded(&self, coeff: &GradedCoeff) -> Result<Expr, SymbolicError> {
        self.try_mul(&Expr::from_graded(self.chart, &coeff.clone_with_order(self.order)))
    }

    pub fn pow(&self, n: u32) -> Expr {
        let mut acc = Expr::one(self.chart, self.order);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to coordinate `var`.
    pub fn diff(&self, var: usize) -> Result<Expr, SymbolicError> {
        if var > 3 {
            return Err(SymbolicError::CoordinateIndex(var));
        }
        let mut out = Self::zero(self.chart, self.order);
        for ((m, d), v) in &self.terms {
            for (c, dm) in m.diff_terms(var) {
                out.push(dm, *d, v * int(c));
            }
        }
        Ok(out)
    }

    /// Iterated derivative `∂^alpha`.
    pub fn diff_multi(&self, alpha: &[u8; 4]) -> Expr {
        if alpha == &[0; 4] {
            return self.clone();
        }
        let mut out = Self::zero(self.chart, self.order);
        for ((m, d), v) in &self.terms {
            for (c, dm) in m.diff_multi(alpha) {
                out.push(dm, *d, v * int(c));
            }
        }
        out
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<Complex64, SymbolicError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((m, d), v) in &self.terms {
            let w = m.eval(assignment)? * assignment.deform.monomial(d);
            acc += to_complex64(v) * w;
        }
        Ok(acc)
    }

    /// Terms of total deformation degree exactly `degree`.
    pub fn homogeneous(&self, degree: u32) -> Expr {
        self.filter(|_, d| d.total() == degree)
    }

    /// Drop every term whose multidegree involves a symbol matching `pred`,
    /// i.e. substitute zero for those symbols.
    pub fn set_symbols_zero(&self, pred: impl Fn(DeformSymbol) -> bool) -> Expr {
        self.filter(|_, d| !d.involves(&pred))
    }

    pub fn filter(&self, keep: impl Fn(&Monomial, &Multidegree) -> bool) -> Expr {
        Expr {
            chart: self.chart,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|((m, d), _)| keep(m, d))
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }

    /// Smallest total deformation degree present; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, d)| d.total()).min()
    }

    /// Re-truncate at a different order.
    pub fn with_order(&self, order: u32) -> Expr {
        let mut out = Self::zero(self.chart, order);
        for ((m, d), v) in &self.terms {
            out.push(*m, *d, *v);
        }
        out
    }

    /// True when no term depends on coordinate `var`.
    pub fn independent_of(&self, var: usize) -> bool {
        self.terms
            .keys()
            .all(|(m, _)| m.z[var] == 0 && (var != 0 || m.exp == 0))
    }

    /// Replace coordinate `j` by `images[j]` in a Minkowski expression.
    ///
    /// The result lives in the chart of the images and keeps this
    /// expression's graded coefficients.
    pub fn substitute(&self, images: &[Expr; 4]) -> Result<Expr, SymbolicError> {
        let chart = images[0].chart;
        for img in images.iter() {
            if img.chart != chart {
                return Err(SymbolicError::ChartMismatch(chart, img.chart));
            }
            if img.order != self.order {
                return Err(SymbolicError::OrderMismatch(self.order, img.order));
            }
        }
        let mut powers: [Vec<Expr>; 4] =
            core::array::from_fn(|j| alloc::vec![Expr::one(chart, self.order), images[j].clone()]);
        let mut out = Self::zero(chart, self.order);
        for ((m, d), v) in &self.terms {
            if m.a != 0 || m.exp != 0 {
                return Err(SymbolicError::MinkowskiTranscendental);
            }
            let mut prod = Expr::zero(chart, self.order);
            prod.push(Monomial::ONE, *d, *v);
            for j in 0..4 {
                let p = m.z[j];
                if p < 0 {
                    return Err(SymbolicError::NegativePower(j));
                }
                let p = p as usize;
                while powers[j].len() <= p {
                    let next = &powers[j][powers[j].len() - 1] * &images[j];
                    powers[j].push(next);
                }
                if p > 0 {
                    prod = &prod * &powers[j][p];
                }
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Reinterpret the same canonical terms in another chart.
    pub fn in_chart(&self, chart: Chart) -> Result<Expr, SymbolicError> {
        for (m, _) in self.terms.keys() {
            m.validate(chart)?;
        }
        Ok(Expr {
            chart,
            order: self.order,
            terms: self.terms.clone(),
        })
    }
}

impl GradedCoeff {
    pub(crate) fn clone_with_order(&self, order: u32) -> GradedCoeff {
        let mut out = GradedCoeff::zero(order);
        for (d, v) in self.terms() {
            out.add_term(*d, *v);
        }
        out
    }
}

macro_rules! panicking_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Expr> for &Expr {
            type Output = Expr;

            /// # Panics
            ///
            /// On chart or truncation-order mismatch; use the `try_` form to
            /// get an error instead.
            fn $method(self, rhs: &Expr) -> Expr {
                self.$checked(rhs).expect("operands share chart and order")
            }
        }

        impl $trait<Expr> for Expr {
            type Output = Expr;

            fn $method(self, rhs: Expr) -> Expr {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_binop!(Add, add, try_add);
panicking_binop!(Sub, sub, try_sub);
panicking_binop!(Mul, mul, try_mul);

impl Neg for &Expr {
    type Output = Expr;

    fn neg(self) -> Expr {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Expr {
    type Output = Expr;

    fn neg(self) -> Expr {
        -&self
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::imag;

    const R: Chart = Chart::Rindler;

    fn z(idx: usize) -> Expr {
        Expr::coordinate(R, 1, idx).unwrap()
    }

    #[test]
    fn hyperbolic_identity_is_canonical() {
        let s = Expr::sinh_az0(1);
        let c = Expr::cosh_az0(1);
        let lhs = &(&s * &s) + &Expr::one(R, 1);
        assert_eq!(lhs, &c * &c);
        let expected = &(&Expr::exp_az0(1, 2) + &Expr::exp_az0(1, -2)) + &Expr::integer(R, 1, 2);
        assert_eq!(lhs, expected.scale(&real(rational(1, 4))));
        assert_eq!(&(&c * &c) - &(&s * &s), Expr::one(R, 1));
    }

    #[test]
    fn truncation_drops_high_degree() {
        let k = Expr::symbol(R, 1, DeformSymbol::InvKappa, Scalar::one());
        assert!((&(&k * &k) * &z(1)).is_zero());
        let k2 = Expr::symbol(R, 2, DeformSymbol::InvKappa, Scalar::one());
        assert!(!(&k2 * &k2).is_zero());
    }

    #[test]
    fn derivatives() {
        let g0 = &z(1) * &Expr::sinh_az0(1);
        assert_eq!(g0.diff(1).unwrap(), Expr::sinh_az0(1));
        assert_eq!(g0.diff(0).unwrap(), &(&Expr::a_pow(1, 1) * &z(1)) * &Expr::cosh_az0(1));
        assert!(Expr::z1_pow(R, 1, -1).diff(2).unwrap().is_zero());
        assert_eq!(g0.diff(4), Err(SymbolicError::CoordinateIndex(4)));
    }

    #[test]
    fn evaluation() {
        let s = Expr::sinh_az0(1);
        let c = Expr::cosh_az0(1);
        let at = Assignment::new([0.7, 2.0, 0.0, 0.0], 1.3);
        let v = (&(&c * &c) - &(&s * &s)).eval(&at).unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));
        let g0 = &z(1) * &s;
        assert_eq!(
            g0.eval(&Assignment::new([0.0, 3.0, 0.0, 0.0], 1.0)).unwrap().norm(),
            0.0
        );
        let inv = Expr::z1_pow(R, 1, -1);
        assert_eq!(
            inv.eval(&Assignment::new([0.0; 4], 1.0)),
            Err(SymbolicError::DivisionByZero)
        );
    }

    #[test]
    fn construction_errors() {
        let bad = Monomial {
            z: [0, 0, -1, 0],
            a: 0,
            exp: 0,
        };
        assert_eq!(Expr::monomial(R, 1, bad), Err(SymbolicError::NegativePower(2)));
        let trans = Monomial {
            exp: 1,
            ..Monomial::ONE
        };
        assert_eq!(
            Expr::monomial(Chart::Minkowski, 1, trans),
            Err(SymbolicError::MinkowskiTranscendental)
        );
        let m = Expr::one(Chart::Minkowski, 1);
        assert_eq!(
            m.try_add(&Expr::one(R, 1)),
            Err(SymbolicError::ChartMismatch(Chart::Minkowski, R))
        );
        assert_eq!(
            m.try_mul(&Expr::one(Chart::Minkowski, 2)),
            Err(SymbolicError::OrderMismatch(1, 2))
        );
    }

    #[test]
    fn substitution_into_rindler() {
        let x: [Expr; 4] = core::array::from_fn(|i| Expr::coordinate(Chart::Minkowski, 1, i).unwrap());
        let images = [&z(1) * &Expr::sinh_az0(1), &z(1) * &Expr::cosh_az0(1), z(2), z(3)];
        let interval = &(&x[1] * &x[1]) - &(&x[0] * &x[0]);
        assert_eq!(interval.substitute(&images).unwrap(), &z(1) * &z(1));
        let k = Expr::symbol(Chart::Minkowski, 1, DeformSymbol::InvKappa, imag(rational(1, 1)));
        let out = (&k * &x[2]).substitute(&images).unwrap();
        assert_eq!(
            out,
            &Expr::symbol(R, 1, DeformSymbol::InvKappa, imag(rational(1, 1))) * &z(2)
        );
    }
}
