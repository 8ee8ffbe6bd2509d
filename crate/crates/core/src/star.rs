//! Star products, coordinate commutator tables and their closed forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{SymbolicError, TwistError};
use crate::symbolic::{imag, rational, BiOp, Chart, DeformSymbol, Expr};
use crate::twist::{build_minkowski_twist, build_rindler_zfactor, ChartFrame, TwistCase, TwistFactor};

/// `f ⋆ g = ω∘(F⁻¹ ▷ f ⊗ g)` for a fixed twist factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarProduct {
    factor: TwistFactor,
}

impl StarProduct {
    /// Minkowski twist or Rindler Z-factor for the case, at order `order`.
    pub fn new(case: &TwistCase, chart: Chart, order: u32) -> Result<Self, TwistError> {
        let factor = match chart {
            Chart::Minkowski => build_minkowski_twist(case, order)?,
            Chart::Rindler => build_rindler_zfactor(case, order)?,
        };
        Ok(StarProduct { factor })
    }

    pub fn from_factor(factor: TwistFactor) -> Self {
        StarProduct { factor }
    }

    pub fn factor(&self) -> &TwistFactor {
        &self.factor
    }

    pub fn inverse(&self) -> &BiOp {
        &self.factor.inverse
    }

    pub fn product(&self, f: &Expr, g: &Expr) -> Result<Expr, SymbolicError> {
        self.factor.inverse.apply([f, g])
    }

    pub fn commutator(&self, f: &Expr, g: &Expr) -> Result<Expr, SymbolicError> {
        self.product(f, g)?.try_sub(&self.product(g, f)?)
    }
}

pub fn star_product(f: &Expr, g: &Expr, case: &TwistCase, chart: Chart, order: u32) -> Result<Expr, TwistError> {
    Ok(StarProduct::new(case, chart, order)?.product(f, g)?)
}

pub fn star_commutator(f: &Expr, g: &Expr, case: &TwistCase, chart: Chart, order: u32) -> Result<Expr, TwistError> {
    Ok(StarProduct::new(case, chart, order)?.commutator(f, g)?)
}

/// The six independent commutators `[c_μ, c_ν]` (`μ < ν`) of the chart
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorTable {
    pub case: TwistCase,
    pub chart: Chart,
    pub order: u32,
    entries: BTreeMap<(u8, u8), Expr>,
}

impl CommutatorTable {
    pub fn from_entries(case: TwistCase, chart: Chart, order: u32, entries: BTreeMap<(u8, u8), Expr>) -> Self {
        CommutatorTable {
            case,
            chart,
            order,
            entries,
        }
    }

    /// `[c_μ, c_ν]`, with `(ν, μ)` read as the negative of `(μ, ν)`.
    pub fn get(&self, mu: u8, nu: u8) -> Expr {
        if mu == nu {
            return Expr::zero(self.chart, self.order);
        }
        if mu < nu {
            self.entries
                .get(&(mu, nu))
                .cloned()
                .unwrap_or_else(|| Expr::zero(self.chart, self.order))
        } else {
            -&self.get(nu, mu)
        }
    }

    /// Entries `(μ, ν, value)` for `μ < ν` in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (u8, u8, &Expr)> {
        self.entries.iter().map(|((m, n), e)| (*m, *n, e))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(Expr::is_zero)
    }

    /// Substitute zero for every symbol matching `pred`.
    pub fn set_symbols_zero(&self, pred: impl Fn(DeformSymbol) -> bool + Copy) -> Self {
        CommutatorTable {
            entries: self
                .entries
                .iter()
                .map(|(k, e)| (*k, e.set_symbols_zero(pred)))
                .collect(),
            ..self.clone()
        }
    }

    /// Re-truncate every entry at another order.
    pub fn with_order(&self, order: u32) -> Self {
        CommutatorTable {
            order,
            entries: self.entries.iter().map(|(k, e)| (*k, e.with_order(order))).collect(),
            ..self.clone()
        }
    }
}

/// Commutator table of the chart coordinates (`x_μ` or `z_μ`) computed from
/// the star product.
pub fn commutator_table(case: &TwistCase, chart: Chart, order: u32) -> Result<CommutatorTable, TwistError> {
    let star = StarProduct::new(case, chart, order)?;
    let coords: Vec<Expr> = (0..4)
        .map(|j| Expr::coordinate(chart, order, j))
        .collect::<Result<_, _>>()?;
    table_from(&star, case, chart, order, &coords)
}

fn table_from(
    star: &StarProduct,
    case: &TwistCase,
    chart: Chart,
    order: u32,
    funcs: &[Expr],
) -> Result<CommutatorTable, TwistError> {
    let mut entries = BTreeMap::new();
    for mu in 0..4u8 {
        for nu in (mu + 1)..4 {
            let c = star.commutator(&funcs[usize::from(mu)], &funcs[usize::from(nu)])?;
            entries.insert((mu, nu), c);
        }
    }
    Ok(CommutatorTable::from_entries(*case, chart, order, entries))
}

/// Reference closed forms of the Minkowski quantum space-times.
pub mod closed_form {
    use super::*;
    use crate::symbolic::{int, Scalar};
    use crate::twist::TwistKind;

    fn delta(a: u8, b: u8) -> i128 {
        i128::from(a == b)
    }

    /// `[x_μ, x_ν]` for `μ < ν` in closed form for the case.
    pub fn minkowski_entry(case: &TwistCase, order: u32, mu: u8, nu: u8) -> Result<Expr, SymbolicError> {
        let ch = Chart::Minkowski;
        let x = |j: u8| Expr::coordinate(ch, order, usize::from(j));
        let i_unit: Scalar = imag(rational(1, 1));
        let (i, k, l) = case.indices();
        let kappa = Expr::symbol(ch, order, case.kappa(), i_unit);
        let (sign, th) = case.theta();
        let theta2i = Expr::symbol(ch, order, th, imag(rational(2 * sign, 1)));
        let zero = Expr::zero(ch, order);
        let d = |n: i128| int(n);
        let out = match case.kind() {
            TwistKind::I => {
                if mu == 0 {
                    let a = nu;
                    (&kappa * &x(i)?).scale(&d(delta(a, k)))
                } else {
                    let (a, b) = (mu, nu);
                    let th_part = theta2i.scale(&d(delta(a, k) * delta(b, l) - delta(a, l) * delta(b, k)));
                    let k_part = (&kappa * &x(0)?).scale(&d(delta(i, a) * delta(k, b) - delta(k, a) * delta(i, b)));
                    &th_part + &k_part
                }
            }
            TwistKind::II => {
                if mu == 0 {
                    let a = nu;
                    let rot = &x(k)?.scale(&d(delta(l, a))) - &x(l)?.scale(&d(delta(k, a)));
                    &(&kappa * &rot) + &theta2i.scale(&d(delta(i, a)))
                } else {
                    zero
                }
            }
            TwistKind::III => {
                if mu == 0 {
                    theta2i.scale(&d(delta(i, nu)))
                } else {
                    let (a, b) = (mu, nu);
                    let first = (&x(l)?.scale(&d(delta(k, a))) - &x(k)?.scale(&d(delta(l, a)))).scale(&d(delta(i, b)));
                    let second = (&x(k)?.scale(&d(delta(l, b))) - &x(l)?.scale(&d(delta(k, b)))).scale(&d(delta(i, a)));
                    &kappa * &(&first + &second)
                }
            }
        };
        Ok(out)
    }

    pub fn minkowski_table(case: &TwistCase, order: u32) -> Result<CommutatorTable, SymbolicError> {
        let mut entries = BTreeMap::new();
        for mu in 0..4u8 {
            for nu in (mu + 1)..4 {
                entries.insert((mu, nu), minkowski_entry(case, order, mu, nu)?);
            }
        }
        Ok(CommutatorTable::from_entries(*case, Chart::Minkowski, order, entries))
    }
}

/// Per-entry residual of one table against another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableComparison {
    pub residuals: Vec<(u8, u8, Expr)>,
}

impl TableComparison {
    pub fn between(lhs: &CommutatorTable, rhs: &CommutatorTable) -> Result<Self, SymbolicError> {
        let mut residuals = Vec::new();
        for mu in 0..4u8 {
            for nu in (mu + 1)..4 {
                residuals.push((mu, nu, lhs.get(mu, nu).try_sub(&rhs.get(mu, nu))?));
            }
        }
        Ok(TableComparison { residuals })
    }

    pub fn is_zero(&self) -> bool {
        self.residuals.iter().all(|(_, _, e)| e.is_zero())
    }

    pub fn changed(&self) -> impl Iterator<Item = &(u8, u8, Expr)> {
        self.residuals.iter().filter(|(_, _, e)| !e.is_zero())
    }
}

/// Star commutators of the Minkowski coordinate functions `X^μ(z)` in the
/// Rindler chart, compared with the Minkowski closed forms pulled back
/// through the same coordinate functions.
pub fn equivariance_check(case: &TwistCase, order: u32) -> Result<TableComparison, TwistError> {
    let frame = ChartFrame::new(Chart::Rindler, order);
    let star = StarProduct::new(case, Chart::Rindler, order)?;
    let computed = table_from(&star, case, Chart::Rindler, order, &frame.coords)?;
    let closed = closed_form::minkowski_table(case, order)?;
    let mut entries = BTreeMap::new();
    for (mu, nu, e) in closed.entries() {
        entries.insert((mu, nu), e.substitute(&frame.coords)?);
    }
    let expected = CommutatorTable::from_entries(*case, Chart::Rindler, order, entries);
    Ok(TableComparison::between(&computed, &expected)?)
}

/// Tables at orders `2..=n_max` compared with the order-1 table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub case: TwistCase,
    pub chart: Chart,
    pub base: CommutatorTable,
    pub comparisons: Vec<(u32, TableComparison)>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.comparisons.iter().all(|(_, c)| c.is_zero())
    }
}

pub fn truncation_stability_check(case: &TwistCase, chart: Chart, n_max: u32) -> Result<StabilityReport, TwistError> {
    let base = commutator_table(case, chart, 1)?;
    let mut comparisons = Vec::new();
    for n in 2..=n_max.max(2) {
        let t = commutator_table(case, chart, n)?;
        comparisons.push((n, TableComparison::between(&t, &base.with_order(n))?));
    }
    Ok(StabilityReport {
        case: *case,
        chart,
        base,
        comparisons,
    })
}
