//! Representation-level consistency checks: cocycle and normalization of
//! every twist, the classical and partial limits, and a control that makes
//! sure the cocycle check can fail.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, SymbolicError, VerifyError};
use crate::spectra::{PhysParams, QuadConfig, TwistedMode};
use crate::star::{commutator_table, equivariance_check, StarProduct, TableComparison};
use crate::symbolic::{BiOp, Chart, DeformSymbol, Expr, Monomial, TriOp};
use crate::twist::{
    build_generators, build_minkowski_twist, build_rindler_zfactor, non_abelian_control_log, pullback_twist_check,
    wedge_legs, TwistCase, TwistFactor,
};

/// Longest residual rendering kept in a report entry.
const RESIDUAL_CHARS: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub config: String,
    pub passed: bool,
    /// Canonical rendering of the residual, `"0"` when it vanishes.
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckEntry>,
    pub seed: u64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn clip(s: String) -> String {
    if s.chars().count() <= RESIDUAL_CHARS {
        return s;
    }
    let mut out: String = s.chars().take(RESIDUAL_CHARS).collect();
    out.push_str(" ...");
    out
}

fn entry(name: &str, config: String, passed: bool, residual: String) -> CheckEntry {
    CheckEntry {
        name: String::from(name),
        config,
        passed,
        residual: if residual.is_empty() {
            String::from("0")
        } else {
            clip(residual)
        },
    }
}

fn chart_config(case: &TwistCase, chart: Chart, order: u32) -> String {
    format!("{} {} N={}", case.label(), chart.as_str(), order)
}

/// Monomials of total degree `≤ max_degree` in the four chart coordinates.
pub fn monomial_test_set(chart: Chart, order: u32, max_degree: u32) -> Vec<Expr> {
    let mut out = Vec::new();
    let d = max_degree as i32;
    for a in 0..=d {
        for b in 0..=(d - a) {
            for c in 0..=(d - a - b) {
                for e in 0..=(d - a - b - c) {
                    let m = Monomial {
                        z: [a, b, c, e],
                        a: 0,
                        exp: 0,
                    };
                    out.push(Expr::monomial(chart, order, m).expect("non-negative powers"));
                }
            }
        }
    }
    out
}

/// The two sides of `F₁₂·(Δ₀⊗1)F = F₂₃·(1⊗Δ₀)F` for `F = exp(Ω)`.
pub fn cocycle_sides(log: &BiOp) -> Result<(TriOp, TriOp), SymbolicError> {
    let factor = log.exp_truncated()?;
    let lhs = factor.embed_12().compose(&log.coproduct_left()?.exp_truncated()?)?;
    let rhs = factor.embed_23().compose(&log.coproduct_right()?.exp_truncated()?)?;
    Ok((lhs, rhs))
}

/// Outcome of the cocycle condition for one twist logarithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleOutcome {
    /// `LHS - RHS` as a canonical three-slot operator.
    pub operator_residual: TriOp,
    /// Triples (by index into the test set) with a nonzero residual value.
    pub failing_triples: Vec<(usize, usize, usize)>,
    pub triples_checked: usize,
    pub first_failure: Option<String>,
}

impl CocycleOutcome {
    pub fn is_zero(&self) -> bool {
        self.operator_residual.is_zero() && self.failing_triples.is_empty()
    }
}

/// Cocycle residual on `samples` seeded triples of the test set (all
/// triples when `samples` is `None`), plus the operator-level residual.
pub fn cocycle_residual(
    log: &BiOp,
    test_set: &[Expr],
    samples: Option<usize>,
    seed: u64,
) -> Result<CocycleOutcome, VerifyError> {
    if log.order() < 2 {
        return Err(VerifyError::CocycleOrder(log.order()));
    }
    let (lhs, rhs) = cocycle_sides(log)?;
    let residual = lhs.try_sub(&rhs)?;
    let n = test_set.len();
    let mut triples: Vec<(usize, usize, usize)> = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                triples.push((a, b, c));
            }
        }
    }
    if let Some(k) = samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        triples.shuffle(&mut rng);
        triples.truncate(k);
        triples.sort_unstable();
    }
    let mut failing = Vec::new();
    let mut first_failure = None;
    for &(a, b, c) in &triples {
        let v = residual.apply_tensor([&test_set[a], &test_set[b], &test_set[c]])?;
        if !v.is_zero() {
            if first_failure.is_none() {
                first_failure = Some(format!(
                    "({}, {}, {}): {}",
                    test_set[a],
                    test_set[b],
                    test_set[c],
                    v.to_ascii()
                ));
            }
            failing.push((a, b, c));
        }
    }
    Ok(CocycleOutcome {
        operator_residual: residual,
        failing_triples: failing,
        triples_checked: triples.len(),
        first_failure,
    })
}

/// Twist logarithm used in the given chart: the Minkowski twist or the
/// Rindler Z-factor.
fn chart_log(case: &TwistCase, chart: Chart, order: u32) -> Result<BiOp, Error> {
    Ok(match chart {
        Chart::Minkowski => build_minkowski_twist(case, order)?.log,
        Chart::Rindler => build_rindler_zfactor(case, order)?.log,
    })
}

fn seed_for(seed: u64, case: &TwistCase, chart: Chart, order: u32) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in case.label().bytes().chain(chart.as_str().bytes()) {
        h = h.rotate_left(5) ^ u64::from(b);
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h ^ u64::from(order)
}

fn cocycle_entry(name: &str, config: String, outcome: &CocycleOutcome, expect_zero: bool) -> CheckEntry {
    let zero = outcome.is_zero();
    let residual = if zero {
        String::new()
    } else if let Some(f) = &outcome.first_failure {
        format!(
            "{} of {} triples nonzero; first {}",
            outcome.failing_triples.len(),
            outcome.triples_checked,
            f
        )
    } else {
        format!("operator residual {}", outcome.operator_residual.to_ascii())
    };
    entry(name, config, zero == expect_zero, residual)
}

/// Cocycle condition for one case/chart/order on degree `≤ 3` monomials.
pub fn cocycle_check(
    case: &TwistCase,
    chart: Chart,
    order: u32,
    samples: Option<usize>,
    seed: u64,
) -> Result<CheckEntry, Error> {
    if order < 2 {
        return Err(VerifyError::CocycleOrder(order).into());
    }
    let log = chart_log(case, chart, order)?;
    let tests = monomial_test_set(chart, order, 3);
    let outcome = cocycle_residual(&log, &tests, samples, seed_for(seed, case, chart, order))?;
    Ok(cocycle_entry(
        "cocycle",
        chart_config(case, chart, order),
        &outcome,
        true,
    ))
}

/// Cocycle check of a deliberately non-Abelian twist; passes when the
/// residual is nonzero.
pub fn control_check(
    case: &TwistCase,
    chart: Chart,
    order: u32,
    samples: Option<usize>,
    seed: u64,
) -> Result<CheckEntry, Error> {
    if order < 2 {
        return Err(VerifyError::CocycleOrder(order).into());
    }
    let gens = build_generators(chart, order);
    let log = non_abelian_control_log(case, &gens)?;
    let tests = monomial_test_set(chart, order, 3);
    let outcome = cocycle_residual(&log, &tests, samples, seed_for(seed, case, chart, order))?;
    Ok(cocycle_entry(
        "non-abelian control",
        chart_config(case, chart, order),
        &outcome,
        false,
    ))
}

/// Five test functions per chart, including the constant.
pub fn normalization_basis(chart: Chart, order: u32) -> Vec<Expr> {
    let c = |j| Expr::coordinate(chart, order, j).expect("index in range");
    match chart {
        Chart::Minkowski => alloc::vec![
            Expr::one(chart, order),
            c(0),
            &c(1) * &c(2),
            &(&c(0) * &c(0)) * &c(3),
            &(&c(1) * &c(2)) * &c(3),
        ],
        Chart::Rindler => alloc::vec![
            Expr::one(chart, order),
            &c(1) * &Expr::exp_az0(order, 1),
            &c(0) * &c(2),
            &Expr::z1_pow(chart, order, -1) * &c(3),
            &Expr::cosh_az0(order) * &(&c(1) * &c(1)),
        ],
    }
}

/// `f ⋆ 1 = f` and `1 ⋆ f = f` on the normalization basis.
pub fn normalization_check(case: &TwistCase, chart: Chart, order: u32) -> Result<CheckEntry, Error> {
    let star = StarProduct::new(case, chart, order)?;
    let one = Expr::one(chart, order);
    let mut bad = Vec::new();
    for f in normalization_basis(chart, order) {
        let right = star.product(&f, &one)?.try_sub(&f)?;
        let left = star.product(&one, &f)?.try_sub(&f)?;
        if !right.is_zero() {
            bad.push(format!("({f}) * 1 - f = {right}"));
        }
        if !left.is_zero() {
            bad.push(format!("1 * ({f}) - f = {left}"));
        }
    }
    Ok(entry(
        "normalization",
        chart_config(case, chart, order),
        bad.is_empty(),
        bad.join("; "),
    ))
}

fn single_leg_table(
    case: &TwistCase,
    chart: Chart,
    order: u32,
    keep: usize,
) -> Result<crate::star::CommutatorTable, Error> {
    let gens = build_generators(chart, order);
    let (w, a, b) = &wedge_legs(case, &gens)[keep];
    let log = BiOp::wedge(a, b)?
        .scale_graded(w)
        .scale(&crate::symbolic::imag(crate::symbolic::rational(1, 1)));
    let star = StarProduct::from_factor(TwistFactor::from_log(*case, log)?);
    let coords: Vec<Expr> = (0..4)
        .map(|j| Expr::coordinate(chart, order, j))
        .collect::<Result<_, _>>()?;
    let mut entries = alloc::collections::BTreeMap::new();
    for mu in 0..4u8 {
        for nu in (mu + 1)..4 {
            let c = star.commutator(&coords[usize::from(mu)], &coords[usize::from(nu)])?;
            entries.insert((mu, nu), c);
        }
    }
    Ok(crate::star::CommutatorTable::from_entries(*case, chart, order, entries))
}

fn comparison_text(cmp: &TableComparison) -> String {
    cmp.changed()
        .map(|(mu, nu, e)| format!("[{mu},{nu}]: {e}"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Classical, canonical-only and Lie-only limits of the commutator tables,
/// plus the undeformed spectrum.
pub fn limit_suite(case: &TwistCase) -> Result<Vec<CheckEntry>, Error> {
    let mut out = Vec::new();
    let order = 1;
    for chart in [Chart::Minkowski, Chart::Rindler] {
        let config = chart_config(case, chart, order);
        let table = commutator_table(case, chart, order)?;

        let classical = table.set_symbols_zero(|_| true);
        let text = classical
            .entries()
            .filter(|(_, _, e)| !e.is_zero())
            .map(|(mu, nu, e)| format!("[{mu},{nu}]: {e}"))
            .collect::<Vec<_>>()
            .join("; ");
        out.push(entry("limit classical", config.clone(), classical.is_zero(), text));

        // legs[1] is the θ wedge, legs[0] the κ-type wedge
        let canonical = table.set_symbols_zero(DeformSymbol::is_kappa_type);
        let cmp = TableComparison::between(&canonical, &single_leg_table(case, chart, order, 1)?)?;
        let pure = canonical
            .entries()
            .all(|(_, _, e)| e.terms().all(|(_, d, _)| !d.involves(DeformSymbol::is_kappa_type)));
        out.push(entry(
            "limit canonical",
            config.clone(),
            cmp.is_zero() && pure,
            comparison_text(&cmp),
        ));

        let lie = table.set_symbols_zero(DeformSymbol::is_theta);
        let cmp = TableComparison::between(&lie, &single_leg_table(case, chart, order, 0)?)?;
        let pure = lie
            .entries()
            .all(|(_, _, e)| e.terms().all(|(_, d, _)| !d.involves(DeformSymbol::is_theta)));
        out.push(entry(
            "limit lie-algebraic",
            config,
            cmp.is_zero() && pure,
            comparison_text(&cmp),
        ));
    }

    let params = PhysParams::default();
    let mode = TwistedMode::new(case, &params)?;
    let mut worst = 0.0f64;
    for j in 1..=8 {
        let w = 0.5 * f64::from(j);
        let pt = mode.point(w, &QuadConfig::default())?;
        worst = worst.max((pt.corrected - pt.base).abs()).max(pt.correction.norm());
    }
    out.push(entry(
        "limit classical spectrum",
        format!("{} a=1 omega_hat=1 z=1", case.label()),
        worst == 0.0 && mode.first.is_empty() && mode.second.is_empty(),
        if worst == 0.0 {
            String::new()
        } else {
            format!("{worst:e}")
        },
    ));
    Ok(out)
}

/// Pullback of the Minkowski twist against the directly built Z-factor.
pub fn pullback_entry(case: &TwistCase) -> Result<CheckEntry, Error> {
    let r = pullback_twist_check(case)?;
    Ok(entry(
        "pullback",
        chart_config(case, Chart::Rindler, 1),
        r.is_zero(),
        r.residual.to_ascii(),
    ))
}

/// Rindler star commutators of `X^μ(z)` against the substituted closed forms.
pub fn equivariance_entry(case: &TwistCase) -> Result<CheckEntry, Error> {
    let cmp = equivariance_check(case, 1)?;
    Ok(entry(
        "equivariance",
        chart_config(case, Chart::Rindler, 1),
        cmp.is_zero(),
        comparison_text(&cmp),
    ))
}

/// A single unit of work in the battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckSpec {
    Cocycle { case: TwistCase, chart: Chart, order: u32 },
    Control { case: TwistCase, chart: Chart, order: u32 },
    Normalization { case: TwistCase, chart: Chart, order: u32 },
    Limits { case: TwistCase },
    Pullback { case: TwistCase },
    Equivariance { case: TwistCase },
}

/// Battery options. `samples = None` checks every triple of the test set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatteryConfig {
    pub order: u32,
    pub seed: u64,
    pub samples: Option<usize>,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            order: 2,
            seed: 0,
            samples: None,
        }
    }
}

/// Cocycle checks run in the Minkowski chart at `N` and `N + 1` and in the
/// Rindler chart at `N`; everything else is per case.
pub fn battery_plan(order: u32) -> Result<Vec<CheckSpec>, VerifyError> {
    if order < 2 {
        return Err(VerifyError::CocycleOrder(order));
    }
    let mut plan = Vec::new();
    for case in TwistCase::all() {
        for (chart, n) in [
            (Chart::Minkowski, order),
            (Chart::Minkowski, order + 1),
            (Chart::Rindler, order),
        ] {
            plan.push(CheckSpec::Cocycle { case, chart, order: n });
        }
        for chart in [Chart::Minkowski, Chart::Rindler] {
            plan.push(CheckSpec::Normalization { case, chart, order });
        }
        plan.push(CheckSpec::Limits { case });
        plan.push(CheckSpec::Pullback { case });
        plan.push(CheckSpec::Equivariance { case });
    }
    // one control per twist kind is enough to show the check has power
    for case in TwistCase::all().into_iter().filter(|c| c.indices() == (1, 2, 3)) {
        plan.push(CheckSpec::Control {
            case,
            chart: Chart::Minkowski,
            order,
        });
    }
    Ok(plan)
}

pub fn run_check(spec: &CheckSpec, config: &BatteryConfig) -> Result<Vec<CheckEntry>, Error> {
    let (seed, samples) = (config.seed, config.samples);
    Ok(match *spec {
        CheckSpec::Cocycle { case, chart, order } => alloc::vec![cocycle_check(&case, chart, order, samples, seed)?],
        CheckSpec::Control { case, chart, order } => alloc::vec![control_check(&case, chart, order, samples, seed)?],
        CheckSpec::Normalization { case, chart, order } => alloc::vec![normalization_check(&case, chart, order)?],
        CheckSpec::Limits { case } => limit_suite(&case)?,
        CheckSpec::Pullback { case } => alloc::vec![pullback_entry(&case)?],
        CheckSpec::Equivariance { case } => alloc::vec![equivariance_entry(&case)?],
    })
}

/// Sort entries by `(name, config)` so the report does not depend on the
/// order in which checks finished.
pub fn assemble_report(mut checks: Vec<CheckEntry>, seed: u64) -> VerificationReport {
    checks.sort_by(|a, b| (&a.name, &a.config).cmp(&(&b.name, &b.config)));
    VerificationReport { checks, seed }
}

/// Run the whole battery sequentially.
pub fn run_battery(config: &BatteryConfig) -> Result<VerificationReport, Error> {
    let mut checks = Vec::new();
    for spec in battery_plan(config.order)? {
        checks.extend(run_check(&spec, config)?);
    }
    Ok(assemble_report(checks, config.seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::TwistKind;

    fn case(kind: TwistKind, i: u8, k: u8, l: u8) -> TwistCase {
        TwistCase::new(kind, i, k, l).unwrap()
    }

    #[test]
    fn order_one_is_rejected() {
        let c = case(TwistKind::I, 1, 2, 3);
        assert_eq!(
            cocycle_check(&c, Chart::Minkowski, 1, None, 0),
            Err(Error::Verify(VerifyError::CocycleOrder(1)))
        );
        assert_eq!(battery_plan(1), Err(VerifyError::CocycleOrder(1)));
    }

    #[test]
    fn test_set_size() {
        assert_eq!(monomial_test_set(Chart::Minkowski, 2, 3).len(), 35);
    }

    #[test]
    fn cocycle_example_triple() {
        let c = case(TwistKind::I, 1, 2, 3);
        let log = build_minkowski_twist(&c, 2).unwrap().log;
        let x = |j| Expr::coordinate(Chart::Minkowski, 2, j).unwrap();
        let out = cocycle_residual(&log, &[x(0), x(2), x(3)], None, 0).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.triples_checked, 27);
    }

    #[test]
    fn identity_twist_is_a_cocycle() {
        let log = BiOp::zero(Chart::Minkowski, 2);
        let (lhs, rhs) = cocycle_sides(&log).unwrap();
        assert_eq!(lhs, TriOp::identity(Chart::Minkowski, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn control_detects_non_abelian_legs() {
        let c = case(TwistKind::I, 1, 2, 3);
        let e = control_check(&c, Chart::Minkowski, 2, None, 0).unwrap();
        assert!(e.passed, "{e:?}");
        assert_ne!(e.residual, "0");
    }

    #[test]
    fn normalization_example() {
        let c = case(TwistKind::II, 1, 2, 3);
        let e = normalization_check(&c, Chart::Rindler, 2).unwrap();
        assert!(e.passed, "{e:?}");
    }

    #[test]
    fn case_one_limits() {
        let c = case(TwistKind::I, 1, 2, 3);
        let entries = limit_suite(&c).unwrap();
        assert!(entries.iter().all(|e| e.passed), "{entries:?}");
        let t = commutator_table(&c, Chart::Minkowski, 1).unwrap();
        let canonical = t.set_symbols_zero(DeformSymbol::is_kappa_type);
        assert_eq!(canonical.get(2, 3).to_ascii(), "2*i*theta23");
        assert!(canonical.get(0, 2).is_zero());
        let lie = t.set_symbols_zero(DeformSymbol::is_theta);
        assert_eq!(lie.get(0, 2).to_ascii(), "i*inv_kappa*x1");
        assert!(lie.get(2, 3).is_zero());
    }

    #[test]
    fn report_order_is_canonical() {
        let a = entry("b", String::from("x"), true, String::new());
        let b = entry("a", String::from("y"), true, String::new());
        let r = assemble_report(alloc::vec![a.clone(), b.clone()], 7);
        assert_eq!(r.checks, alloc::vec![b, a]);
        assert!(r.all_passed());
    }
}
