//! Poincaré generators in the differential representation, the three
//! Abelian twist factors, their Rindler Z-factors and the Rindler metric.
//!
//! Conventions: a twist is `F = exp(Ω)` with `Ω = i·X` and `X` a sum of
//! wedges of generators; the star product uses `F⁻¹ = exp(-Ω)`. Coordinate
//! functions `X^μ` carry upper indices and `x_μ = η_μν X^ν` with
//! `η = diag(-1, 1, 1, 1)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{SymbolicError, TwistError};
use crate::symbolic::{imag, int, rational, real, BiOp, Chart, DeformSymbol, DiffOp, Expr, GradedCoeff};

/// Which of the three twist families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwistKind {
    /// `(1/2κ) P_k ∧ M_0i + θ_kl P_k ∧ P_l`
    I,
    /// `(1/2κ̂) P_0 ∧ M_kl + θ_0i P_0 ∧ P_i`
    II,
    /// `(1/2κ̄) P_i ∧ M_kl + θ_0i P_0 ∧ P_i`
    III,
}

impl TwistKind {
    pub const ALL: [TwistKind; 3] = [TwistKind::I, TwistKind::II, TwistKind::III];

    pub fn kappa_symbol(self) -> DeformSymbol {
        match self {
            TwistKind::I => DeformSymbol::InvKappa,
            TwistKind::II => DeformSymbol::InvKappaHat,
            TwistKind::III => DeformSymbol::InvKappaBar,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TwistKind::I => "i",
            TwistKind::II => "ii",
            TwistKind::III => "iii",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Some(TwistKind::I),
            "ii" | "2" => Some(TwistKind::II),
            "iii" | "3" => Some(TwistKind::III),
            _ => None,
        }
    }
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A twist family together with its spatial index choice `(i, k, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistCase {
    kind: TwistKind,
    i: u8,
    k: u8,
    l: u8,
}

impl TwistCase {
    /// Indices must be a permutation of `{1, 2, 3}`.
    pub fn new(kind: TwistKind, i: u8, k: u8, l: u8) -> Result<Self, TwistError> {
        let valid = |x: u8| (1..=3).contains(&x);
        if !(valid(i) && valid(k) && valid(l)) || i == k || i == l || k == l {
            return Err(TwistError::InvalidIndices(i, k, l));
        }
        Ok(TwistCase { kind, i, k, l })
    }

    /// All 18 valid configurations, in canonical order.
    pub fn all() -> Vec<TwistCase> {
        let mut out = Vec::with_capacity(18);
        for kind in TwistKind::ALL {
            for i in 1..=3u8 {
                for k in 1..=3u8 {
                    for l in 1..=3u8 {
                        if let Ok(c) = TwistCase::new(kind, i, k, l) {
                            out.push(c);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn kind(&self) -> TwistKind {
        self.kind
    }

    pub fn indices(&self) -> (u8, u8, u8) {
        (self.i, self.k, self.l)
    }

    /// Sign and canonical symbol of the θ parameter: `θ_kl` (case I) or `θ_0i`.
    pub fn theta(&self) -> (i128, DeformSymbol) {
        let pair = match self.kind {
            TwistKind::I => (self.k, self.l),
            TwistKind::II | TwistKind::III => (0, self.i),
        };
        DeformSymbol::signed_theta(pair.0, pair.1).expect("validated indices")
    }

    pub fn kappa(&self) -> DeformSymbol {
        self.kind.kappa_symbol()
    }

    /// The two deformation symbols this case depends on.
    pub fn symbols(&self) -> [DeformSymbol; 2] {
        [self.theta().1, self.kappa()]
    }

    pub fn label(&self) -> String {
        format!("{}({},{},{})", self.kind, self.i, self.k, self.l)
    }
}

impl fmt::Display for TwistCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn eta(mu: usize, nu: usize) -> i128 {
    match (mu, nu) {
        (0, 0) => -1,
        (a, b) if a == b => 1,
        _ => 0,
    }
}

/// Coordinate functions `X^μ` and coordinate vector fields `∂/∂X^μ`
/// written in a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartFrame {
    pub chart: Chart,
    pub order: u32,
    /// `X^μ` as functions of the chart coordinates.
    pub coords: [Expr; 4],
    /// `∂/∂X^μ` as differential operators in the chart coordinates.
    pub vectors: [DiffOp; 4],
}

impl ChartFrame {
    pub fn new(chart: Chart, order: u32) -> Self {
        match chart {
            Chart::Minkowski => ChartFrame {
                chart,
                order,
                coords: core::array::from_fn(|j| Expr::coordinate(chart, order, j).expect("index in range")),
                vectors: core::array::from_fn(|j| DiffOp::partial(chart, order, j).expect("index in range")),
            },
            Chart::Rindler => Self::rindler(order),
        }
    }

    fn rindler(order: u32) -> Self {
        let chart = Chart::Rindler;
        let z = |j| Expr::coordinate(chart, order, j).expect("index in range");
        let d = |j| DiffOp::partial(chart, order, j).expect("index in range");
        let sinh = Expr::sinh_az0(order);
        let cosh = Expr::cosh_az0(order);
        let inv_az1 = &Expr::a_pow(order, -1) * &Expr::z1_pow(chart, order, -1);
        let lm = |op: &DiffOp, f: &Expr| op.left_mul(f).expect("same chart");
        let d_x0 = &lm(&d(0), &(&cosh * &inv_az1)) - &lm(&d(1), &sinh);
        let d_x1 = &lm(&d(1), &cosh) - &lm(&d(0), &(&sinh * &inv_az1));
        ChartFrame {
            chart,
            order,
            coords: [&z(1) * &sinh, &z(1) * &cosh, z(2), z(3)],
            vectors: [d_x0, d_x1, d(2), d(3)],
        }
    }

    /// Lower-index coordinate function `x_μ = η_μν X^ν`.
    pub fn lower(&self, mu: usize) -> Expr {
        self.coords[mu].scale(&int(eta(mu, mu)))
    }
}

/// `P_μ` and `M_μν` as differential operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub frame: ChartFrame,
    p: [DiffOp; 4],
    m: [[DiffOp; 4]; 4],
}

impl GeneratorSet {
    pub fn p(&self, mu: usize) -> &DiffOp {
        &self.p[mu]
    }

    pub fn m(&self, mu: usize, nu: usize) -> &DiffOp {
        &self.m[mu][nu]
    }

    pub fn chart(&self) -> Chart {
        self.frame.chart
    }

    pub fn order(&self) -> u32 {
        self.frame.order
    }

    /// Residuals `lhs - rhs` of every Poincaré bracket, labelled. All are
    /// zero when the representation is faithful to the algebra.
    pub fn bracket_residuals(&self) -> Result<Vec<(String, DiffOp)>, SymbolicError> {
        let i = imag(rational(1, 1));
        let mut out = Vec::new();
        let e = |a: usize, b: usize| int(eta(a, b));
        for mu in 0..4 {
            for nu in 0..4 {
                let lhs = self.p[mu].commutator(&self.p[nu])?;
                out.push((format!("[P{mu},P{nu}]"), lhs));
            }
        }
        for mu in 0..4 {
            for nu in 0..4 {
                for rho in 0..4 {
                    let lhs = self.m[mu][nu].commutator(&self.p[rho])?;
                    let rhs = (&self.p[mu].scale(&e(nu, rho)) - &self.p[nu].scale(&e(mu, rho))).scale(&i);
                    out.push((format!("[M{mu}{nu},P{rho}]"), &lhs - &rhs));
                }
            }
        }
        for mu in 0..4 {
            for nu in 0..4 {
                for rho in 0..4 {
                    for sigma in 0..4 {
                        let lhs = self.m[mu][nu].commutator(&self.m[rho][sigma])?;
                        let rhs = &(&(&self.m[nu][rho].scale(&e(mu, sigma)) - &self.m[mu][rho].scale(&e(nu, sigma)))
                            + &self.m[mu][sigma].scale(&e(nu, rho)))
                            - &self.m[nu][sigma].scale(&e(mu, rho));
                        out.push((format!("[M{mu}{nu},M{rho}{sigma}]"), &lhs - &rhs.scale(&i)));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `P_μ = i ∂/∂X^μ`, `M_μν = i(x_μ ∂/∂X^ν - x_ν ∂/∂X^μ)` in the given chart.
pub fn build_generators(chart: Chart, order: u32) -> GeneratorSet {
    let frame = ChartFrame::new(chart, order);
    let i = imag(rational(1, 1));
    let p: [DiffOp; 4] = core::array::from_fn(|mu| frame.vectors[mu].scale(&i));
    let m: [[DiffOp; 4]; 4] = core::array::from_fn(|mu| {
        core::array::from_fn(|nu| {
            let a = p[nu].left_mul(&frame.lower(mu)).expect("same chart");
            let b = p[mu].left_mul(&frame.lower(nu)).expect("same chart");
            &a - &b
        })
    });
    GeneratorSet { frame, p, m }
}

/// A twist `F = exp(Ω)` with its logarithm and inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistFactor {
    pub case: TwistCase,
    /// `Ω`, every term of deformation degree one.
    pub log: BiOp,
    /// `F = exp(Ω)`, truncated.
    pub factor: BiOp,
    /// `F⁻¹ = exp(-Ω)`, truncated; this is what the star product applies.
    pub inverse: BiOp,
}

impl TwistFactor {
    pub fn from_log(case: TwistCase, log: BiOp) -> Result<Self, SymbolicError> {
        let factor = log.exp_truncated()?;
        let inverse = (-&log).exp_truncated()?;
        Ok(TwistFactor {
            case,
            log,
            factor,
            inverse,
        })
    }

    pub fn chart(&self) -> Chart {
        self.log.chart()
    }

    pub fn order(&self) -> u32 {
        self.log.order()
    }
}

fn half(order: u32, symbol: DeformSymbol) -> GradedCoeff {
    GradedCoeff::symbol(order, symbol, real(rational(1, 2)))
}

fn theta_coeff(case: &TwistCase, order: u32) -> GradedCoeff {
    let (sign, sym) = case.theta();
    GradedCoeff::symbol(order, sym, int(sign))
}

/// Legs of the two wedges making up `X`: `(weight, left, right)`.
pub fn wedge_legs(case: &TwistCase, gens: &GeneratorSet) -> [(GradedCoeff, DiffOp, DiffOp); 2] {
    let n = gens.order();
    let (i, k, l) = case.indices();
    let (i, k, l) = (usize::from(i), usize::from(k), usize::from(l));
    let kappa = half(n, case.kappa());
    let theta = theta_coeff(case, n);
    match case.kind() {
        TwistKind::I => [
            (kappa, gens.p(k).clone(), gens.m(0, i).clone()),
            (theta, gens.p(k).clone(), gens.p(l).clone()),
        ],
        TwistKind::II => [
            (kappa, gens.p(0).clone(), gens.m(k, l).clone()),
            (theta, gens.p(0).clone(), gens.p(i).clone()),
        ],
        TwistKind::III => [
            (kappa, gens.p(i).clone(), gens.m(k, l).clone()),
            (theta, gens.p(0).clone(), gens.p(i).clone()),
        ],
    }
}

fn log_from_legs(legs: &[(GradedCoeff, DiffOp, DiffOp)]) -> Result<BiOp, SymbolicError> {
    let (_, a0, _) = &legs[0];
    let mut x = BiOp::zero(a0.chart(), a0.order());
    for (w, a, b) in legs {
        x = x.try_add(&BiOp::wedge(a, b)?.scale_graded(w))?;
    }
    Ok(x.scale(&imag(rational(1, 1))))
}

/// Twist logarithm `Ω = i·X` built from the generators of any chart. In the
/// Rindler chart this is the pullback of the Minkowski twist.
pub fn twist_log(case: &TwistCase, gens: &GeneratorSet) -> Result<BiOp, SymbolicError> {
    log_from_legs(&wedge_legs(case, gens))
}

/// Minkowski twist factor for the case at truncation order `order`.
pub fn build_minkowski_twist(case: &TwistCase, order: u32) -> Result<TwistFactor, TwistError> {
    let gens = build_generators(Chart::Minkowski, order);
    Ok(TwistFactor::from_log(*case, twist_log(case, &gens)?)?)
}

/// Twist factor in either chart via the generators of that chart.
pub fn build_twist(case: &TwistCase, chart: Chart, order: u32) -> Result<TwistFactor, TwistError> {
    let gens = build_generators(chart, order);
    Ok(TwistFactor::from_log(*case, twist_log(case, &gens)?)?)
}

/// Rindler legs `f_μ`, `g_0`, `g_1`, `z_j` used by the Z-factors.
struct RindlerLegs {
    f: [DiffOp; 4],
    g0: Expr,
    g1: Expr,
    z: [Expr; 4],
}

impl RindlerLegs {
    fn new(order: u32) -> Self {
        let frame = ChartFrame::new(Chart::Rindler, order);
        let i = imag(rational(1, 1));
        RindlerLegs {
            f: core::array::from_fn(|j| frame.vectors[j].scale(&i)),
            g0: frame.coords[0].clone(),
            g1: frame.coords[1].clone(),
            z: core::array::from_fn(|j| Expr::coordinate(Chart::Rindler, order, j).expect("index in range")),
        }
    }

    fn mul(&self, f: &Expr, op: &DiffOp) -> DiffOp {
        op.left_mul(f).expect("same chart")
    }

    /// `X^j`: `g1` for `j = 1`, otherwise `z_j` (`j ∈ {2, 3}`).
    fn spatial(&self, j: usize) -> &Expr {
        if j == 1 {
            &self.g1
        } else {
            &self.z[j]
        }
    }
}

/// The Rindler Z-factor written directly in terms of `f_0, f_1, g_0, g_1`
/// and `f_2 = i∂_{z2}`, `f_3 = i∂_{z3}`, branch by branch.
///
/// The bracket is `X_R` with `Z⁻¹ = exp(-i·X_R)`; the returned factor has
/// `log = i·X_R`.
pub fn build_rindler_zfactor(case: &TwistCase, order: u32) -> Result<TwistFactor, TwistError> {
    let r = RindlerLegs::new(order);
    let n = order;
    let (i, k, l) = case.indices();
    let (i, k, l) = (usize::from(i), usize::from(k), usize::from(l));
    let f = &r.f;
    let kappa = half(n, case.kappa());
    let theta = theta_coeff(case, n);
    let mut legs: Vec<(GradedCoeff, DiffOp, DiffOp)> = Vec::new();
    match case.kind() {
        TwistKind::I => {
            if k == 1 {
                legs.push((theta.clone(), f[1].clone(), f[l].clone()));
            }
            if l == 1 {
                legs.push((theta.clone(), f[k].clone(), f[1].clone()));
            }
            if k == 2 && l == 3 {
                legs.push((theta.clone(), f[2].clone(), f[3].clone()));
            }
            if k == 3 && l == 2 {
                legs.push((theta.clone(), f[3].clone(), f[2].clone()));
            }
            // boost leg -(X^i f_0 + g_0 f_i)
            let boost = |j: usize| -> DiffOp { -&(&r.mul(r.spatial(j), &f[0]) + &r.mul(&r.g0, &f[j])) };
            if k == 1 {
                legs.push((kappa.clone(), f[1].clone(), boost(i)));
            }
            if i == 1 {
                legs.push((kappa.clone(), f[k].clone(), boost(1)));
            }
            if k == 2 && i == 3 {
                legs.push((kappa.clone(), f[2].clone(), boost(3)));
            }
            if k == 3 && i == 2 {
                legs.push((kappa.clone(), f[3].clone(), boost(2)));
            }
        }
        TwistKind::II | TwistKind::III => {
            for j in 1..=3 {
                if i == j {
                    legs.push((theta.clone(), f[0].clone(), f[j].clone()));
                }
            }
            let left = if case.kind() == TwistKind::II {
                f[0].clone()
            } else {
                f[i].clone()
            };
            // rotation legs x_k f_l - x_l f_k, read branch by branch
            let rot = |a: usize, b: usize| -> DiffOp { &r.mul(r.spatial(a), &f[b]) - &r.mul(r.spatial(b), &f[a]) };
            if case.kind() == TwistKind::II {
                if k == 2 && l == 3 {
                    legs.push((kappa.clone(), left.clone(), rot(2, 3)));
                }
                if k == 3 && l == 2 {
                    legs.push((kappa.clone(), left.clone(), rot(3, 2)));
                }
            } else if i == 1 {
                legs.push((kappa.clone(), left.clone(), rot(k, l)));
            }
            if k == 1 {
                legs.push((
                    kappa.clone(),
                    left.clone(),
                    &r.mul(&r.g1, &f[l]) - &r.mul(&r.z[l], &f[1]),
                ));
            }
            if l == 1 {
                legs.push((
                    kappa.clone(),
                    left.clone(),
                    &r.mul(&r.z[k], &f[1]) - &r.mul(&r.g1, &f[k]),
                ));
            }
        }
    }
    let log = log_from_legs(&legs)?;
    Ok(TwistFactor::from_log(*case, log)?)
}

/// Difference between the pulled-back Minkowski twist logarithm and the
/// directly built Rindler Z-factor logarithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackReport {
    pub case: TwistCase,
    pub residual: BiOp,
}

impl PullbackReport {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn pullback_twist_check(case: &TwistCase) -> Result<PullbackReport, TwistError> {
    let pulled = build_twist(case, Chart::Rindler, 1)?;
    let direct = build_rindler_zfactor(case, 1)?;
    Ok(PullbackReport {
        case: *case,
        residual: pulled.log.try_sub(&direct.log)?,
    })
}

/// Pulled-back Minkowski metric together with the comparison against the
/// `g_00 = -a z1²` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    pub metric: [[Expr; 4]; 4],
    pub g00_alternative: Expr,
    pub g00_matches_alternative: bool,
    /// `g_00 - (-a z1²)`.
    pub g00_deviation: Expr,
}

/// `g_ab = η_μν ∂_a X^μ ∂_b X^ν` in Rindler coordinates.
pub fn rindler_metric() -> MetricReport {
    let order = 1;
    let frame = ChartFrame::new(Chart::Rindler, order);
    let jac: [[Expr; 4]; 4] =
        core::array::from_fn(|mu| core::array::from_fn(|a| frame.coords[mu].diff(a).expect("index in range")));
    let metric: [[Expr; 4]; 4] = core::array::from_fn(|a| {
        core::array::from_fn(|b| {
            let mut acc = Expr::zero(Chart::Rindler, order);
            for (mu, row) in jac.iter().enumerate() {
                let term = (&row[a] * &row[b]).scale(&int(eta(mu, mu)));
                acc = &acc + &term;
            }
            acc
        })
    });
    let z1 = Expr::z1_pow(Chart::Rindler, order, 1);
    let alt = -&(&Expr::a_pow(order, 1) * &(&z1 * &z1));
    let dev = &metric[0][0] - &alt;
    MetricReport {
        g00_matches_alternative: dev.is_zero(),
        g00_deviation: dev,
        g00_alternative: alt,
        metric,
    }
}

/// Non-Abelian control: case I with the boost leg `M_0i` replaced by `M_0k`,
/// which does not commute with `P_k`.
pub fn non_abelian_control_log(case: &TwistCase, gens: &GeneratorSet) -> Result<BiOp, SymbolicError> {
    let mut legs = wedge_legs(case, gens);
    let (_, k, _) = case.indices();
    let k = usize::from(k);
    legs[0].1 = gens.p(k).clone();
    legs[0].2 = gens.m(0, k).clone();
    log_from_legs(&legs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Assignment;

    #[test]
    fn index_validation() {
        assert!(TwistCase::new(TwistKind::I, 1, 2, 3).is_ok());
        assert_eq!(
            TwistCase::new(TwistKind::I, 1, 1, 3),
            Err(TwistError::InvalidIndices(1, 1, 3))
        );
        assert_eq!(
            TwistCase::new(TwistKind::II, 2, 3, 3),
            Err(TwistError::InvalidIndices(2, 3, 3))
        );
        assert!(TwistCase::new(TwistKind::III, 0, 1, 2).is_err());
        assert_eq!(TwistCase::all().len(), 18);
    }

    #[test]
    fn minkowski_generators_act_on_coordinates() {
        let g = build_generators(Chart::Minkowski, 1);
        let x = &g.frame.coords;
        assert_eq!(
            g.p(1).apply(&x[1]).unwrap(),
            Expr::constant(Chart::Minkowski, 1, imag(rational(1, 1)))
        );
        // M_10 x0 = i x1
        assert_eq!(g.m(1, 0).apply(&x[0]).unwrap(), x[1].scale(&imag(rational(1, 1))));
    }

    #[test]
    fn rindler_p0_is_f0_and_acts_on_g0() {
        let g = build_generators(Chart::Rindler, 1);
        let g0 = &g.frame.coords[0];
        let g1 = &g.frame.coords[1];
        assert_eq!(
            g.p(0).apply(g0).unwrap(),
            Expr::constant(Chart::Rindler, 1, imag(rational(1, 1)))
        );
        assert!(g.p(1).apply(g0).unwrap().is_zero());
        assert!(g.p(0).apply(g1).unwrap().is_zero());
        let v = g
            .p(0)
            .apply(g0)
            .unwrap()
            .eval(&Assignment::new([0.3, 1.7, 0.0, 0.0], 2.0))
            .unwrap();
        assert_eq!(v.im, 1.0);
    }

    #[test]
    fn poincare_brackets_hold_in_both_charts() {
        for chart in [Chart::Minkowski, Chart::Rindler] {
            let g = build_generators(chart, 1);
            for (name, r) in g.bracket_residuals().unwrap() {
                assert!(r.is_zero(), "{chart} {name}: {r}");
            }
        }
    }

    #[test]
    fn case_one_exponent_shape() {
        let case = TwistCase::new(TwistKind::I, 1, 2, 3).unwrap();
        let t = build_minkowski_twist(&case, 1).unwrap();
        assert!(t.log.terms().all(|(_, d, _)| d.total() == 1));
        assert_eq!(t.inverse, &BiOp::identity(Chart::Minkowski, 1) - &t.log);
    }

    #[test]
    fn classical_limit_is_identity() {
        for case in TwistCase::all() {
            let t = build_minkowski_twist(&case, 2).unwrap();
            let mut classical = BiOp::zero(Chart::Minkowski, 2);
            for (s, d, v) in t.inverse.terms() {
                if d.total() == 0 {
                    classical = &classical
                        + &{
                            let mut b = BiOp::zero(Chart::Minkowski, 2);
                            b.push(*s, *d, *v);
                            b
                        };
                }
            }
            assert_eq!(classical, BiOp::identity(Chart::Minkowski, 2));
        }
    }

    #[test]
    fn pullback_matches_z_factor() {
        for case in TwistCase::all() {
            let r = pullback_twist_check(&case).unwrap();
            assert!(r.is_zero(), "{case}: {}", r.residual);
        }
    }

    #[test]
    fn distinct_cases_do_not_match() {
        let a = build_twist(&TwistCase::new(TwistKind::I, 1, 2, 3).unwrap(), Chart::Rindler, 1).unwrap();
        let b = build_rindler_zfactor(&TwistCase::new(TwistKind::II, 1, 2, 3).unwrap(), 1).unwrap();
        assert!(!(&a.log - &b.log).is_zero());
    }

    #[test]
    fn wedge_legs_commute() {
        for chart in [Chart::Minkowski, Chart::Rindler] {
            let g = build_generators(chart, 1);
            for case in TwistCase::all() {
                for (_, a, b) in wedge_legs(&case, &g) {
                    assert!(a.commutator(&b).unwrap().is_zero(), "{case} {chart}");
                }
            }
        }
    }

    #[test]
    fn metric_is_pulled_back() {
        let m = rindler_metric();
        let z1 = Expr::z1_pow(Chart::Rindler, 1, 1);
        let g00 = -&(&Expr::a_pow(1, 2) * &(&z1 * &z1));
        assert_eq!(m.metric[0][0], g00);
        for a in 1..4 {
            assert_eq!(m.metric[a][a], Expr::one(Chart::Rindler, 1));
        }
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    assert!(m.metric[a][b].is_zero());
                }
                assert!(m.metric[a][b].independent_of(0));
            }
        }
        assert!(!m.g00_matches_alternative);
    }
}
