use num_complex::Complex64;
use proptest::prelude::*;

use rindler_twist_core::spectra::{
    correction_closed_form, gamma_complex, power_spectrum_base, quadrature_oracle, ModeSum, ModeTerm, PhysParams,
    QuadConfig, TwistedMode,
};
use rindler_twist_core::star::StarProduct;
use rindler_twist_core::symbolic::{int, rational, real, Assignment, Multidegree};
use rindler_twist_core::{Chart, DeformSymbol, DeformValues, Expr, Monomial, TwistCase};

fn chart_strategy() -> impl Strategy<Value = Chart> {
    prop_oneof![Just(Chart::Minkowski), Just(Chart::Rindler)]
}

fn case_strategy() -> impl Strategy<Value = TwistCase> {
    (0usize..18).prop_map(|j| TwistCase::all()[j])
}

fn term_strategy(chart: Chart) -> impl Strategy<Value = (Monomial, Multidegree, i64, i64)> {
    let z1_lo = if chart == Chart::Rindler { -1 } else { 0 };
    let transcendental = if chart == Chart::Rindler { 1 } else { 0 };
    (
        (0..3i32, z1_lo..3i32, 0..2i32, 0..2i32),
        -transcendental..=transcendental,
        -transcendental..=transcendental,
        prop::option::of(0usize..9),
        -4i64..5,
        1i64..4,
    )
        .prop_map(|((z0, z1, z2, z3), a, exp, sym, num, den)| {
            let m = Monomial {
                z: [z0, z1, z2, z3],
                a,
                exp,
            };
            let d = sym.map_or(Multidegree::ZERO, |s| Multidegree::of(DeformSymbol::from_index(s)));
            (m, d, num, den)
        })
}

fn expr_strategy(chart: Chart, order: u32) -> impl Strategy<Value = Expr> {
    prop::collection::vec(term_strategy(chart), 0..4).prop_map(move |terms| {
        let mut e = Expr::zero(chart, order);
        for (m, d, num, den) in terms {
            let t = Expr::term(chart, order, m, d, real(rational(num.into(), den.into()))).unwrap();
            e = &e + &t;
        }
        e
    })
}

fn chart_and_exprs(n: usize) -> impl Strategy<Value = (Chart, Vec<Expr>)> {
    chart_strategy().prop_flat_map(move |c| (Just(c), prop::collection::vec(expr_strategy(c, 2), n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((_, e) in chart_and_exprs(3)) {
        let (f, g, h) = (&e[0], &e[1], &e[2]);
        prop_assert_eq!(f * g, g * f);
        prop_assert_eq!(&(f * g) * h, f * &(g * h));
        prop_assert_eq!(f * &(g + h), &(f * g) + &(f * h));
        prop_assert!((f - f).is_zero());
    }

    #[test]
    fn leibniz_rule((_, e) in chart_and_exprs(2), var in 0usize..4) {
        let (f, g) = (&e[0], &e[1]);
        let lhs = (f * g).diff(var).unwrap();
        let rhs = &(&f.diff(var).unwrap() * g) + &(f * &g.diff(var).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials_commute((_, e) in chart_and_exprs(1), u in 0usize..4, v in 0usize..4) {
        let f = &e[0];
        prop_assert_eq!(f.diff(u).unwrap().diff(v).unwrap(), f.diff(v).unwrap().diff(u).unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism((_, e) in chart_and_exprs(2), z0 in -1.0..1.0f64, z1 in 0.5..2.0f64) {
        let at = Assignment::new([z0, z1, 0.7, -1.3], 1.4)
            .with_deform(DeformValues([0.1, -0.2, 0.3, 0.05, 0.4, -0.15, 0.25, 0.6, -0.35]));
        let (f, g) = (&e[0], &e[1]);
        let fg = (f * g).eval(&at).unwrap();
        let direct = f.eval(&at).unwrap() * g.eval(&at).unwrap();
        // products of two degree-one terms survive at order 2, so this is exact
        prop_assert!((fg - direct).norm() <= 1e-9 * (1.0 + direct.norm()));
    }

    #[test]
    fn truncation_drops_high_degrees((_, e) in chart_and_exprs(2)) {
        let p = &(&e[0] * &e[1]) * &e[0];
        prop_assert!(p.terms().all(|(_, d, _)| d.total() <= 2));
        prop_assert_eq!(p.with_order(1), (&e[0].with_order(1) * &e[1].with_order(1)) * e[0].with_order(1));
    }

    #[test]
    fn star_unit(case in case_strategy(), (chart, e) in chart_and_exprs(1)) {
        let star = StarProduct::new(&case, chart, 2).unwrap();
        let one = Expr::one(chart, 2);
        prop_assert_eq!(star.product(&e[0], &one).unwrap(), e[0].clone());
        prop_assert_eq!(star.product(&one, &e[0]).unwrap(), e[0].clone());
    }

    #[test]
    fn star_commutator_antisymmetric(case in case_strategy(), (chart, e) in chart_and_exprs(2)) {
        let star = StarProduct::new(&case, chart, 2).unwrap();
        let ab = star.commutator(&e[0], &e[1]).unwrap();
        let ba = star.commutator(&e[1], &e[0]).unwrap();
        prop_assert_eq!(ab, -ba);
    }

    #[test]
    fn star_product_is_classical_at_degree_zero(case in case_strategy(), (chart, e) in chart_and_exprs(2)) {
        let star = StarProduct::new(&case, chart, 1).unwrap();
        let f = e[0].with_order(1);
        let g = e[1].with_order(1);
        let p = star.product(&f, &g).unwrap();
        prop_assert_eq!(p.homogeneous(0), (&f * &g).homogeneous(0));
    }
}

fn domain_point() -> impl Strategy<Value = Complex64> {
    (-10.0..10.0f64, -20.0..20.0f64)
        .prop_filter("away from poles", |(re, im)| {
            im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3
        })
        .prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gamma_recurrence(w in domain_point()) {
        let g = gamma_complex(w).unwrap();
        let g1 = gamma_complex(w + 1.0).unwrap();
        let ratio = g1 / (w * g);
        prop_assert!((ratio - 1.0).norm() < 1e-12, "w={w} ratio={ratio}");
    }

    #[test]
    fn gamma_conjugate_symmetry(w in domain_point()) {
        let g = gamma_complex(w).unwrap();
        let gc = gamma_complex(w.conj()).unwrap();
        prop_assert!((gc - g.conj()).norm() <= 1e-12 * g.norm());
    }

    #[test]
    fn spectrum_scaling(a in 0.2..5.0f64, w in 0.05..5.0f64, s in 0.2..5.0f64) {
        let p = PhysParams::new(a, 1.0, 1.0).unwrap();
        let q = PhysParams::new(s * a, 1.0, 1.0).unwrap();
        let lhs = power_spectrum_base(w, &p).unwrap();
        let rhs = power_spectrum_base(s * w, &q).unwrap() * s;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs);
    }

    #[test]
    fn spectrum_planck_identity(a in 0.2..5.0f64, w in 0.05..5.0f64) {
        let p = PhysParams::new(a, 1.0, 1.0).unwrap();
        let b = power_spectrum_base(w, &p).unwrap();
        let t = p.temperature();
        let alt = (1.0 / t) / (libm::exp(w / t) - 1.0);
        prop_assert!((b - alt).abs() <= 1e-12 * b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn correction_linear_in_deformation(
        case in case_strategy(),
        values in prop::array::uniform9(-1.0..1.0f64),
        w in 0.2..5.0f64,
    ) {
        let p = PhysParams::new(1.3, 0.9, 1.1).unwrap().with_transverse(0.4, -0.8).with_deform(DeformValues(values));
        let p2 = p.with_deform(DeformValues(values).scaled(2.0));
        let c1 = TwistedMode::new(&case, &p).unwrap().transform(-w).unwrap().correction;
        let c2 = TwistedMode::new(&case, &p2).unwrap().transform(-w).unwrap().correction;
        prop_assert!((c2 - c1 * 2.0).norm() <= 1e-13 * (1.0 + c1.norm()));
        let closed = correction_closed_form(&case, -w, &p);
        prop_assert!((c1 - closed).norm() <= 1e-12 * (1.0 + closed.norm()));
    }

    #[test]
    fn oracle_is_linear(c1 in -2.0..2.0f64, c2 in -2.0..2.0f64, w in 0.2..5.0f64) {
        let p = PhysParams::default();
        let cfg = QuadConfig::default();
        let mut sum = ModeSum::default();
        sum.push(ModeTerm { coeff: Complex64::new(c1, 0.0), p: 0, q: 0, r: 0, n: 1 });
        sum.push(ModeTerm { coeff: Complex64::new(0.0, c2), p: 1, q: -1, r: 1, n: 2 });
        let total = sum.integrate(-w, &p, |n| quadrature_oracle(n, -w, &p, &cfg)).unwrap();
        let manual = quadrature_oracle(1, -w, &p, &cfg).unwrap() * c1
            + quadrature_oracle(2, -w, &p, &cfg).unwrap() * Complex64::new(0.0, c2) * (-w);
        prop_assert!((total - manual).norm() <= 1e-12 * (1.0 + manual.norm()));
    }
}

#[test]
fn integer_constants_render() {
    assert_eq!(Expr::constant(Chart::Minkowski, 1, int(2)).to_ascii(), "2");
}
