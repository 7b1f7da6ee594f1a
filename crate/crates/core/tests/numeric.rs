use proptest::prelude::*;

use semiheap_core::numeric::*;

fn chart(kind: ChartKind) -> MatrixHeapChart {
    MatrixHeapChart::new(kind)
}

fn r1(x: f64) -> Matrix {
    Matrix::column(&[x])
}

#[test]
fn heap_product_special_cases() {
    let c = chart(ChartKind::UpperTriangular2);
    let g = Matrix::from_rows(&[[2.0, 1.0], [0.0, -0.5]]);
    let i = c.basepoint();
    assert_eq!(c.mu(&g, &g, &g).unwrap(), g);
    let inv = c.mu(&i, &g, &i).unwrap();
    assert_eq!(inv, Matrix::from_rows(&[[0.5, 1.0], [0.0, -2.0]]));
}

#[test]
fn para_associativity_on_every_chart() {
    for kind in ChartKind::BUNDLED {
        let r = check_para_associative_numeric(&chart(kind), 200, 42, ALGEBRAIC_TOL).unwrap();
        assert!(r.pass, "{kind}: {r}");
        let m = membership_check(&chart(kind), 200, 42, EXACT_TOL).unwrap();
        assert!(m.pass, "{kind}: {m}");
    }
    for n in 1..=3 {
        let r = check_para_associative_numeric(&chart(ChartKind::Euclidean(n)), 200, 1, 4.0 * f64::EPSILON).unwrap();
        assert!(r.pass, "{r}");
    }
}

#[test]
fn pushforward_on_affine_space_is_the_identity() {
    let c = chart(ChartKind::Euclidean(2));
    let pts = sample_points(&c, 4, 3);
    let v = Matrix::column(&[0.25, -1.0]);
    let p = dl(&c, &pts[0], &pts[1], &pts[2], &v, 1e-5).unwrap();
    assert_eq!(p.analytic, v);
    assert!(p.residual < 1e-9);
}

#[test]
fn so3_pushforward_and_invariance() {
    let c = chart(ChartKind::So3);
    let r = pushforward_check(&c, 100, 42, 1e-5, FINITE_DIFFERENCE_TOL).unwrap();
    assert!(r.pass, "{r}");
    let e1 = so3_basis()[0].clone();
    let r = left_invariance_check(&c, &e1, 100, 42, FINITE_DIFFERENCE_TOL).unwrap();
    assert!(r.pass, "{r}");
    for kind in [ChartKind::So3, ChartKind::UpperTriangular2, ChartKind::So2, ChartKind::Euclidean(2)] {
        let c = chart(kind);
        let v = c.tangent_basis()[0].clone();
        let r = compare_group_vs_heap_invariance(&c, &v, 100, 7, FINITE_DIFFERENCE_TOL).unwrap();
        assert!(r.pass, "{kind}: {r}");
    }
}

#[test]
fn second_order_convergence() {
    for kind in [ChartKind::So3, ChartKind::UpperTriangular2] {
        let conv = convergence_ratio(&chart(kind), 50, 42, 1e-3).unwrap();
        assert!((3.5..=4.5).contains(&conv.ratio), "{kind}: {conv:?}");
    }
}

#[test]
fn brackets() {
    let c = chart(ChartKind::So3);
    let [e1, e2, e3] = so3_basis();
    assert_eq!(c.bracket(&e1, &e2), e3);
    let r = bracket_closure(&c, &e1, &e2, 50, 42, BRACKET_TOL).unwrap();
    assert!(r.pass, "{r}");
    let r = bracket_closure(&c, &e2, &e3, 20, 43, BRACKET_TOL).unwrap();
    assert!(r.pass, "{r}");
    let flat = chart(ChartKind::Euclidean(3));
    let basis = flat.tangent_basis();
    let r = bracket_closure(&flat, &basis[0], &basis[1], 20, 1, 1e-12).unwrap();
    assert!(r.pass, "{r}");
    let ut = chart(ChartKind::UpperTriangular2);
    let b = ut.tangent_basis();
    let r = bracket_closure(&ut, &b[0], &b[1], 20, 2, BRACKET_TOL).unwrap();
    assert!(r.pass, "{r}");
}

#[test]
fn multiplicative_functions() {
    let line = chart(ChartKind::Euclidean(1));
    let mut triples = vec![[r1(1.0), r1(0.0), r1(1.0)]];
    triples.extend(sample_triples(&line, 100, 42));
    let zero = multiplicative_function_check(&line, &|_| 0.0, &triples, true, 42, EXACT_TOL).unwrap();
    assert!(zero.pass);
    let linear = ScalarField::linear(&[3.5]);
    let r = multiplicative_function_check(&line, &|x| linear.eval(x), &triples, true, 42, EXACT_TOL).unwrap();
    assert!(r.pass, "{r}");
    let sq = multiplicative_function_check(&line, &|x| x[(0, 0)] * x[(0, 0)], &triples, true, 42, EXACT_TOL).unwrap();
    assert!(!sq.pass);
    assert_eq!(sq.witness.as_deref(), Some("x=[1] y=[0] z=[1] lhs=4 rhs=2"));
    let shifted = multiplicative_function_check(&line, &|x| x[(0, 0)] + 1.0, &triples[..1], true, 42, EXACT_TOL).unwrap();
    assert_eq!(shifted.witness.as_deref(), Some("f(x0)=1"));
}

#[test]
fn multiplicative_vector_fields() {
    let line = chart(ChartKind::Euclidean(1));
    let triples: Vec<[Matrix; 3]> =
        sample_triples(&line, 50, 42).into_iter().map(|t| t.map(|m| m.scale(0.5))).collect();
    let constant = multiplicative_vector_field_check(&line, &|_| r1(0.7), &triples, &FLOW_TIMES, 42, FINITE_DIFFERENCE_TOL).unwrap();
    assert!(constant.pass, "{constant}");
    let linear = multiplicative_vector_field_check(&line, &|x| x.clone(), &triples, &FLOW_TIMES, 42, FINITE_DIFFERENCE_TOL).unwrap();
    assert!(linear.pass, "{linear}");
    let square = |x: &Matrix| r1(x[(0, 0)] * x[(0, 0)]);
    let r = multiplicative_vector_field_check(&line, &square, &triples, &FLOW_TIMES, 42, FINITE_DIFFERENCE_TOL).unwrap();
    assert!(!r.pass);
    assert!(r.witness.as_deref().unwrap().starts_with("x=["));
    assert!(r.max_residual > 1e-3);
}

#[test]
fn tangent_lift() {
    for kind in [ChartKind::So3, ChartKind::UpperTriangular2, ChartKind::Euclidean(3), ChartKind::NonzeroReals] {
        let r = tangent_semiheap_check(&chart(kind), 100, 42, FINITE_DIFFERENCE_TOL).unwrap();
        assert!(r.pass, "{kind}: {r}");
    }
    let c = chart(ChartKind::So3);
    let g = sample_points(&c, 3, 9);
    let z = Matrix::zeros(3, 3);
    assert_eq!(c.dmu([&g[0], &g[1], &g[2]], [&z, &z, &z]).unwrap(), z);
}

#[test]
fn coalgebra_identities() {
    for (kind, vars) in [(ChartKind::So3, 9), (ChartKind::Euclidean(3), 3), (ChartKind::UpperTriangular2, 4)] {
        let c = chart(kind);
        let mut rng = rng(11);
        for degree in 0..=3 {
            let f1 = ScalarField::random(&mut rng, vars, degree, 10);
            let f2 = ScalarField::random(&mut rng, vars, degree, 10);
            let r = coassociativity_check(&c, &f1, &f2, 100, 42, COALGEBRA_TOL).unwrap();
            assert!(r.pass, "{kind} degree {degree}: {r}");
        }
        let one = ScalarField::constant(vars, 1.0);
        let r = coassociativity_check(&c, &one, &one, 20, 1, 0.0).unwrap();
        assert!(r.pass, "{r}");
    }
    let flat = chart(ChartKind::Euclidean(3));
    for i in 0..3 {
        let x = ScalarField::coordinate(3, i);
        assert!(coassociativity_check(&flat, &x, &x, 50, 5, 1e-15).unwrap().pass);
    }
}

#[test]
fn euclidean_and_exponential() {
    for n in 1..=4 {
        let r = euclidean_semiheap_check(n, 1000, 42, EXACT_TOL);
        assert!(r.pass, "{r}");
    }
    let r = exp_hom_check(1000, 42, EXACT_TOL);
    assert!(r.pass, "{r}");
    assert_eq!(r.samples, 1000);
}

#[test]
fn reports_are_reproducible() {
    let c = chart(ChartKind::So3);
    let a = check_para_associative_numeric(&c, 30, 5, ALGEBRAIC_TOL).unwrap();
    let b = check_para_associative_numeric(&c, 30, 5, ALGEBRAIC_TOL).unwrap();
    assert_eq!(a.to_string(), b.to_string());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn heap_laws_hold_for_any_seed(seed in any::<u64>(), k in 0usize..ChartKind::BUNDLED.len()) {
        let c = chart(ChartKind::BUNDLED[k]);
        let r = check_para_associative_numeric(&c, 10, seed, ALGEBRAIC_TOL).unwrap();
        prop_assert!(r.pass, "{}", r);
        let t = tangent_semiheap_check(&c, 5, seed, FINITE_DIFFERENCE_TOL).unwrap();
        prop_assert!(t.pass, "{}", t);
    }

    #[test]
    fn solve_inverts_products(seed in any::<u64>()) {
        let c = chart(ChartKind::UpperTriangular2);
        let pts = sample_points(&c, 2, seed);
        let prod = &pts[0] * &pts[1];
        let back = pts[0].solve(&prod).unwrap();
        prop_assert!(relative(&back, &pts[1]) < 1e-12);
    }
}
