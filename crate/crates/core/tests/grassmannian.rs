use fanomirror::grassmannian::{
    build_rectangles_network, check_short_plucker_relations, nobody_polytope, superpotential_chart, theta_restriction,
    verify_valuations,
};
use fanomirror::young::{boundary_rectangle, schur_dimension, BoxContext};
use num_bigint::BigUint;

fn contexts(max_n: usize) -> impl Iterator<Item = BoxContext> {
    (2..=max_n).flat_map(|n| (1..n).map(move |k| BoxContext::new(k, n).unwrap()))
}

#[test]
fn flow_coefficients_are_one_up_to_n6() {
    for ctx in contexts(6) {
        let net = build_rectangles_network(ctx);
        for lambda in ctx.diagrams() {
            let f = net.flow_polynomial(&lambda);
            assert!(!f.is_zero());
            assert!(f.terms().all(|(_, c)| c.is_one()), "Gr({},{}) {lambda}", ctx.k(), ctx.n());
            assert_eq!(f.num_terms() as u64, net.flow_count(&lambda));
        }
    }
}

#[test]
fn lgv_minor_matches_flows_up_to_n6() {
    for ctx in contexts(6) {
        let net = build_rectangles_network(ctx);
        for lambda in ctx.diagrams() {
            assert_eq!(net.path_matrix_minor(&lambda), net.flow_polynomial(&lambda), "{lambda}");
        }
    }
}

#[test]
fn frozen_denominators_divide_up_to_n6() {
    for ctx in contexts(6) {
        let net = build_rectangles_network(ctx);
        for i in 0..ctx.n() {
            assert!(net.flow_polynomial(&boundary_rectangle(i, ctx)).as_monomial().is_some());
            let theta = theta_restriction(&net, i).unwrap();
            assert!(theta.terms().all(|(_, c)| c.is_one()));
        }
    }
}

#[test]
fn valuations_clean_up_to_n6() {
    for ctx in contexts(6) {
        let report = verify_valuations(&build_rectangles_network(ctx)).unwrap();
        assert!(report.is_clean(), "Gr({},{}): {:?} {:?}", ctx.k(), ctx.n(), report.row_mismatches(), report.pairing_mismatches());
    }
}

#[test]
fn plucker_relations_gr2n_and_gr36() {
    for (k, n) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let net = build_rectangles_network(BoxContext::new(k, n).unwrap());
        let (failures, checked) = check_short_plucker_relations(&net).unwrap();
        assert!(checked > 0);
        assert!(failures.is_empty(), "Gr({k},{n}): {failures:?}");
    }
}

#[test]
fn superpotential_has_one_q_term() {
    for ctx in contexts(6) {
        let w = superpotential_chart(&build_rectangles_network(ctx)).unwrap();
        let q_terms: Vec<_> = w.terms().filter(|(_, c)| c.degree() != Some(0)).collect();
        assert_eq!(q_terms.len(), 1, "Gr({},{})", ctx.k(), ctx.n());
        assert!(w.terms().all(|(_, c)| c.degree().unwrap() <= 1 && c.is_nonnegative_integral()));
    }
}

#[test]
fn gr25_polytope_matches_hook_content() {
    let ctx = BoxContext::new(2, 5).unwrap();
    let p = nobody_polytope(&build_rectangles_network(ctx)).unwrap();
    assert!(p.geometry_flags().all());
    assert_eq!(BigUint::from(p.lattice_point_count(1).unwrap()), schur_dimension(&[5, 5, 5], 5).unwrap());
}

#[test]
fn projective_space_polytopes() {
    // Gr(1,n) is P^{n-1}; its polytope's r-th dilation has binomial(nr + n - 1, n - 1) points
    for n in 2..=5usize {
        let ctx = BoxContext::new(1, n).unwrap();
        let p = nobody_polytope(&build_rectangles_network(ctx)).unwrap();
        assert!(p.geometry_flags().all());
        for r in 1..=2usize {
            let want = schur_dimension(&[n * r], n).unwrap();
            assert_eq!(BigUint::from(p.lattice_point_count(r as u32).unwrap()), want, "n={n} r={r}");
        }
    }
}
