use proptest::prelude::*;

use orbistar_core::deformation::{dunkl_product, DunklElement};
use orbistar_core::exact::twist_poly;
use orbistar_core::verify::{monomial_triples, monomials_up_to};
use orbistar_core::{
    circle_product, crossed_star, moyal_star, twist, OrbifoldElement, ParamPoly, Scalar, Term,
    YPoly,
};

fn param() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((0u32..3, 0u32..3, -4i64..5, 1i64..4), 0..4).prop_map(|ts| {
        ParamPoly::from_terms(ts.into_iter().map(|(h, u, n, d)| ([h, u], Scalar::new(n, d))))
    })
}

fn ypoly() -> impl Strategy<Value = YPoly> {
    prop::collection::vec((0u32..4, 0u32..4, param()), 0..4)
        .prop_map(|ts| YPoly::from_terms(ts.into_iter().map(|(a, b, c)| ([a, b], c))))
}

fn element() -> impl Strategy<Value = OrbifoldElement> {
    (ypoly(), ypoly()).prop_map(|(a, b)| OrbifoldElement::new(a, b))
}

fn small_element() -> impl Strategy<Value = OrbifoldElement> {
    prop::collection::vec((0u32..3, 0u32..3, -3i64..4, 0u32..2, 0u32..2), 1..3).prop_map(|ts| {
        OrbifoldElement::from_terms(ts.into_iter().map(|(a, b, c, r, h)| Term {
            coeff: Scalar::from_int(c),
            hbar_pow: h,
            u_pow: 0,
            y1_pow: a,
            y2_pow: b,
            r_pow: r,
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn param_ring_axioms(a in param(), b in param(), c in param()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ypoly_ring_axioms(a in ypoly(), b in ypoly(), c in ypoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn twist_is_involutive_homomorphism(x in element(), f in ypoly(), g in ypoly()) {
        prop_assert_eq!(twist(&twist(&x)), x);
        prop_assert_eq!(twist_poly(&(&f * &g)), &twist_poly(&f) * &twist_poly(&g));
    }

    #[test]
    fn twist_is_star_automorphism(f in ypoly(), g in ypoly()) {
        let lhs = twist_poly(&moyal_star(&f, &g));
        prop_assert_eq!(lhs, moyal_star(&twist_poly(&f), &twist_poly(&g)));
    }

    #[test]
    fn r_conjugation_covariance(a in small_element(), b in small_element()) {
        let r = OrbifoldElement::r();
        let conj = |x: &OrbifoldElement| crossed_star(&r, &crossed_star(x, &r));
        prop_assert_eq!(conj(&crossed_star(&a, &b)), crossed_star(&conj(&a), &conj(&b)));
        prop_assert_eq!(conj(&circle_product(&a, &b)), circle_product(&conj(&a), &conj(&b)));
    }

    #[test]
    fn star_is_undeformed_at_zero_hbar(f in ypoly(), g in ypoly()) {
        let zero = Scalar::zero();
        let lhs = moyal_star(&f, &g).evaluate_params(Some(&zero), None);
        let rhs = (&f * &g).evaluate_params(Some(&zero), None);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn circle_is_polynomial_in_u(a in small_element(), b in small_element()) {
        let p = circle_product(&a, &b);
        let bound = a.y_degree().unwrap_or(0).min(b.y_degree().unwrap_or(0));
        for t in p.terms() {
            prop_assert!(t.u_pow <= bound);
        }
    }
}

#[test]
fn moyal_associative_up_to_degree_six() {
    let m = |a: [u32; 2]| YPoly::monomial(a[0], a[1]);
    for [a, b, c] in monomial_triples(6) {
        let (a, b, c) = (m(a), m(b), m(c));
        let l = moyal_star(&moyal_star(&a, &b), &c);
        let r = moyal_star(&a, &moyal_star(&b, &c));
        assert_eq!(l, r);
    }
}

#[test]
fn crossed_star_associative_up_to_degree_five() {
    for [a, b, c] in orbistar_core::verify::graded_monomial_triples(5) {
        let g = |x: ([u32; 2], u32)| OrbifoldElement::graded(YPoly::monomial(x.0[0], x.0[1]), x.1);
        let (a, b, c) = (g(a), g(b), g(c));
        assert_eq!(
            crossed_star(&crossed_star(&a, &b), &c),
            crossed_star(&a, &crossed_star(&b, &c))
        );
    }
}

#[test]
fn dunkl_even_times_even_is_pointwise() {
    for a in monomials_up_to(4) {
        for b in monomials_up_to(4) {
            if a[0] % 2 == 0 && b[0] % 2 == 0 {
                let (x, y) = (DunklElement::monomial(a[0], a[1], 0), DunklElement::monomial(b[0], b[1], 0));
                let expect = DunklElement::monomial(a[0] + b[0], a[1] + b[1], 0);
                assert_eq!(dunkl_product(&x, &y), expect);
            }
        }
    }
}
