mod common;

use common::*;
use knotsum::field::Field;
use knotsum::functor::{
    correction_exponent, curl_exponents, curl_values, evaluate_functor, knot_invariant, knot_invariant_checked,
    long_knot_data,
};
use knotsum::linmap::compose;
use knotsum::rmatrix::RMatrixPackage;
use knotsum::tangle::corpus::{all_diagrams, braid_word, long_knots, CLOSED_FIGURE_EIGHT, CLOSED_TREFOIL};
use knotsum::tangle::{connected_components, insert_kink, parse_tangle, writhe_winding, KinkKind, TangleWord};
use proptest::prelude::*;

fn pairs_agree<S: Field>(pkg: &RMatrixPackage<S>, pairs: &[WordPair]) {
    for (name, a, b) in pairs {
        for k in [0, 1] {
            assert_eq!(
                evaluate_functor(pkg, k, a).unwrap(),
                evaluate_functor(pkg, k, b).unwrap(),
                "{name} at k = {k}"
            );
        }
    }
}

#[test]
fn reidemeister_pairs_small_packages() {
    let rii = rii_pairs();
    // Three-strand slides keep the Sweedler object (dimension 16) cheap.
    let riii: Vec<WordPair> = riii_pairs(5, 20).into_iter().filter(|(_, a, _)| a.dom().len() <= 3).collect();
    for name in ["trivial", "group_z2", "functions_z2"] {
        let pkg = rho_package(&hopf_q(name), 0);
        pairs_agree(&pkg, &rii);
        pairs_agree(&pkg, &riii);
    }
    pairs_agree(&rho_package(&hopf_fp("sweedler"), 0), &riii);
}

#[test]
fn sweedler_curls_are_omega_powers() {
    let pkg = rho_package(&hopf_fp("sweedler"), 0);
    assert!(!pkg.omega.is_identity());
    for k in -1..=2 {
        let curls = curl_values(&pkg, k).unwrap();
        for (c, e) in curls.iter().zip(curl_exponents(k)) {
            assert_eq!(*c, pkg.omega_pow(e).unwrap(), "k = {k}, exponent {e}");
        }
    }
}

#[test]
fn sweedler_invariant_ignores_kinks_and_framing() {
    let pkg = rho_package(&hopf_fp("sweedler"), 0);
    let unknot = knot_invariant(&pkg, &parse_tangle("u").unwrap(), 0).unwrap();
    assert!(unknot.is_identity());
    for (name, w) in long_knots() {
        let base = knot_invariant_checked(&pkg, &w, &[-1, 0, 1, 2]).unwrap();
        let mut v = w.clone();
        for kind in KinkKind::ALL {
            v = insert_kink(&v, 0, 0, kind).unwrap();
            assert_eq!(knot_invariant(&pkg, &v, 1).unwrap(), base, "{name} after {kind:?}");
        }
    }
}

#[test]
fn sweedler_trefoil_words_agree_and_differ_from_unknot() {
    let pkg = rho_package(&hopf_q("sweedler"), 0);
    let knots = long_knots();
    let psi = |n: &str| knot_invariant(&pkg, &knots.iter().find(|(k, _)| *k == n).unwrap().1, 0).unwrap();
    let trefoil = psi("trefoil_right");
    assert_eq!(psi("trefoil_left"), trefoil);
    assert_eq!(psi("trefoil_braid"), trefoil);
    assert_ne!(psi("unknot"), trefoil);
}

#[test]
fn kink_correction_cancels_the_curl() {
    let pkg = rho_package(&hopf_fp("sweedler"), 0);
    let kinked = parse_tangle("u,nw\np,d\nu,se").unwrap();
    let data = long_knot_data(&kinked).unwrap();
    for k in -1..=2 {
        let phi = evaluate_functor(&pkg, k, &kinked).unwrap();
        assert_eq!(phi, pkg.omega_pow(-k).unwrap());
        assert_eq!(phi.is_identity(), k == 0);
        assert_eq!(correction_exponent(&data, k).unwrap(), k);
    }
}

#[test]
fn long_knots_have_even_parity_and_closed_curves_odd() {
    for (name, w) in long_knots() {
        for (wr, twice_wn) in writhe_winding(&w) {
            assert_eq!((2 * wr + twice_wn).rem_euclid(4), 0, "{name}");
        }
    }
    for text in [CLOSED_TREFOIL, CLOSED_FIGURE_EIGHT, "nw\nse\n", "ne\nsw\n"] {
        let w = parse_tangle(text).unwrap();
        for c in connected_components(&w) {
            assert!(c.is_closed(&w));
            assert_eq!((2 * c.writhe() + c.twice_winding()).rem_euclid(4), 2, "{text}");
        }
    }
}

#[test]
fn disconnected_or_open_words_are_not_knots() {
    let pkg = rho_package(&hopf_q("group_z2"), 0);
    for (name, w) in all_diagrams() {
        let is_long = long_knots().iter().any(|(n, _)| *n == name);
        assert_eq!(knot_invariant(&pkg, &w, 0).is_ok(), is_long, "{name}");
    }
}

fn braid(strands: usize) -> impl Strategy<Value = TangleWord> {
    proptest::collection::vec((0..strands - 1, any::<bool>()), 0..5).prop_map(move |l| braid_word(strands, &l))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn functor_respects_composition(a in braid(3), b in braid(3), k in -1i64..3) {
        let pkg = rho_package(&hopf_q("functions_z2"), 0);
        let ab = a.then(&b).unwrap();
        let lhs = evaluate_functor(&pkg, k, &ab).unwrap();
        let rhs = compose(&evaluate_functor(&pkg, k, &b).unwrap(), &evaluate_functor(&pkg, k, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_relations_hold_for_sweedler(a in braid(3)) {
        let pkg = rho_package(&hopf_fp("sweedler"), 0);
        let s1 = braid_word(3, &[(0, true), (1, true), (0, true)]);
        let s2 = braid_word(3, &[(1, true), (0, true), (1, true)]);
        let lhs = evaluate_functor(&pkg, 0, &a.then(&s1).unwrap()).unwrap();
        let rhs = evaluate_functor(&pkg, 0, &a.then(&s2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
