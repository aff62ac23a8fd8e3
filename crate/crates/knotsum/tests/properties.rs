mod common;

use common::*;
use knotsum::delta::{
    complex_from_presentation, delta_complex_of_diagram, extend_isomorphism, permute_presentation, validate_complex,
    Presentation,
};
use knotsum::field::{Field, Fp, Rational};
use knotsum::hopf::TauFamily;
use knotsum::matrix::{mat_inverse, mat_mul, DenseMatrix};
use knotsum::statesum::{ColoredDiagram, Contractor};
use knotsum::tangle::corpus::{braid_word, long_knots};
use knotsum::tangle::{
    diagram_combinatorics, insert_kink, parse_tangle, reidemeister_variants, writhe_winding, ColoredWord, KinkKind,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d))
}

fn residue() -> impl Strategy<Value = Fp> {
    (0i64..101).prop_map(|v| Fp::new(v, P101))
}

fn check_field_axioms<S: Field>(a: &S, b: &S, c: &S) -> Result<(), TestCaseError> {
    prop_assert_eq!(Field::add(a, b), Field::add(b, a));
    prop_assert_eq!(Field::mul(a, b), Field::mul(b, a));
    prop_assert_eq!(Field::mul(a, &Field::add(b, c)), Field::add(&Field::mul(a, b), &Field::mul(a, c)));
    prop_assert_eq!(Field::add(&Field::add(a, b), c), Field::add(a, &Field::add(b, c)));
    prop_assert!(Field::add(a, &a.neg()).is_zero());
    prop_assert_eq!(Field::sub(a, b), Field::add(a, &b.neg()));
    match a.inv() {
        Some(i) => prop_assert!(Field::mul(a, &i).is_one()),
        None => prop_assert!(a.is_zero()),
    }
    Ok(())
}

fn invertible_check<S: Field>(m: &DenseMatrix<S>) -> Result<(), TestCaseError> {
    if let Some(inv) = mat_inverse(m).unwrap() {
        prop_assert!(mat_mul(m, &inv).unwrap().is_identity());
        prop_assert!(mat_mul(&inv, m).unwrap().is_identity());
    }
    Ok(())
}

/// Random long knots: a corpus word with kinks and Reidemeister moves.
fn long_knot() -> impl Strategy<Value = knotsum::TangleWord> {
    (0..long_knots().len(), proptest::collection::vec(0usize..4, 0..3), any::<u64>()).prop_map(|(i, kinks, seed)| {
        let mut w = long_knots()[i].1.clone();
        for k in kinks {
            w = insert_kink(&w, 0, 0, KinkKind::ALL[k]).unwrap();
        }
        reidemeister_variants(&w, seed, 1).pop().unwrap()
    })
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=4, 1usize..=5, 1usize..=7, any::<u64>()).prop_map(|(n, top, next, seed)| {
        let mut x = seed;
        let mut step = || {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (x >> 33) as usize % next
        };
        let faces = (0..top).map(|_| (0..=n).map(|_| step()).collect()).collect();
        Presentation { n, top, next, faces }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        check_field_axioms(&a, &b, &c)?;
        prop_assert_eq!(Rational::parse(&(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn prime_field_axioms(a in residue(), b in residue(), c in residue()) {
        check_field_axioms(&a, &b, &c)?;
        prop_assert!(a.pow(100).is_one() || a.is_zero());
    }

    #[test]
    fn inverse_is_two_sided(entries in proptest::collection::vec(-4i64..5, 16)) {
        let q = DenseMatrix::from_fn(&(), 4, 4, |r, c| Rational::integer(entries[r * 4 + c]));
        invertible_check(&q)?;
        let f = DenseMatrix::from_fn(&P101, 4, 4, |r, c| Fp::new(entries[r * 4 + c], P101));
        invertible_check(&f)?;
    }

    #[test]
    fn tangle_text_round_trips(w in long_knot()) {
        prop_assert_eq!(parse_tangle(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn reidemeister_moves_keep_writhe_and_winding(i in 0..6usize, seed in any::<u64>()) {
        let w = &long_knots()[i].1;
        for v in reidemeister_variants(w, seed, 4) {
            prop_assert_eq!(writhe_winding(&v), writhe_winding(w));
        }
    }

    #[test]
    fn presentations_give_valid_complexes(p in presentation(), seed in any::<u64>()) {
        let x = complex_from_presentation(&p).unwrap();
        prop_assert!(validate_complex(&x).passed);
        let rotate = |n: usize, by: u64| -> Vec<usize> { (0..n).map(|i| (i + by as usize) % n).collect() };
        let (tp, np) = (rotate(p.top, seed), rotate(p.next, seed / 7));
        let y = complex_from_presentation(&permute_presentation(&p, &tp, &np)).unwrap();
        prop_assert!(extend_isomorphism(&x, &y, &tp, &np).is_some());
    }

    #[test]
    fn knot_complexes_are_valid(w in long_knot()) {
        let comb = diagram_combinatorics(&w).unwrap();
        if !comb.crossings.is_empty() {
            let x = delta_complex_of_diagram(&comb).unwrap();
            prop_assert!(validate_complex(&x).passed);
            prop_assert_eq!(x.counts[3], w.crossing_count());
            prop_assert_eq!(x.counts[2], comb.edges.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_colorings_match_enumeration(
        letters in proptest::collection::vec((0usize..2, any::<bool>()), 1..5),
        colors in proptest::collection::vec(-4i64..5, 5),
    ) {
        let word = braid_word(3, &letters);
        let colors = colors[..word.crossing_count()].to_vec();
        let h = hopf_q("sweedler");
        let fam = TauFamily::new(h.clone());
        let diagram = ColoredDiagram::new(ColoredWord { word, colors }).unwrap();
        let m = Contractor::new(&fam).run(&diagram.colored, None).unwrap().matrix;
        for (col, row) in [(0, 0), (5, 5), (17, 40), (63, 63)] {
            let mut boundary = knotsum::matrix::unflatten(col, &[4, 4, 4]);
            boundary.extend(knotsum::matrix::unflatten(row, &[4, 4, 4]));
            prop_assert_eq!(m.get(row, col), &naive_state_sum(&diagram, &boundary, &fam));
        }
    }
}
