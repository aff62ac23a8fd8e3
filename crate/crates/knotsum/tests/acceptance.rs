//! Runs the eight acceptance criteria and prints one PASS/FAIL line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use knotsum::delta::{
    complex_from_presentation, delta_complex_of_diagram, extend_isomorphism, permute_presentation, validate_complex,
    Presentation,
};
use knotsum::field::Field;
use knotsum::functor::{curl_exponents, curl_values, evaluate_functor, knot_invariant_checked};
use knotsum::hopf::{canonical_tmatrix, validate_hopf, HopfData, BUILTIN_NAMES};
use knotsum::rmatrix::{certify_rigidity, check_yang_baxter, RMatrixPackage};
use knotsum::statesum::statesum_matrix;
use knotsum::tangle::corpus::{all_diagrams, long_knots, CLOSED_TREFOIL};
use knotsum::tangle::{
    diagram_combinatorics, insert_kink, parse_tangle, reidemeister_variants, writhe_winding, Generator, KinkKind, Sign,
    TangleWord,
};
use knotsum::tmatrix::{check_tmatrix, pentagon_family_check};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut mutations = 0;
    let mut slowest = Duration::ZERO;
    for name in BUILTIN_NAMES {
        let start = Instant::now();
        let h = hopf_q(name);
        let report = validate_hopf(&h).map_err(|e| e.to_string())?;
        ensure(report.passed, || format!("{name} fails {:?}", report.failed()))?;
        for (what, m) in mutation_battery(&h) {
            let r = validate_hopf(&m).map_err(|e| e.to_string())?;
            ensure(!r.passed, || format!("{name} with {what} still validates"))?;
            mutations += 1;
        }
        let t = start.elapsed();
        ensure(t < Duration::from_secs(1), || format!("{name} took {t:?}"))?;
        slowest = slowest.max(t);
    }
    Ok(format!(
        "{} builtins valid, {mutations} mutations rejected, slowest {slowest:?}",
        BUILTIN_NAMES.len()
    ))
}

fn tmatrix_ok<S: Field>(label: &str, h: &HopfData<S>) -> Result<(), String> {
    let pkg = canonical_tmatrix(h).map_err(|e| format!("{label}: {e}"))?;
    ensure(check_tmatrix(&pkg.sigma, &pkg.tau).map_err(|e| e.to_string())?, || {
        format!("{label}: T-matrix equations fail")
    })?;
    let report = pentagon_family_check(&pkg).map_err(|e| e.to_string())?;
    ensure(report.all_pass(), || format!("{label}: pentagon family {report:?}"))
}

fn criterion_2() -> Outcome {
    let names = builtins_up_to(4);
    for name in &names {
        tmatrix_ok(&format!("{name}/Q"), &hopf_q(name))?;
    }
    tmatrix_ok("group_s3/F101", &hopf_fp("group_s3"))?;
    Ok(format!("{} builtins over Q and group_s3 over F101", names.len()))
}

fn rho_ok<S: Field>(label: &str, h: &HopfData<S>) -> Result<usize, String> {
    let pkg = rho_package(h, 0);
    ensure(check_yang_baxter(&pkg.rho).map_err(|e| e.to_string())?, || {
        format!("{label}: Yang-Baxter fails")
    })?;
    certify_rigidity(&pkg.rho, &pkg.p).map_err(|e| format!("{label}: {e}"))?;
    Ok(pkg.obj.total_dim().pow(3))
}

fn criterion_3() -> Outcome {
    let mut dims = Vec::new();
    for name in builtins_up_to(3) {
        dims.push(rho_ok(&format!("{name}/Q"), &hopf_q(name))?);
    }
    dims.push(rho_ok("sweedler/F101", &hopf_fp("sweedler"))?);
    Ok(format!("Yang-Baxter spaces of dimension {dims:?}"))
}

fn functor_pairs<S: Field>(label: &str, pkg: &RMatrixPackage<S>, pairs: &[WordPair]) -> Result<(), String> {
    for (name, a, b) in pairs {
        // Only the turnbacks `ne` and `se` see the framing parameter.
        let framed = [a, b].iter().any(|w| w.count(Generator::CapNE) + w.count(Generator::CupSE) > 0);
        for k in if framed { vec![0, 1] } else { vec![0] } {
            let fa = evaluate_functor(pkg, k, a).map_err(|e| e.to_string())?;
            let fb = evaluate_functor(pkg, k, b).map_err(|e| e.to_string())?;
            ensure(fa == fb, || format!("{label}: {name} differs at k = {k}"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let rii = rii_pairs();
    let riii = riii_pairs(11, 24);
    ensure(rii.len() >= 50 && riii.len() >= 20, || {
        format!("only {} RII and {} RIII pairs", rii.len(), riii.len())
    })?;
    let names = builtins_up_to(3);
    for name in &names {
        let pkg = rho_package(&hopf_q(name), 0);
        functor_pairs(name, &pkg, &rii)?;
        functor_pairs(name, &pkg, &riii)?;
        for k in -1..=2 {
            let curls = curl_values(&pkg, k).map_err(|e| e.to_string())?;
            for (c, e) in curls.iter().zip(curl_exponents(k)) {
                let expected = pkg.omega_pow(e).map_err(|e| e.to_string())?;
                ensure(*c == expected, || format!("{name}: curl at k = {k} is not ω^{e}"))?;
            }
        }
    }
    Ok(format!(
        "{} RII and {} RIII pairs on {} packages, curls for k in -1..=2",
        rii.len(),
        riii.len(),
        names.len()
    ))
}

/// A level and position carrying an upward strand near the middle of `w`.
fn middle_site(w: &TangleWord) -> (usize, usize) {
    let level = w.slices().len() / 2;
    let pos = w.level_signs(level).iter().position(|s| *s == Sign::Plus).unwrap_or(0);
    (level, pos)
}

/// `wr + wn` is even for a long knot (for closed curves it is odd).
fn parity_holds(w: &TangleWord) -> Result<(), String> {
    for (wr, twice_wn) in writhe_winding(w) {
        ensure((2 * wr + twice_wn) % 4 == 0, || format!("wr = {wr}, 2wn = {twice_wn} in\n{w}"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let names = builtins_up_to(4);
    let knots = long_knots();
    let mut nontrivial = Vec::new();
    let mut parity_words = 0;
    for name in &names {
        let pkg = rho_package(&hopf_q(name), 0);
        let psi = |w: &TangleWord| knot_invariant_checked(&pkg, w, &[0, 1, 2]).map_err(|e| format!("{name}: {e}"));
        let mut values = Vec::new();
        for (knot, w) in &knots {
            let base = psi(w)?;
            let mut sites = vec![(0, 0), middle_site(w)];
            sites.dedup();
            for kind in KinkKind::ALL {
                for &(level, pos) in &sites {
                    let v = insert_kink(w, level, pos, kind).map_err(|e| e.to_string())?;
                    parity_holds(&v)?;
                    parity_words += 1;
                    ensure(psi(&v)? == base, || format!("{name}: {knot} with {kind:?} at {level},{pos}"))?;
                }
            }
            values.push((*knot, base));
        }
        let get = |n: &str| values.iter().find(|(k, _)| *k == n).map(|(_, v)| v.clone()).unwrap();
        let trefoil = get("trefoil_right");
        for other in ["trefoil_left", "trefoil_braid"] {
            ensure(get(other) == trefoil, || format!("{name}: {other} differs from trefoil_right"))?;
        }
        if trefoil != get("unknot") {
            nontrivial.push(*name);
        }
    }
    for (i, (_, w)) in knots.iter().enumerate() {
        parity_holds(w)?;
        for v in reidemeister_variants(w, 500 + i as u64, 10) {
            parity_holds(&v)?;
        }
        parity_words += 11;
    }
    Ok(format!(
        "{} packages, parity on {parity_words} long-knot words, trefoil separated from unknot by {nontrivial:?}",
        names.len()
    ))
}

fn statesum_ok<S: Field>(label: &str, h: &HopfData<S>, words: &[&str], ks: &[i64]) -> Result<usize, String> {
    let knots = long_knots();
    let mut n = 0;
    for word in words {
        let w = &knots.iter().find(|(k, _)| k == word).unwrap().1;
        for &k in ks {
            statesum_matrix(w, h, k).map_err(|e| format!("{label}/{word}/k={k}: {e}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn criterion_6() -> Outcome {
    let words = ["unknot", "kinked_unknot", "trefoil_right", "trefoil_left", "trefoil_braid"];
    let mut runs = 0;
    for name in builtins_up_to(2) {
        runs += statesum_ok(&format!("{name}/Q"), &hopf_q(name), &words, &[0, 1])?;
    }
    for name in builtins_up_to(4) {
        runs += statesum_ok(&format!("{name}/F101"), &hopf_fp(name), &words, &[0, 1])?;
    }
    Ok(format!("{runs} state-sum matrices equal the functor value"))
}

fn criterion_7() -> Outcome {
    let mut diagrams: Vec<(String, TangleWord)> = all_diagrams().into_iter().map(|(n, w)| (n.to_string(), w)).collect();
    for (i, (name, w)) in long_knots().into_iter().enumerate() {
        for (j, v) in reidemeister_variants(&w, 100 + i as u64, 4).into_iter().enumerate() {
            diagrams.push((format!("{name}~{j}"), v));
        }
    }
    let mut checked = 0;
    for (name, w) in &diagrams {
        if w.crossing_count() == 0 {
            continue;
        }
        let comb = diagram_combinatorics(w).map_err(|e| format!("{name}: {e}"))?;
        let x = delta_complex_of_diagram(&comb).map_err(|e| format!("{name}: {e}"))?;
        let report = validate_complex(&x);
        ensure(report.passed, || format!("{name}: {:?}", report.first_failure))?;
        checked += 1;
    }
    let trefoil = parse_tangle(CLOSED_TREFOIL).unwrap();
    let x = delta_complex_of_diagram(&diagram_combinatorics(&trefoil).unwrap()).map_err(|e| e.to_string())?;
    ensure(x.counts[3] == 3 && x.counts[2] == 6, || format!("trefoil counts {:?}", x.counts))?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..10 {
        let top = rng.gen_range(1..=5);
        let next = rng.gen_range(2..=8);
        let faces = (0..top).map(|_| (0..4).map(|_| rng.gen_range(0..next)).collect()).collect();
        let p = Presentation { n: 3, top, next, faces };
        let mut top_perm: Vec<usize> = (0..top).collect();
        let mut next_perm: Vec<usize> = (0..next).collect();
        top_perm.shuffle(&mut rng);
        next_perm.shuffle(&mut rng);
        let q = permute_presentation(&p, &top_perm, &next_perm);
        let x = complex_from_presentation(&p).map_err(|e| e.to_string())?;
        let y = complex_from_presentation(&q).map_err(|e| e.to_string())?;
        ensure(extend_isomorphism(&x, &y, &top_perm, &next_perm).is_some(), || {
            format!("presentation {trial} is not universal: {p:?}")
        })?;
    }
    Ok(format!(
        "{checked} diagram complexes valid, trefoil counts {:?}, 10 presentations isomorphic",
        x.counts
    ))
}

fn criterion_8() -> Outcome {
    let mut total = 0;
    for (i, name) in builtins_up_to(4).into_iter().enumerate() {
        total += compare_enumeration(name, &hopf_q(name), 31 + i as u64)?;
    }
    for name in ["group_z3", "sweedler"] {
        total += compare_enumeration(name, &hopf_fp(name), 77)?;
    }
    Ok(format!("{total} colored diagrams agree entrywise with enumeration"))
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("Hopf validation", Duration::from_secs(6), criterion_1),
        ("T-matrix axioms", Duration::from_secs(60), criterion_2),
        ("rho_tau certification", Duration::from_secs(600), criterion_3),
        ("functor relations", Duration::from_secs(300), criterion_4),
        ("invariance", Duration::from_secs(900), criterion_5),
        ("state-sum equivalence", Duration::from_secs(900), criterion_6),
        ("Delta-complex integrity", Duration::from_secs(300), criterion_7),
        ("oracle equivalence", Duration::from_secs(900), criterion_8),
    ];
    let mut failures = 0;
    for (i, (title, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|d| {
            if elapsed <= limit {
                Ok(d)
            } else {
                Err(format!("{d}; over the {limit:?} budget"))
            }
        });
        match result {
            Ok(detail) => println!("criterion {} ({title}): PASS [{elapsed:.2?}] {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {} ({title}): FAIL [{elapsed:.2?}] {reason}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
