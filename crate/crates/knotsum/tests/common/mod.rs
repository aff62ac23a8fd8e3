#![allow(dead_code)]

use knotsum::field::{Field, Fp, Rational};
use knotsum::hopf::{builtin, canonical_tmatrix, HopfData, TauFamily, BUILTIN_NAMES};
use knotsum::matrix::{unflatten, DenseMatrix};
use knotsum::rmatrix::RMatrixPackage;
use knotsum::statesum::{crossing_weight, ColoredDiagram, Contractor};
use knotsum::tangle::cable::{block_word, omega_word, Block};
use knotsum::tangle::corpus::{all_diagrams, braid_word, long_knots};
use knotsum::tangle::moves::{apply_riii, insert_rii, rii_insertion_sites, riii_sites};
use knotsum::tangle::{colored_cable, diagram_combinatorics, parse_tangle, ColoredWord, Generator, TangleWord};
use knotsum::tmatrix::build_rho_tau;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P101: u32 = 101;

pub fn hopf_q(name: &str) -> HopfData<Rational> {
    builtin::<Rational>(name, &()).unwrap()
}

pub fn hopf_fp(name: &str) -> HopfData<Fp> {
    builtin::<Fp>(name, &P101).unwrap()
}

/// Builtin names whose algebra has dimension at most `max_dim`.
pub fn builtins_up_to(max_dim: usize) -> Vec<&'static str> {
    BUILTIN_NAMES
        .iter()
        .copied()
        .filter(|n| hopf_q(n).dim <= max_dim)
        .collect()
}

pub fn rho_package<S: Field>(h: &HopfData<S>, k: i64) -> RMatrixPackage<S> {
    build_rho_tau(&canonical_tmatrix(h).unwrap(), k).unwrap()
}

fn bump<S: Field>(m: &mut DenseMatrix<S>, r: usize, c: usize) {
    let one = S::one(m.ctx());
    let v = Field::add(m.get(r, c), &one);
    m.set(r, c, v);
}

/// Five single-entry perturbations of the structure constants: `∇_{11}^1`,
/// `Δ_1^{11}`, `η_1`, `ε_1` and `γ_1^1` each shifted by one.
pub fn mutation_battery<S: Field>(h: &HopfData<S>) -> Vec<(&'static str, HopfData<S>)> {
    let mut out = Vec::new();
    let mut m = h.clone();
    bump(&mut m.mul, 0, 0);
    out.push(("mul(1,1,1)", m));
    let mut m = h.clone();
    bump(&mut m.comul, 0, 0);
    out.push(("comul(1,1,1)", m));
    let mut m = h.clone();
    bump(&mut m.unit, 0, 0);
    out.push(("unit[1]", m));
    let mut m = h.clone();
    bump(&mut m.counit, 0, 0);
    out.push(("counit[1]", m));
    let mut m = h.clone();
    bump(&mut m.antipode, 0, 0);
    out.push(("antipode[1][1]", m));
    out
}

/// Sums the product of crossing weights over every labeling of the
/// interior edges, one boundary multi-index at a time. Boundary points
/// sharing an edge must carry the same label.
pub fn naive_state_sum<S: Field>(diagram: &ColoredDiagram, boundary: &[usize], fam: &TauFamily<S>) -> S {
    let g = &diagram.comb;
    let d = fam.hopf.dim;
    let ctx = fam.hopf.ctx().clone();
    let mut fixed: Vec<Option<usize>> = vec![None; g.edges.len()];
    for (b, &label) in g.boundary.iter().zip(boundary) {
        match fixed[b.edge] {
            Some(prev) if prev != label => return S::zero(&ctx),
            _ => fixed[b.edge] = Some(label),
        }
    }
    let free: Vec<usize> = (0..g.edges.len()).filter(|e| fixed[*e].is_none()).collect();
    let total = d.pow(free.len() as u32);
    let mut sum = S::zero(&ctx);
    let mut labels: Vec<usize> = fixed.iter().map(|x| x.unwrap_or(0)).collect();
    for index in 0..total {
        for (e, digit) in free.iter().zip(unflatten(index, &vec![d; free.len()])) {
            labels[*e] = digit;
        }
        let mut term = S::one(&ctx);
        for v in 0..g.crossings.len() {
            let w = crossing_weight(g, v, &diagram.colored.colors, &labels, fam).unwrap();
            if w.is_zero() {
                term = w;
                break;
            }
            term = Field::mul(&term, &w);
        }
        sum.add_assign(&term);
    }
    sum
}

/// Colored diagrams small enough for exhaustive enumeration at dimension `d`.
pub fn instances(d: usize, seed: u64) -> Vec<(String, ColoredWord)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(String, ColoredWord)> = Vec::new();
    for (name, w) in all_diagrams() {
        let n = w.crossing_count();
        let colors = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        out.push((name.to_string(), ColoredWord { word: w, colors }));
    }
    for b in [Block::Rho, Block::RhoInv, Block::RhoPlusInv, Block::RhoMinusInv] {
        out.push((format!("{b:?}"), block_word(b)));
    }
    for e in [-1, 1] {
        out.push((format!("omega^{e}"), omega_word(e).unwrap()));
    }
    for (name, text) in [("unknot", "u"), ("kink", "u,nw\np,d\nu,se"), ("negative_kink", "u,nw\nn,d\nu,se")] {
        let w = parse_tangle(text).unwrap();
        for k in [0, 1] {
            out.push((format!("{name}_cable_k{k}"), colored_cable(&w, k)));
        }
    }
    out.into_iter()
        .filter(|(_, cw)| {
            let comb = diagram_combinatorics(&cw.word);
            comb.is_ok_and(|g| (d as f64).powi(g.edges.len() as i32) <= 65536.0)
        })
        .collect()
}

/// Compares the contraction with [`naive_state_sum`] on every entry of every
/// instance; returns the number of instances checked.
pub fn compare_enumeration<S: Field>(name: &str, h: &HopfData<S>, seed: u64) -> Result<usize, String> {
    let d = h.dim;
    let fam = TauFamily::new(h.clone());
    let mut checked = 0;
    for (label, cw) in instances(d, seed) {
        let diagram = ColoredDiagram::new(cw).unwrap();
        let contracted = Contractor::new(&fam).run(&diagram.colored, None).unwrap().matrix;
        let (nb, nt) = (diagram.colored.word.dom().len(), diagram.colored.word.cod().len());
        for col in 0..contracted.cols() {
            for row in 0..contracted.rows() {
                let mut boundary = unflatten(col, &vec![d; nb]);
                boundary.extend(unflatten(row, &vec![d; nt]));
                let naive = naive_state_sum(&diagram, &boundary, &fam);
                if contracted.get(row, col) != &naive {
                    return Err(format!("{name}/{label}: boundary {boundary:?}"));
                }
            }
        }
        checked += 1;
    }
    Ok(checked)
}

pub type WordPair = (String, TangleWord, TangleWord);

fn rii_bases() -> Vec<(String, TangleWord)> {
    let mut bases: Vec<(String, TangleWord)> = long_knots().into_iter().map(|(n, w)| (n.to_string(), w)).collect();
    bases.push(("braid_3".into(), braid_word(3, &[(0, true), (1, false)])));
    bases.push(("braid_4".into(), braid_word(4, &[(1, true), (0, true), (2, false)])));
    bases
}

/// Every RII insertion site of the base words, with both crossing orders.
pub fn rii_pairs() -> Vec<WordPair> {
    let mut out = Vec::new();
    for (name, w) in rii_bases() {
        for (level, pos) in rii_insertion_sites(&w) {
            for first in [Generator::Pos, Generator::Neg] {
                let v = insert_rii(&w, level, pos, first).unwrap();
                out.push((format!("{name}@{level},{pos},{}", first.token()), w.clone(), v));
            }
        }
    }
    out
}

/// RIII slides inside the corpus knots and in random braids built around
/// a slide site.
pub fn riii_pairs(seed: u64, random: usize) -> Vec<WordPair> {
    let mut out = Vec::new();
    for (name, w) in long_knots() {
        let w = w.normalized();
        for t in riii_sites(&w) {
            out.push((format!("{name}@{t}"), w.clone(), apply_riii(&w, t).unwrap()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < random + 2 {
        let strands = rng.gen_range(3..=4);
        let mut letters = Vec::new();
        let letter = |rng: &mut ChaCha8Rng| (rng.gen_range(0..strands - 1), rng.gen_bool(0.5));
        for _ in 0..rng.gen_range(0..3) {
            letters.push(letter(&mut rng));
        }
        let x = rng.gen_range(0..strands - 2);
        let (y, x) = if rng.gen_bool(0.5) { (x + 1, x) } else { (x, x + 1) };
        let (a, b, c) = (rng.gen_bool(0.5), rng.gen_bool(0.5), rng.gen_bool(0.5));
        if a == c && a != b {
            continue;
        }
        let t = letters.len();
        letters.extend([(x, a), (y, b), (x, c)]);
        for _ in 0..rng.gen_range(0..3) {
            letters.push(letter(&mut rng));
        }
        let w = braid_word(strands, &letters);
        out.push((format!("braid{strands}:{letters:?}@{t}"), w.clone(), apply_riii(&w, t).unwrap()));
    }
    out
}
