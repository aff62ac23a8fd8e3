//! Rewriting moves used to generate equivalent words: Reidemeister II and
//! III (regular isotopy) and insertion of Reidemeister I kinks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Generator, Sign, Slice, TangleWord};
use crate::error::{Error, Result};

/// The four one-crossing curls on an upward strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KinkKind {
    /// `p`, loop to the right.
    PosRight,
    /// `n`, loop to the right.
    NegRight,
    /// `p`, loop to the left.
    PosLeft,
    /// `n`, loop to the left.
    NegLeft,
}

impl KinkKind {
    pub const ALL: [KinkKind; 4] = [KinkKind::PosRight, KinkKind::NegRight, KinkKind::PosLeft, KinkKind::NegLeft];
}

/// The kink as a `(+) → (+)` word.
pub fn kink_word(kind: KinkKind) -> TangleWord {
    use Generator::*;
    let slices = match kind {
        KinkKind::PosRight => vec![vec![Up, CapNW], vec![Pos, Down], vec![Up, CupSE]],
        KinkKind::NegRight => vec![vec![Up, CapNW], vec![Neg, Down], vec![Up, CupSE]],
        KinkKind::PosLeft => vec![vec![CapNE, Up], vec![Down, Pos], vec![CupSW, Up]],
        KinkKind::NegLeft => vec![vec![CapNE, Up], vec![Down, Neg], vec![CupSW, Up]],
    };
    TangleWord::new(slices).expect("kink words are valid")
}

fn identities(signs: &[Sign]) -> Slice {
    signs.iter().map(|s| Generator::identity_for(*s)).collect()
}

/// Replaces the strand at `(level, pos)` by `insert` (a word from the
/// single sign there to itself), leaving every other strand straight.
fn splice(w: &TangleWord, level: usize, pos: usize, insert: &TangleWord) -> Result<TangleWord> {
    let signs = w.level_signs(level);
    let width = insert.dom().len();
    if pos + width > signs.len() || signs[pos..pos + width] != *insert.dom() || insert.dom() != insert.cod() {
        return Err(Error::InvalidTangle(format!(
            "cannot splice at level {level}, position {pos}"
        )));
    }
    let left = identities(&signs[..pos]);
    let right = identities(&signs[pos + width..]);
    let mut slices: Vec<Slice> = w.slices()[..level].to_vec();
    for s in insert.slices() {
        let mut row = left.clone();
        row.extend(s.iter().copied());
        row.extend(right.iter().copied());
        slices.push(row);
    }
    slices.extend(w.slices()[level..].iter().cloned());
    TangleWord::new(slices)
}

/// Inserts a kink on the upward strand at `(level, pos)`.
pub fn insert_kink(w: &TangleWord, level: usize, pos: usize, kind: KinkKind) -> Result<TangleWord> {
    if w.level_signs(level).get(pos) != Some(&Sign::Plus) {
        return Err(Error::InvalidTangle(format!(
            "no upward strand at level {level}, position {pos}"
        )));
    }
    splice(w, level, pos, &kink_word(kind))
}

/// Inserts `first` then its inverse on the upward pair at `(level, pos)`.
pub fn insert_rii(w: &TangleWord, level: usize, pos: usize, first: Generator) -> Result<TangleWord> {
    let second = match first {
        Generator::Pos => Generator::Neg,
        Generator::Neg => Generator::Pos,
        other => return Err(Error::InvalidTangle(format!("{other:?} is not a crossing"))),
    };
    let pair = TangleWord::new(vec![vec![first], vec![second]]).expect("crossing pair");
    splice(w, level, pos, &pair)
}

/// The single non-identity generator of a slice, with its dom position.
fn lone_generator(slice: &[Generator]) -> Option<(usize, Generator)> {
    let mut found = None;
    let mut at = 0;
    for g in slice {
        if !g.is_identity() {
            if found.is_some() {
                return None;
            }
            found = Some((at, *g));
        }
        at += g.dom().len();
    }
    found
}

/// Sites `(level, pos)` where an RII pair can be inserted.
pub fn rii_insertion_sites(w: &TangleWord) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for level in 0..=w.slices().len() {
        let s = w.level_signs(level);
        for pos in 0..s.len().saturating_sub(1) {
            if s[pos] == Sign::Plus && s[pos + 1] == Sign::Plus {
                out.push((level, pos));
            }
        }
    }
    out
}

/// Slice indices `t` where slices `t, t+1` form a cancelling pair.
pub fn rii_removal_sites(w: &TangleWord) -> Vec<usize> {
    let s = w.slices();
    (0..s.len().saturating_sub(1))
        .filter(|&t| match (lone_generator(&s[t]), lone_generator(&s[t + 1])) {
            (Some((a, g)), Some((b, h))) => a == b && g.is_crossing() && h.is_crossing() && g != h,
            _ => false,
        })
        .collect()
}

pub fn remove_rii(w: &TangleWord, t: usize) -> Result<TangleWord> {
    if !rii_removal_sites(w).contains(&t) {
        return Err(Error::InvalidTangle(format!("no cancelling pair at slice {t}")));
    }
    let mut slices = w.slices().to_vec();
    slices.drain(t..t + 2);
    TangleWord::new(slices)
}

/// Slice indices `t` where slices `t..t+3` admit a Reidemeister III slide.
pub fn riii_sites(w: &TangleWord) -> Vec<usize> {
    let s = w.slices();
    (0..s.len().saturating_sub(2))
        .filter(|&t| {
            let lone: Vec<_> = (0..3).map(|i| lone_generator(&s[t + i])).collect();
            match (lone[0], lone[1], lone[2]) {
                (Some((x0, a)), Some((x1, b)), Some((x2, c))) => {
                    let shape = x0 == x2 && (x1 == x0 + 1 || x1 + 1 == x0);
                    let kinds = [a, b, c].iter().all(|g| g.is_crossing());
                    shape && kinds && !(a == c && a != b)
                }
                _ => false,
            }
        })
        .collect()
}

/// `(a@x, b@x±1, c@x) ↦ (c@x±1, b@x, a@x±1)`.
pub fn apply_riii(w: &TangleWord, t: usize) -> Result<TangleWord> {
    if !riii_sites(w).contains(&t) {
        return Err(Error::InvalidTangle(format!("no Reidemeister III site at slice {t}")));
    }
    let s = w.slices();
    let (x0, a) = lone_generator(&s[t]).expect("checked site");
    let (x1, b) = lone_generator(&s[t + 1]).expect("checked site");
    let (_, c) = lone_generator(&s[t + 2]).expect("checked site");
    let signs = w.level_signs(t);
    let place = |x: usize, g: Generator| -> Slice {
        let mut row = identities(&signs[..x]);
        row.push(g);
        row.extend(identities(&signs[x + 2..]));
        row
    };
    let mut slices = s[..t].to_vec();
    slices.push(place(x1, c));
    slices.push(place(x0, b));
    slices.push(place(x1, a));
    slices.extend(s[t + 3..].iter().cloned());
    TangleWord::new(slices)
}

/// `n` words regularly isotopic to `w`, each obtained from the normalized
/// form of `w` by one to three RII/RIII moves chosen from `seed`.
pub fn reidemeister_variants(w: &TangleWord, seed: u64, n: usize) -> Vec<TangleWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = w.normalized();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v = base.clone();
        let moves = rng.gen_range(1..=3);
        for _ in 0..moves {
            v = random_move(&v, &mut rng).unwrap_or(v);
        }
        out.push(v);
    }
    out
}

fn random_move(w: &TangleWord, rng: &mut ChaCha8Rng) -> Option<TangleWord> {
    let riii = riii_sites(w);
    let removals = rii_removal_sites(w);
    let inserts = rii_insertion_sites(w);
    let mut options = Vec::new();
    if !riii.is_empty() {
        options.push(0);
        options.push(0);
    }
    if !removals.is_empty() {
        options.push(1);
    }
    if !inserts.is_empty() {
        options.push(2);
    }
    match options.choose(rng)? {
        0 => apply_riii(w, *riii.choose(rng)?).ok(),
        1 => remove_rii(w, *removals.choose(rng)?).ok(),
        _ => {
            let (level, pos) = *inserts.choose(rng)?;
            let first = if rng.gen_bool(0.5) { Generator::Pos } else { Generator::Neg };
            insert_rii(w, level, pos, first).ok()
        }
    }
}
