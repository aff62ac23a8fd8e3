//! State sums over edge labelings of a colored diagram.
//!
//! A labeling assigns a basis index to every edge; each crossing `v`
//! contributes the entry `(τ_{c(v)})^{k,l}_{i,j}` with `(i, j, k, l)` read
//! off its four edges. Positive crossing: `i` bottom-left, `j` bottom-right,
//! `k` top-right, `l` top-left. Negative crossing: `j` bottom-left, `i`
//! bottom-right, `k` top-left, `l` top-right.
//!
//! Summing over labelings is done by contracting slice by slice: caps and
//! cups are Kronecker deltas and a crossing is the local matrix
//! `σ∘τ_c` (positive) or `τ_c∘σ` (negative) on its two strands.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::functor::evaluate_functor;
use crate::hopf::{canonical_tmatrix, HopfData, TauFamily};
use crate::linmap::{compose, Morphism, ObjectWord, Pipeline, Prepared, X_LABEL, XSTAR_LABEL};
use crate::matrix::{flatten, DenseMatrix};
use crate::tangle::{colored_cable, diagram_combinatorics, ColoredWord, DiagramCombinatorics, Generator, Sign, TangleWord};
use crate::tmatrix::build_rho_tau;

/// A `ℤ`-coloring: one integer per crossing (3-cell).
pub type ZColoring = Vec<i64>;
/// An edge labeling with values in `0..d`.
pub type EdgeLabeling = Vec<usize>;

/// The weight `W_f(v, c)`.
pub fn crossing_weight<S: Field>(
    g: &DiagramCombinatorics,
    v: usize,
    coloring: &[i64],
    labels: &[usize],
    fam: &TauFamily<S>,
) -> Result<S> {
    let crossing = g
        .crossings
        .get(v)
        .ok_or_else(|| Error::InvalidDiagram(format!("no crossing {v}")))?;
    let color = *coloring
        .get(v)
        .ok_or_else(|| Error::InvalidDiagram(format!("crossing {v} has no color")))?;
    let label = |f: usize| -> Result<usize> {
        labels
            .get(crossing.faces[f])
            .copied()
            .ok_or_else(|| Error::InvalidDiagram(format!("edge {} has no label", crossing.faces[f])))
    };
    // Positive: f0 bottom-right (j), f1 top-left (l), f2 bottom-left (i), f3 top-right (k).
    // Negative: f0 top-right (l), f1 bottom-left (j), f2 top-left (k), f3 bottom-right (i).
    let (i, j, k, l) = if crossing.sign > 0 {
        (label(2)?, label(0)?, label(3)?, label(1)?)
    } else {
        (label(3)?, label(1)?, label(2)?, label(0)?)
    };
    let d = fam.hopf.dim;
    if [i, j, k, l].iter().any(|x| *x >= d) {
        return Err(Error::InvalidDiagram(format!("edge label out of range 0..{d}")));
    }
    let tau = fam.tau_r(color)?;
    Ok(tau.matrix.get(k * d + l, i * d + j).clone())
}

/// Evaluates a colored word as a tensor network; the result has one
/// column per bottom multi-index and one row per top multi-index.
pub struct Contractor<'a, S: Field> {
    fam: &'a TauFamily<S>,
    x: ObjectWord,
    y: ObjectWord,
    caps: [Prepared<S>; 4],
    crossings: HashMap<(bool, i64), Prepared<S>>,
}

impl<'a, S: Field> Contractor<'a, S> {
    pub fn new(fam: &'a TauFamily<S>) -> Self {
        let d = fam.hopf.dim;
        let ctx = fam.hopf.ctx();
        let x = ObjectWord::single(X_LABEL, d);
        let y = ObjectWord::single(XSTAR_LABEL, d);
        let delta_col = DenseMatrix::from_fn(ctx, d * d, 1, |r, _| {
            if r / d == r % d { S::one(ctx) } else { S::zero(ctx) }
        });
        let delta_row = delta_col.transpose();
        let unit = ObjectWord::unit();
        let m = |dom: ObjectWord, cod: ObjectWord, mat: &DenseMatrix<S>| {
            Prepared::new(Morphism::new(dom, cod, mat.clone()).expect("delta shapes"))
        };
        let caps = [
            m(unit.clone(), x.concat(&y), &delta_col),
            m(unit.clone(), y.concat(&x), &delta_col),
            m(y.concat(&x), unit.clone(), &delta_row),
            m(x.concat(&y), unit, &delta_row),
        ];
        Contractor { fam, x, y, caps, crossings: HashMap::new() }
    }

    fn crossing(&mut self, positive: bool, color: i64) -> Result<&Prepared<S>> {
        if !self.crossings.contains_key(&(positive, color)) {
            let h = &self.fam.hopf;
            let tau = self.fam.tau_r(color)?;
            let sigma = h.swap_morphism();
            let local = if positive { compose(&sigma, &tau)? } else { compose(&tau, &sigma)? };
            self.crossings.insert((positive, color), Prepared::new(local));
        }
        Ok(&self.crossings[&(positive, color)])
    }

    fn object(&self, signs: &[Sign]) -> ObjectWord {
        signs.iter().fold(ObjectWord::unit(), |acc, s| {
            acc.concat(if *s == Sign::Plus { &self.x } else { &self.y })
        })
    }

    /// Contracts the columns in `columns` (all of them when `None`).
    pub fn run(&mut self, cw: &ColoredWord, columns: Option<std::ops::Range<usize>>) -> Result<Morphism<S>> {
        let w = &cw.word;
        if cw.colors.len() != w.crossing_count() {
            return Err(Error::InvalidDiagram(format!(
                "{} colors for {} crossings",
                cw.colors.len(),
                w.crossing_count()
            )));
        }
        let ctx = self.fam.hopf.ctx().clone();
        let dom = self.object(w.dom());
        let mut pipe = match columns {
            Some(r) => Pipeline::start_columns(&ctx, &dom, r),
            None => Pipeline::start(&ctx, &dom),
        };
        let mut next_color = 0;
        for slice in w.slices() {
            let mut placed = Vec::new();
            let mut x = 0;
            for g in slice {
                if g.is_crossing() {
                    placed.push((x, *g, cw.colors[next_color]));
                    next_color += 1;
                } else if !g.is_identity() {
                    placed.push((x, *g, 0));
                }
                x += g.dom().len();
            }
            for (x, g, color) in placed.into_iter().rev() {
                let f = match g {
                    Generator::Pos => self.crossing(true, color)?.clone(),
                    Generator::Neg => self.crossing(false, color)?.clone(),
                    Generator::CapNW => self.caps[0].clone(),
                    Generator::CapNE => self.caps[1].clone(),
                    Generator::CupSW => self.caps[2].clone(),
                    Generator::CupSE => self.caps[3].clone(),
                    Generator::Up | Generator::Down => unreachable!(),
                };
                pipe.apply_prepared(x, &f)?;
            }
        }
        Ok(pipe.finish())
    }
}

/// A colored word together with its combinatorics.
#[derive(Clone, Debug)]
pub struct ColoredDiagram {
    pub colored: ColoredWord,
    pub comb: DiagramCombinatorics,
}

impl ColoredDiagram {
    pub fn new(colored: ColoredWord) -> Result<Self> {
        let comb = diagram_combinatorics(&colored.word)?;
        if colored.colors.len() != comb.crossings.len() {
            return Err(Error::InvalidDiagram("coloring is not total on the crossings".into()));
        }
        Ok(ColoredDiagram { colored, comb })
    }
}

/// `Σ_{f|∂ = g} Π_v W_f(v, c)` for the boundary labels `boundary`
/// (bottom points then top points).
pub fn state_sum<S: Field>(diagram: &ColoredDiagram, boundary: &[usize], fam: &TauFamily<S>) -> Result<S> {
    let d = fam.hopf.dim;
    let w = &diagram.colored.word;
    let (nb, nt) = (w.dom().len(), w.cod().len());
    if boundary.len() != nb + nt || boundary.iter().any(|x| *x >= d) {
        return Err(Error::InvalidDiagram(format!(
            "boundary multi-index must have {} entries in 0..{d}",
            nb + nt
        )));
    }
    let col = flatten(&boundary[..nb], &vec![d; nb]);
    let row = flatten(&boundary[nb..], &vec![d; nt]);
    let m = Contractor::new(fam).run(&diagram.colored, Some(col..col + 1))?;
    Ok(m.matrix.get(row, 0).clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateSumReport<S: Field> {
    #[serde(skip)]
    pub matrix: DenseMatrix<S>,
    #[serde(skip)]
    pub functor: DenseMatrix<S>,
    pub crosscheck: bool,
    pub crossings: usize,
    pub edges: usize,
}

/// Computes every state sum of the colored cable of `w` and the functor
/// value `Φ_{ρ_τ,k}(w)`; `perturb` shifts the first color (fault injection).
pub fn statesum_report<S: Field>(w: &TangleWord, h: &HopfData<S>, k: i64, perturb: bool) -> Result<StateSumReport<S>> {
    let pkg = canonical_tmatrix(h)?;
    let rho_pkg = build_rho_tau(&pkg, k)?;
    let functor = evaluate_functor(&rho_pkg, k, w)?;
    let mut colored = colored_cable(w, k);
    if perturb {
        if let Some(c) = colored.colors.first_mut() {
            *c += 1;
        }
    }
    let diagram = ColoredDiagram::new(colored)?;
    let fam = TauFamily::new(h.clone());
    let mut colors: Vec<i64> = diagram.colored.colors.clone();
    colors.sort_unstable();
    colors.dedup();
    for c in colors {
        fam.tau_r(c)?;
    }
    let matrix = Contractor::new(&fam).run(&diagram.colored, None)?.matrix;
    Ok(StateSumReport {
        crosscheck: matrix == functor.matrix,
        matrix,
        functor: functor.matrix,
        crossings: diagram.comb.crossings.len(),
        edges: diagram.comb.edges.len(),
    })
}

/// The state-sum matrix of `w`; a mismatch with the functor is an error.
pub fn statesum_matrix<S: Field>(w: &TangleWord, h: &HopfData<S>, k: i64) -> Result<DenseMatrix<S>> {
    let report = statesum_report(w, h, k, false)?;
    if !report.crosscheck {
        let at = report.matrix.first_difference(&report.functor);
        return Err(Error::CrossCheck(format!(
            "state sum and functor differ (first difference at {at:?})"
        )));
    }
    Ok(report.matrix)
}
