//! Combinatorial Δ-complexes and the universal complex of a presentation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tangle::{DiagramCombinatorics, UnionFind};

/// Cells are numbered `0..counts[m]` in each dimension `m`;
/// `faces[m][c][i]` is `∂_i` of cell `c` of dimension `m ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaComplex {
    pub counts: Vec<usize>,
    /// `faces[0]` is empty; `faces[m]` has `counts[m]` rows of `m + 1` entries.
    pub faces: Vec<Vec<Vec<usize>>>,
}

impl DeltaComplex {
    pub fn dimension(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn face(&self, m: usize, cell: usize, i: usize) -> usize {
        self.faces[m][cell][i]
    }
}

/// `⟨A, B, f_0..f_n⟩`: `top` cells of dimension `n`, `next` cells of
/// dimension `n − 1`, and `faces[a][i] = f_i(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub n: usize,
    pub top: usize,
    pub next: usize,
    pub faces: Vec<Vec<usize>>,
}

impl Presentation {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidPresentation("n must be at least 1".into()));
        }
        if self.top == 0 {
            return Err(Error::InvalidPresentation("the set of top cells is empty".into()));
        }
        if self.faces.len() != self.top {
            return Err(Error::InvalidPresentation(format!(
                "{} face rows for {} top cells",
                self.faces.len(),
                self.top
            )));
        }
        for (a, row) in self.faces.iter().enumerate() {
            if row.len() != self.n + 1 {
                return Err(Error::InvalidPresentation(format!("top cell {a} needs {} faces", self.n + 1)));
            }
            if let Some(b) = row.iter().find(|b| **b >= self.next) {
                return Err(Error::InvalidPresentation(format!("top cell {a} has face {b} out of range")));
            }
        }
        Ok(())
    }
}

/// The universal complex: below dimension `n − 1`, cells are classes of
/// `(β, i)` under `(∂_{j+1}α, i) ~ (∂_iα, j)` for `i ≤ j`.
///
/// Classes are numbered by their least `(cell, index)` pair, so the output
/// depends only on the presentation.
pub fn complex_from_presentation(p: &Presentation) -> Result<DeltaComplex> {
    p.validate()?;
    let n = p.n;
    let mut counts = vec![0; n + 1];
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    counts[n] = p.top;
    counts[n - 1] = p.next;
    faces[n] = p.faces.clone();
    // Build dimension m from the cells of dimension m + 1 (rows of faces[m + 1]).
    for m in (0..n - 1).rev() {
        let upper = counts[m + 1];
        let arity = m + 2; // each (m+1)-cell has faces 0..=m+1
        let key = |beta: usize, i: usize| beta * arity + i;
        let mut uf = UnionFind::new(upper * arity);
        for alpha in &faces[m + 2] {
            for j in 0..=m + 1 {
                for i in 0..=j {
                    uf.union(key(alpha[j + 1], i), key(alpha[i], j));
                }
            }
        }
        let mut class_of_root = vec![usize::MAX; upper * arity];
        let mut next_id = 0;
        let mut rows = vec![vec![0; arity]; upper];
        for (beta, row) in rows.iter_mut().enumerate() {
            for (i, slot) in row.iter_mut().enumerate() {
                let r = uf.find(key(beta, i));
                if class_of_root[r] == usize::MAX {
                    class_of_root[r] = next_id;
                    next_id += 1;
                }
                *slot = class_of_root[r];
            }
        }
        counts[m] = next_id;
        faces[m + 1] = rows;
    }
    let complex = DeltaComplex { counts, faces };
    let report = validate_complex(&complex);
    if !report.passed {
        return Err(Error::Internal(format!(
            "universal complex violates a simplicial identity at {:?}",
            report.first_failure
        )));
    }
    Ok(complex)
}

/// A simplicial identity instance that fails: `∂_i∂_{j+1}c ≠ ∂_j∂_i c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityWitness {
    pub dim: usize,
    pub cell: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<IdentityWitness>,
}

/// Checks every instance of the simplicial identities.
pub fn validate_complex(x: &DeltaComplex) -> ComplexReport {
    let mut checked = 0;
    let mut failures = 0;
    let mut first_failure = None;
    for m in 2..x.counts.len() {
        for cell in 0..x.counts[m] {
            for j in 0..m {
                for i in 0..=j {
                    checked += 1;
                    let lhs = x.face(m - 1, x.face(m, cell, j + 1), i);
                    let rhs = x.face(m - 1, x.face(m, cell, i), j);
                    if lhs != rhs {
                        failures += 1;
                        first_failure.get_or_insert(IdentityWitness { dim: m, cell, i, j });
                    }
                }
            }
        }
    }
    ComplexReport { passed: failures == 0, checked, failures, first_failure }
}

/// `D_Γ`: the universal complex of `⟨Γ_04, Γ_1, f_0..f_3⟩`.
pub fn delta_complex_of_diagram(g: &DiagramCombinatorics) -> Result<DeltaComplex> {
    if g.crossings.is_empty() {
        return Err(Error::InvalidDiagram("a diagram without crossings has no 3-cells".into()));
    }
    let p = Presentation {
        n: 3,
        top: g.crossings.len(),
        next: g.edges.len(),
        faces: g.crossings.iter().map(|c| c.faces.to_vec()).collect(),
    };
    complex_from_presentation(&p)
}

/// Extends bijections on the two top dimensions to a cell-by-cell
/// isomorphism `x → y`, or returns `None`.
pub fn extend_isomorphism(
    x: &DeltaComplex,
    y: &DeltaComplex,
    top_map: &[usize],
    next_map: &[usize],
) -> Option<Vec<Vec<usize>>> {
    let n = x.dimension();
    if x.counts != y.counts || n == 0 {
        return None;
    }
    let mut maps: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    maps[n] = top_map.to_vec();
    maps[n - 1] = next_map.to_vec();
    for m in (0..n - 1).rev() {
        let mut map = vec![usize::MAX; x.counts[m]];
        for (beta, &image) in maps[m + 1].iter().enumerate() {
            for i in 0..=m + 1 {
                let src = x.face(m + 1, beta, i);
                let dst = y.face(m + 1, image, i);
                if map[src] == usize::MAX {
                    map[src] = dst;
                } else if map[src] != dst {
                    return None;
                }
            }
        }
        maps[m] = map;
    }
    is_isomorphism(x, y, &maps).then_some(maps)
}

/// Bijective in each dimension and compatible with every face map.
pub fn is_isomorphism(x: &DeltaComplex, y: &DeltaComplex, maps: &[Vec<usize>]) -> bool {
    if x.counts != y.counts || maps.len() != x.counts.len() {
        return false;
    }
    for (m, map) in maps.iter().enumerate() {
        if map.len() != x.counts[m] {
            return false;
        }
        let mut seen = vec![false; y.counts[m]];
        for &v in map {
            if v >= y.counts[m] || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
    }
    (1..x.counts.len()).all(|m| {
        (0..x.counts[m]).all(|c| (0..=m).all(|i| maps[m - 1][x.face(m, c, i)] == y.face(m, maps[m][c], i)))
    })
}

/// Relabels the top and next cells of `p` by the permutations given
/// (`new index = perm[old index]`).
pub fn permute_presentation(p: &Presentation, top_perm: &[usize], next_perm: &[usize]) -> Presentation {
    let mut faces = vec![Vec::new(); p.top];
    for (a, row) in p.faces.iter().enumerate() {
        faces[top_perm[a]] = row.iter().map(|b| next_perm[*b]).collect();
    }
    Presentation { n: p.n, top: p.top, next: p.next, faces }
}
