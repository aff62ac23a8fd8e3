//! Sliced words for directed planar ribbon tangles.
//!
//! A word is a list of slices read bottom to top; each slice is a left to
//! right list of generators whose codomain signs feed the next slice.

pub mod cable;
pub mod corpus;
pub mod diagram;
pub mod moves;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use cable::{colored_cable, two_cable_reversed, ColoredWord};
pub use diagram::{diagram_combinatorics, Crossing, DiagramCombinatorics, Edge, EndPoint};
pub use moves::{insert_kink, kink_word, reidemeister_variants, KinkKind};

/// Orientation of a boundary point: `+` runs upward, `−` downward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

pub fn format_signs(signs: &[Sign]) -> String {
    let inner: Vec<String> = signs.iter().map(|s| s.to_string()).collect();
    format!("({})", inner.join(","))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Up,
    Down,
    Pos,
    Neg,
    CapNW,
    CapNE,
    CupSW,
    CupSE,
}

use Sign::{Minus, Plus};

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::Up,
        Generator::Down,
        Generator::Pos,
        Generator::Neg,
        Generator::CapNW,
        Generator::CapNE,
        Generator::CupSW,
        Generator::CupSE,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Generator::Up => "u",
            Generator::Down => "d",
            Generator::Pos => "p",
            Generator::Neg => "n",
            Generator::CapNW => "nw",
            Generator::CapNE => "ne",
            Generator::CupSW => "sw",
            Generator::CupSE => "se",
        }
    }

    pub fn from_token(t: &str) -> Option<Self> {
        Generator::ALL.into_iter().find(|g| g.token() == t)
    }

    pub fn dom(self) -> &'static [Sign] {
        match self {
            Generator::Up => &[Plus],
            Generator::Down => &[Minus],
            Generator::Pos | Generator::Neg => &[Plus, Plus],
            Generator::CapNW | Generator::CapNE => &[],
            Generator::CupSW => &[Minus, Plus],
            Generator::CupSE => &[Plus, Minus],
        }
    }

    pub fn cod(self) -> &'static [Sign] {
        match self {
            Generator::Up => &[Plus],
            Generator::Down => &[Minus],
            Generator::Pos | Generator::Neg => &[Plus, Plus],
            Generator::CapNW => &[Plus, Minus],
            Generator::CapNE => &[Minus, Plus],
            Generator::CupSW | Generator::CupSE => &[],
        }
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, Generator::Pos | Generator::Neg)
    }

    pub fn is_identity(self) -> bool {
        matches!(self, Generator::Up | Generator::Down)
    }

    pub fn identity_for(sign: Sign) -> Self {
        match sign {
            Plus => Generator::Up,
            Minus => Generator::Down,
        }
    }
}

pub type Slice = Vec<Generator>;

fn slice_signs(slice: &[Generator], side: fn(Generator) -> &'static [Sign]) -> Vec<Sign> {
    slice.iter().flat_map(|g| side(*g).iter().copied()).collect()
}

/// A validated word; `dom` and `cod` are the signs at the bottom and top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangleWord {
    slices: Vec<Slice>,
    dom: Vec<Sign>,
    cod: Vec<Sign>,
}

impl TangleWord {
    /// Checks that consecutive slices match; empty slices are dropped.
    pub fn new(slices: Vec<Slice>) -> Result<Self> {
        let slices: Vec<Slice> = slices.into_iter().filter(|s| !s.is_empty()).collect();
        for t in 1..slices.len() {
            let below = slice_signs(&slices[t - 1], Generator::cod);
            let here = slice_signs(&slices[t], Generator::dom);
            if below != here {
                return Err(Error::InvalidTangle(format!(
                    "slice {} expects dom {} but slice {} ends in {}",
                    t + 1,
                    format_signs(&here),
                    t,
                    format_signs(&below)
                )));
            }
        }
        let dom = slices.first().map_or(Vec::new(), |s| slice_signs(s, Generator::dom));
        let cod = slices.last().map_or(Vec::new(), |s| slice_signs(s, Generator::cod));
        Ok(TangleWord { slices, dom, cod })
    }

    /// The identity word on `signs` (a single slice of straight strands).
    pub fn identity(signs: &[Sign]) -> Self {
        TangleWord::new(vec![signs.iter().map(|s| Generator::identity_for(*s)).collect()])
            .expect("identity slices are valid")
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn dom(&self) -> &[Sign] {
        &self.dom
    }

    pub fn cod(&self) -> &[Sign] {
        &self.cod
    }

    /// Signs at level `t` (0 is the bottom, `slices.len()` the top).
    pub fn level_signs(&self, t: usize) -> Vec<Sign> {
        if t == 0 {
            self.dom.clone()
        } else {
            slice_signs(&self.slices[t - 1], Generator::cod)
        }
    }

    pub fn count(&self, g: Generator) -> usize {
        self.slices.iter().flatten().filter(|x| **x == g).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.count(Generator::Pos) + self.count(Generator::Neg)
    }

    /// `other ∘ self`: `self` below, `other` on top.
    pub fn then(&self, other: &TangleWord) -> Result<TangleWord> {
        if self.cod != other.dom {
            return Err(Error::InvalidTangle(format!(
                "cannot compose: cod {} vs dom {}",
                format_signs(&self.cod),
                format_signs(&other.dom)
            )));
        }
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        TangleWord::new(slices)
    }

    /// Side by side; the shorter word is padded with identity slices.
    pub fn tensor(&self, other: &TangleWord) -> TangleWord {
        let n = self.slices.len().max(other.slices.len());
        let pad = |w: &TangleWord, t: usize| -> Slice {
            match w.slices.get(t) {
                Some(s) => s.clone(),
                None => w.cod.iter().map(|s| Generator::identity_for(*s)).collect(),
            }
        };
        let slices = (0..n)
            .map(|t| {
                let mut s = pad(self, t);
                s.extend(pad(other, t));
                s
            })
            .collect();
        TangleWord::new(slices).expect("side by side words stay valid")
    }

    /// Splits every slice so that it holds at most one non-identity
    /// generator (a planar isotopy).
    pub fn normalized(&self) -> TangleWord {
        let mut out = Vec::new();
        for (t, slice) in self.slices.iter().enumerate() {
            let mut current = self.level_signs(t);
            let active: Vec<usize> = (0..slice.len()).filter(|&i| !slice[i].is_identity()).collect();
            if active.len() <= 1 {
                out.push(slice.clone());
                continue;
            }
            // Apply the active generators from left to right; positions shift
            // by the width change of those already applied.
            let mut shift: isize = 0;
            for &i in &active {
                let pos = slice[..i].iter().map(|g| g.dom().len()).sum::<usize>();
                let at = (pos as isize + shift) as usize;
                let g = slice[i];
                let mut new_slice: Slice = current[..at].iter().map(|s| Generator::identity_for(*s)).collect();
                new_slice.push(g);
                new_slice.extend(current[at + g.dom().len()..].iter().map(|s| Generator::identity_for(*s)));
                let mut next = current[..at].to_vec();
                next.extend_from_slice(g.cod());
                next.extend_from_slice(&current[at + g.dom().len()..]);
                current = next;
                shift += g.cod().len() as isize - g.dom().len() as isize;
                out.push(new_slice);
            }
        }
        TangleWord::new(out).expect("normalization preserves validity")
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for slice in &self.slices {
            let tokens: Vec<&str> = slice.iter().map(|g| g.token()).collect();
            writeln!(f, "{}", tokens.join(","))?;
        }
        Ok(())
    }
}

/// Parses the slice format; the first non-blank line is the bottom slice.
pub fn parse_tangle(text: &str) -> Result<TangleWord> {
    let mut slices: Vec<Slice> = Vec::new();
    let mut prev_cod: Option<(usize, Vec<Sign>)> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut slice = Vec::new();
        for (pos, tok) in line.split(',').enumerate() {
            let tok = tok.trim();
            let g = Generator::from_token(tok).ok_or_else(|| Error::TangleParse {
                line: lineno + 1,
                position: pos + 1,
                reason: format!("unknown token {tok:?}"),
            })?;
            slice.push(g);
        }
        let dom = slice_signs(&slice, Generator::dom);
        if let Some((_, cod)) = &prev_cod {
            if *cod != dom {
                // Locate the first generator whose expected signs disagree.
                let mut offset = 0;
                let mut bad = slice.len();
                for (i, g) in slice.iter().enumerate() {
                    let need = g.dom();
                    if cod.get(offset..offset + need.len()) != Some(need) {
                        bad = i;
                        break;
                    }
                    offset += need.len();
                }
                let position = (bad + 1).min(slice.len().max(1));
                return Err(Error::TangleParse {
                    line: lineno + 1,
                    position,
                    reason: format!(
                        "slice {} expects dom {} but the previous slice ends in {}",
                        slices.len() + 1,
                        format_signs(&dom),
                        format_signs(cod)
                    ),
                });
            }
        }
        prev_cod = Some((lineno, slice_signs(&slice, Generator::cod)));
        slices.push(slice);
    }
    TangleWord::new(slices)
}

/// `(dom, cod)` sign sequences.
pub fn boundary_signatures(w: &TangleWord) -> (Vec<Sign>, Vec<Sign>) {
    (w.dom.clone(), w.cod.clone())
}

/// A point on a slice boundary: `(level, position)`.
pub type Port = (usize, usize);

/// Port numbering shared by the component and diagram code.
pub(crate) struct PortIndex {
    offsets: Vec<usize>,
    widths: Vec<usize>,
}

impl PortIndex {
    pub(crate) fn new(w: &TangleWord) -> Self {
        let widths: Vec<usize> = (0..=w.slices.len()).map(|t| w.level_signs(t).len()).collect();
        let mut offsets = Vec::with_capacity(widths.len());
        let mut acc = 0;
        for wd in &widths {
            offsets.push(acc);
            acc += wd;
        }
        offsets.push(acc);
        PortIndex { offsets, widths }
    }

    pub(crate) fn id(&self, (level, pos): Port) -> usize {
        debug_assert!(pos < self.widths[level]);
        self.offsets[level] + pos
    }

    pub(crate) fn total(&self) -> usize {
        *self.offsets.last().expect("at least one level")
    }
}

/// Union-find with path halving; roots are the smallest element.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Generator counts and derived numbers for one connected component.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Ports `(level, position)` on the component, sorted.
    pub ports: Vec<Port>,
    pub pos: usize,
    pub neg: usize,
    pub nw: usize,
    pub ne: usize,
    pub sw: usize,
    pub se: usize,
    /// Crossings shared with another component.
    pub mixed_crossings: usize,
}

impl Component {
    pub fn writhe(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    /// Twice the winding number.
    pub fn twice_winding(&self) -> i64 {
        self.ne as i64 + self.sw as i64 - self.se as i64 - self.nw as i64
    }

    /// `true` when the component has no boundary point.
    pub fn is_closed(&self, w: &TangleWord) -> bool {
        let top = w.slices.len();
        !self.ports.iter().any(|(l, _)| *l == 0 || *l == top)
    }
}

/// Components of the diagram, ordered by their lowest port.
pub fn connected_components(w: &TangleWord) -> Vec<Component> {
    let idx = PortIndex::new(w);
    let mut uf = UnionFind::new(idx.total());
    for (t, slice) in w.slices.iter().enumerate() {
        let (mut a, mut b) = (0, 0);
        for g in slice {
            match g {
                Generator::Up | Generator::Down => uf.union(idx.id((t, a)), idx.id((t + 1, b))),
                Generator::Pos | Generator::Neg => {
                    uf.union(idx.id((t, a)), idx.id((t + 1, b + 1)));
                    uf.union(idx.id((t, a + 1)), idx.id((t + 1, b)));
                }
                Generator::CapNW | Generator::CapNE => uf.union(idx.id((t + 1, b)), idx.id((t + 1, b + 1))),
                Generator::CupSW | Generator::CupSE => uf.union(idx.id((t, a)), idx.id((t, a + 1))),
            }
            a += g.dom().len();
            b += g.cod().len();
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut comps: Vec<Component> = Vec::new();
    let mut lookup = |uf: &mut UnionFind, port: usize, comps: &mut Vec<Component>| -> usize {
        let r = uf.find(port);
        match roots.iter().position(|x| *x == r) {
            Some(i) => i,
            None => {
                roots.push(r);
                comps.push(Component::default());
                comps.len() - 1
            }
        }
    };
    for level in 0..=w.slices.len() {
        for pos in 0..w.level_signs(level).len() {
            let c = lookup(&mut uf, idx.id((level, pos)), &mut comps);
            comps[c].ports.push((level, pos));
        }
    }
    for (t, slice) in w.slices.iter().enumerate() {
        let (mut a, mut b) = (0, 0);
        for g in slice {
            let port = if g.dom().is_empty() { idx.id((t + 1, b)) } else { idx.id((t, a)) };
            let c = lookup(&mut uf, port, &mut comps);
            match g {
                Generator::Pos | Generator::Neg => {
                    let other = lookup(&mut uf, idx.id((t, a + 1)), &mut comps);
                    if other != c {
                        comps[c].mixed_crossings += 1;
                        comps[other].mixed_crossings += 1;
                    } else if *g == Generator::Pos {
                        comps[c].pos += 1;
                    } else {
                        comps[c].neg += 1;
                    }
                }
                Generator::CapNW => comps[c].nw += 1,
                Generator::CapNE => comps[c].ne += 1,
                Generator::CupSW => comps[c].sw += 1,
                Generator::CupSE => comps[c].se += 1,
                Generator::Up | Generator::Down => {}
            }
            a += g.dom().len();
            b += g.cod().len();
        }
    }
    comps
}

/// Writhe and twice the winding number of each component.
pub fn writhe_winding(w: &TangleWord) -> Vec<(i64, i64)> {
    connected_components(w)
        .iter()
        .map(|c| (c.writhe(), c.twice_winding()))
        .collect()
}
