//! Crossings, boundary points and edges of a diagram, with the over/under
//! data and the face labels `f_0..f_3` that define its Δ-complex.

use serde::Serialize;

use super::{Generator, Sign, TangleWord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EndPoint {
    Boundary(usize),
    Crossing(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// `+1` for `p`, `-1` for `n`.
    pub sign: i8,
    pub slice: usize,
    /// Position of the left strand at the bottom of the crossing.
    pub pos: usize,
    /// Edge labels `f_0..f_3`.
    pub faces: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryPoint {
    pub top: bool,
    pub pos: usize,
    pub sign: Sign,
    pub edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub dom: EndPoint,
    pub cod: EndPoint,
    /// Over (`+1`), under (`-1`) or boundary (`0`) at the start.
    pub ss: i8,
    /// Same at the end.
    pub st: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramCombinatorics {
    pub crossings: Vec<Crossing>,
    /// Bottom points left to right, then top points left to right.
    pub boundary: Vec<BoundaryPoint>,
    pub edges: Vec<Edge>,
}

impl DiagramCombinatorics {
    pub fn bottom_edges(&self) -> Vec<usize> {
        self.boundary.iter().filter(|b| !b.top).map(|b| b.edge).collect()
    }

    pub fn top_edges(&self) -> Vec<usize> {
        self.boundary.iter().filter(|b| b.top).map(|b| b.edge).collect()
    }
}

/// Which corner of a crossing an edge end sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Corner {
    BottomLeft,
    BottomRight,
    TopLeft,
    TopRight,
}

/// Face index of a corner and whether the strand there is the over strand.
fn corner_face(sign: i8, corner: Corner) -> (usize, bool) {
    match (sign, corner) {
        (1, Corner::BottomRight) => (0, false),
        (1, Corner::TopLeft) => (1, false),
        (1, Corner::BottomLeft) => (2, true),
        (1, Corner::TopRight) => (3, true),
        (_, Corner::TopRight) => (0, false),
        (_, Corner::BottomLeft) => (1, false),
        (_, Corner::TopLeft) => (2, true),
        (_, Corner::BottomRight) => (3, true),
    }
}

/// Per-slice lookup from a position to the generator covering it.
struct SliceMap {
    /// For each dom position: (generator index, local offset).
    below: Vec<(usize, usize)>,
    above: Vec<(usize, usize)>,
    /// Start position of each generator on the dom and cod side.
    starts: Vec<(usize, usize)>,
}

impl SliceMap {
    fn new(slice: &[Generator]) -> Self {
        let (mut below, mut above, mut starts) = (Vec::new(), Vec::new(), Vec::new());
        for (i, g) in slice.iter().enumerate() {
            starts.push((below.len(), above.len()));
            below.extend((0..g.dom().len()).map(|o| (i, o)));
            above.extend((0..g.cod().len()).map(|o| (i, o)));
        }
        SliceMap { below, above, starts }
    }
}

enum Stop {
    Boundary { top: bool, pos: usize },
    Crossing { index: usize, corner: Corner },
}

/// Builds the combinatorial data of `w`.
///
/// Edges are the traced arcs between crossings and boundary points. They
/// are numbered by their starting point, scanning levels from the top down
/// and positions left to right.
pub fn diagram_combinatorics(w: &TangleWord) -> Result<DiagramCombinatorics> {
    if super::connected_components(w)
        .iter()
        .any(|c| c.is_closed(w) && c.pos + c.neg + c.mixed_crossings == 0)
    {
        return Err(Error::InvalidDiagram(
            "the diagram contains a closed component without crossings".into(),
        ));
    }
    let slices = w.slices();
    let height = slices.len();
    let maps: Vec<SliceMap> = slices.iter().map(|s| SliceMap::new(s)).collect();

    // Crossing numbering: bottom to top, left to right.
    let mut crossing_at = vec![Vec::new(); height];
    let mut crossings = Vec::new();
    for (t, slice) in slices.iter().enumerate() {
        crossing_at[t] = vec![usize::MAX; slice.len()];
        for (i, g) in slice.iter().enumerate() {
            if g.is_crossing() {
                crossing_at[t][i] = crossings.len();
                crossings.push(Crossing {
                    sign: if *g == Generator::Pos { 1 } else { -1 },
                    slice: t,
                    pos: maps[t].starts[i].0,
                    faces: [usize::MAX; 4],
                });
            }
        }
    }

    let bottom = w.dom().to_vec();
    let top = w.cod().to_vec();
    let mut boundary: Vec<BoundaryPoint> = bottom
        .iter()
        .enumerate()
        .map(|(pos, s)| BoundaryPoint { top: false, pos, sign: *s, edge: usize::MAX })
        .chain(top.iter().enumerate().map(|(pos, s)| BoundaryPoint {
            top: true,
            pos,
            sign: *s,
            edge: usize::MAX,
        }))
        .collect();
    let boundary_index = |is_top: bool, pos: usize| if is_top { bottom.len() + pos } else { pos };

    // Follows the strand leaving port (level, pos) in its own direction.
    let trace = |mut level: usize, mut pos: usize, mut upward: bool| -> Stop {
        loop {
            if upward {
                if level == height {
                    return Stop::Boundary { top: true, pos };
                }
                let (gi, off) = maps[level].below[pos];
                let g = slices[level][gi];
                let (sb, sa) = maps[level].starts[gi];
                match g {
                    Generator::Up => {
                        level += 1;
                        pos = sa;
                    }
                    Generator::Pos | Generator::Neg => {
                        let corner = if off == 0 { Corner::BottomLeft } else { Corner::BottomRight };
                        return Stop::Crossing { index: crossing_at[level][gi], corner };
                    }
                    Generator::CupSW | Generator::CupSE => {
                        pos = sb + (1 - off);
                        upward = false;
                    }
                    _ => unreachable!("sign tables forbid moving up into {g:?}"),
                }
            } else {
                if level == 0 {
                    return Stop::Boundary { top: false, pos };
                }
                let (gi, off) = maps[level - 1].above[pos];
                let g = slices[level - 1][gi];
                let (sb, sa) = maps[level - 1].starts[gi];
                match g {
                    Generator::Down => {
                        level -= 1;
                        pos = sb;
                    }
                    Generator::CapNW | Generator::CapNE => {
                        pos = sa + (1 - off);
                        upward = true;
                    }
                    _ => unreachable!("sign tables forbid moving down into {g:?}"),
                }
            }
        }
    };

    // Edge starting points: (level, pos, origin, corner at a crossing).
    let mut starts: Vec<(usize, usize, EndPoint, Option<Corner>)> = Vec::new();
    for (pos, s) in top.iter().enumerate() {
        if *s == Sign::Minus {
            starts.push((height, pos, EndPoint::Boundary(boundary_index(true, pos)), None));
        }
    }
    for t in (0..height).rev() {
        for (gi, g) in slices[t].iter().enumerate() {
            if g.is_crossing() {
                let c = crossing_at[t][gi];
                let sa = maps[t].starts[gi].1;
                starts.push((t + 1, sa, EndPoint::Crossing(c), Some(Corner::TopLeft)));
                starts.push((t + 1, sa + 1, EndPoint::Crossing(c), Some(Corner::TopRight)));
            }
        }
    }
    for (pos, s) in bottom.iter().enumerate() {
        if *s == Sign::Plus {
            starts.push((0, pos, EndPoint::Boundary(boundary_index(false, pos)), None));
        }
    }

    let mut edges = Vec::new();
    for (level, pos, origin, corner) in starts {
        let e = edges.len();
        let upward = match origin {
            EndPoint::Crossing(_) => true,
            EndPoint::Boundary(b) => boundary[b].sign == Sign::Plus,
        };
        // A top point with sign `−` or a crossing top corner starts the edge
        // at its own level; a bottom `+` point as well.
        let ss = match (origin, corner) {
            (EndPoint::Crossing(c), Some(k)) => {
                let (f, over) = corner_face(crossings[c].sign, k);
                crossings[c].faces[f] = e;
                if over { 1 } else { -1 }
            }
            (EndPoint::Boundary(b), _) => {
                boundary[b].edge = e;
                0
            }
            _ => unreachable!(),
        };
        let (cod, st) = match trace(level, pos, upward) {
            Stop::Boundary { top: is_top, pos } => {
                let b = boundary_index(is_top, pos);
                boundary[b].edge = e;
                (EndPoint::Boundary(b), 0)
            }
            Stop::Crossing { index, corner } => {
                let (f, over) = corner_face(crossings[index].sign, corner);
                crossings[index].faces[f] = e;
                (EndPoint::Crossing(index), if over { 1 } else { -1 })
            }
        };
        edges.push(Edge { dom: origin, cod, ss, st });
    }

    let expected_ends = 4 * crossings.len() + boundary.len();
    if 2 * edges.len() != expected_ends {
        return Err(Error::Internal(format!(
            "edge bookkeeping failed: {} edges for {} ends",
            edges.len(),
            expected_ends
        )));
    }
    Ok(DiagramCombinatorics { crossings, boundary, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::parse_tangle;

    fn comb(text: &str) -> DiagramCombinatorics {
        diagram_combinatorics(&parse_tangle(text).unwrap()).unwrap()
    }

    #[test]
    fn straight_strand() {
        let g = comb("u");
        assert!(g.crossings.is_empty());
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.boundary.len(), 2);
        assert_eq!((g.edges[0].ss, g.edges[0].st), (0, 0));
        assert_eq!(g.edges[0].dom, EndPoint::Boundary(0));
        assert_eq!(g.edges[0].cod, EndPoint::Boundary(1));
    }

    #[test]
    fn single_crossing_faces() {
        let g = comb("p");
        assert_eq!(g.edges.len(), 4);
        let v = &g.crossings[0];
        // f_0 is the incoming under edge: it starts at the bottom-right point.
        let f0 = &g.edges[v.faces[0]];
        assert_eq!(f0.cod, EndPoint::Crossing(0));
        assert_eq!(f0.st, -1);
        assert_eq!(f0.dom, EndPoint::Boundary(1));
        let f2 = &g.edges[v.faces[2]];
        assert_eq!((f2.dom, f2.st), (EndPoint::Boundary(0), 1));
        let n = comb("n");
        let f1 = &n.edges[n.crossings[0].faces[1]];
        assert_eq!((f1.dom, f1.st), (EndPoint::Boundary(0), -1));
    }

    #[test]
    fn kink_has_three_edges() {
        let g = comb("u,nw\np,d\nu,se");
        assert_eq!(g.crossings.len(), 1);
        assert_eq!(g.edges.len(), 3);
        let mut faces = g.crossings[0].faces.to_vec();
        faces.sort();
        faces.dedup();
        assert_eq!(faces.len(), 3, "the loop edge occupies two corners");
    }

    #[test]
    fn closed_trefoil_counts() {
        let g = comb("nw\nu,nw,d\np,d,d\np,d,d\np,d,d\nu,se,d\nse");
        assert_eq!(g.crossings.len(), 3);
        assert_eq!(g.edges.len(), 6);
        assert!(g.crossings.iter().all(|c| c.faces.iter().all(|f| *f < 6)));
        assert!(g.boundary.is_empty());
    }

    #[test]
    fn closed_loop_without_crossings_is_rejected() {
        let w = parse_tangle("ne\nsw").unwrap();
        assert!(matches!(diagram_combinatorics(&w), Err(Error::InvalidDiagram(_))));
        let w = parse_tangle("u,ne\nu,sw").unwrap();
        assert!(diagram_combinatorics(&w).is_err());
    }

    #[test]
    fn uniqueness_clause_for_f0() {
        for text in ["p", "n", "u,nw\np,d\nu,se", "nw\nu,nw,d\np,d,d\nn,d,d\np,d,d\nu,se,d\nse"] {
            let g = comb(text);
            for (v, c) in g.crossings.iter().enumerate() {
                let incoming_under: Vec<usize> = (0..g.edges.len())
                    .filter(|&e| g.edges[e].cod == EndPoint::Crossing(v) && g.edges[e].st == -1)
                    .collect();
                let outgoing_under: Vec<usize> = (0..g.edges.len())
                    .filter(|&e| g.edges[e].dom == EndPoint::Crossing(v) && g.edges[e].ss == -1)
                    .collect();
                let expected = if c.sign == 1 { &incoming_under } else { &outgoing_under };
                assert_eq!(expected, &vec![c.faces[0]], "{text}");
            }
        }
    }
}
