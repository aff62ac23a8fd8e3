//! Named diagrams used by the tests, the acceptance run and the CLI docs.

use super::{parse_tangle, Generator, Sign, TangleWord};

pub const UNKNOT: &str = "u\n";
/// Right-handed trefoil, `σ1³` closed on the right.
pub const TREFOIL_RIGHT: &str = "u,nw\np,d\np,d\np,d\nu,se\n";
/// The same knot, `σ1³` closed on the left.
pub const TREFOIL_LEFT: &str = "ne,u\nd,p\nd,p\nd,p\nsw,u\n";
/// `(σ1σ2)²` on three strands with the two right strands closed.
pub const TREFOIL_BRAID: &str = "u,nw\nu,u,nw,d\np,u,d,d\nu,p,d,d\np,u,d,d\nu,p,d,d\nu,u,se,d\nu,se\n";
/// `σ1σ2⁻¹σ1σ2⁻¹` with the two right strands closed.
pub const FIGURE_EIGHT: &str = "u,nw\nu,u,nw,d\np,u,d,d\nu,n,d,d\np,u,d,d\nu,n,d,d\nu,u,se,d\nu,se\n";
pub const CLOSED_TREFOIL: &str = "nw\nu,nw,d\np,d,d\np,d,d\np,d,d\nu,se,d\nse\n";
pub const CLOSED_FIGURE_EIGHT: &str =
    "nw\nu,nw,d\nu,u,nw,d,d\np,u,d,d,d\nu,n,d,d,d\np,u,d,d,d\nu,n,d,d,d\nu,u,se,d,d\nu,se,d\nse\n";

/// Connected `(+) → (+)` words.
pub fn long_knots() -> Vec<(&'static str, TangleWord)> {
    [
        ("unknot", UNKNOT),
        ("kinked_unknot", "u,nw\np,d\nu,se\n"),
        ("trefoil_right", TREFOIL_RIGHT),
        ("trefoil_left", TREFOIL_LEFT),
        ("trefoil_braid", TREFOIL_BRAID),
        ("figure_eight", FIGURE_EIGHT),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_tangle(text).expect("corpus words parse")))
    .collect()
}

/// Every diagram of the corpus, open and closed.
pub fn all_diagrams() -> Vec<(&'static str, TangleWord)> {
    let mut out = long_knots();
    for (name, text) in [
        ("closed_trefoil", CLOSED_TREFOIL),
        ("closed_figure_eight", CLOSED_FIGURE_EIGHT),
        ("crossing", "p\n"),
        ("hopf_tangle", "p\np\n"),
        ("braid_3", "p,u\nu,n\np,u\n"),
    ] {
        out.push((name, parse_tangle(text).expect("corpus words parse")));
    }
    out
}

/// A braid on `strands` upward strands; each letter is `(i, positive)` for
/// `σ_{i+1}^{±1}`.
pub fn braid_word(strands: usize, letters: &[(usize, bool)]) -> TangleWord {
    let slices = letters
        .iter()
        .map(|&(i, positive)| {
            let mut row = vec![Generator::Up; i];
            row.push(if positive { Generator::Pos } else { Generator::Neg });
            row.extend(vec![Generator::Up; strands - i - 2]);
            row
        })
        .collect::<Vec<_>>();
    if slices.is_empty() {
        return TangleWord::identity(&vec![Sign::Plus; strands]);
    }
    TangleWord::new(slices).expect("braid letters are valid")
}
