//! The reversed 2-cable and its colored representative.
//!
//! A point of sign `+` or `−` cables to the pair `(+, −)`: the copy with
//! the original orientation sits on the outside of every turn. Crossings
//! of the original word are all upward, so each cabled crossing becomes a
//! block of four strand crossings; three of them join strands of opposite
//! or downward orientation and are written as an upward crossing rotated by
//! caps and cups:
//!
//! | rotation | signs         | slices (bottom first)                                   |
//! |----------|---------------|---------------------------------------------------------|
//! | `Up`     | `(+,+)→(+,+)` | `K`                                                     |
//! | `Cw`     | `(−,+)→(+,−)` | `d,u,nw / d,K,d / sw,u,d`                               |
//! | `Ccw`    | `(+,−)→(−,+)` | `ne,u,d / d,K,d / d,u,se`                               |
//! | `Half`   | `(−,−)→(−,−)` | `d,d,nw / d,d,u,nw,d / d,d,K,d,d / d,sw,u,d,d / sw,d,d` |
//!
//! On the strands `A+, A−, B+, B−` of two crossing cable pairs the block is
//! `Cw` on `A−B+`, `Up` on `A+B+`, `Half` on `A−B−`, `Ccw` on `A+B−`.
//!
//! Each strand crossing carries an integer color `r`: its weight is read off
//! `τ_r`. The colors below make the state sum of a block equal to the
//! corresponding morphism of the `ρ_τ` package; they are checked in the
//! tests against the package itself.

use super::{Generator, Sign, Slice, TangleWord};
use crate::error::{Error, Result};

/// A strand-level word with one color per crossing, in crossing order
/// (bottom to top, left to right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredWord {
    pub word: TangleWord,
    pub colors: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rotation {
    Up,
    Cw,
    Ccw,
    Half,
}

/// Cabled morphisms of the `ρ_τ` package realized by four strand crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// `ρ_τ`
    Rho,
    /// `ρ_τ⁻¹`
    RhoInv,
    /// `ρ_+⁻¹`
    RhoPlusInv,
    /// `ρ_-⁻¹`
    RhoMinusInv,
}

type Step = (Rotation, Generator, i64, usize);

const P: Generator = Generator::Pos;
const N: Generator = Generator::Neg;

/// `(rotation, inner kind, color, strand offset)` in application order.
fn block_table(block: Block) -> [Step; 4] {
    use Rotation::*;
    match block {
        Block::Rho => [(Cw, N, 1, 1), (Up, P, 0, 0), (Half, P, 0, 2), (Ccw, N, -1, 1)],
        Block::RhoInv => [(Cw, P, 0, 1), (Up, N, 1, 0), (Half, N, 1, 2), (Ccw, P, 2, 1)],
        Block::RhoPlusInv => [(Cw, N, -1, 1), (Up, P, -2, 0), (Half, P, 0, 2), (Ccw, N, -1, 1)],
        Block::RhoMinusInv => [(Cw, P, 2, 1), (Up, N, 3, 0), (Half, N, 1, 2), (Ccw, P, 2, 1)],
    }
}

struct Builder {
    signs: Vec<Sign>,
    slices: Vec<Slice>,
    colors: Vec<i64>,
}

impl Builder {
    fn new(signs: Vec<Sign>) -> Self {
        Builder { signs, slices: Vec::new(), colors: Vec::new() }
    }

    fn gen(&mut self, pos: usize, g: Generator, color: i64) {
        let dom = g.dom();
        assert!(
            self.signs.get(pos..pos + dom.len()) == Some(dom),
            "cable builder: {g:?} does not fit at {pos} in {:?}",
            self.signs
        );
        let mut row: Slice = self.signs[..pos].iter().map(|s| Generator::identity_for(*s)).collect();
        row.push(g);
        row.extend(self.signs[pos + dom.len()..].iter().map(|s| Generator::identity_for(*s)));
        let mut next = self.signs[..pos].to_vec();
        next.extend_from_slice(g.cod());
        next.extend_from_slice(&self.signs[pos + dom.len()..]);
        self.signs = next;
        self.slices.push(row);
        if g.is_crossing() {
            self.colors.push(color);
        }
    }

    fn rotated(&mut self, pos: usize, rot: Rotation, kind: Generator, color: i64) {
        use Generator::*;
        match rot {
            Rotation::Up => self.gen(pos, kind, color),
            Rotation::Cw => {
                self.gen(pos + 2, CapNW, 0);
                self.gen(pos + 1, kind, color);
                self.gen(pos, CupSW, 0);
            }
            Rotation::Ccw => {
                self.gen(pos, CapNE, 0);
                self.gen(pos + 1, kind, color);
                self.gen(pos + 2, CupSE, 0);
            }
            Rotation::Half => {
                self.gen(pos + 2, CapNW, 0);
                self.gen(pos + 3, CapNW, 0);
                self.gen(pos + 2, kind, color);
                self.gen(pos + 1, CupSW, 0);
                self.gen(pos, CupSW, 0);
            }
        }
    }

    fn block(&mut self, pos: usize, block: Block) {
        for (rot, kind, color, offset) in block_table(block) {
            self.rotated(pos + offset, rot, kind, color);
        }
    }

    fn nested_cap(&mut self, pos: usize) {
        self.gen(pos, Generator::CapNW, 0);
        self.gen(pos + 1, Generator::CapNE, 0);
    }

    fn nested_cup(&mut self, pos: usize) {
        self.gen(pos + 1, Generator::CupSW, 0);
        self.gen(pos, Generator::CupSE, 0);
    }

    /// `ω^e` on the cable pair at `pos`.
    fn omega_power(&mut self, pos: usize, e: i64) {
        for _ in 0..e.unsigned_abs() {
            self.nested_cap(pos + 2);
            if e > 0 {
                self.block(pos + 2, Block::RhoMinusInv);
                self.block(pos, Block::RhoMinusInv);
                self.nested_cup(pos);
            } else {
                self.block(pos, Block::RhoInv);
                self.block(pos + 2, Block::RhoPlusInv);
                self.nested_cup(pos + 2);
            }
        }
    }

    fn finish(self) -> ColoredWord {
        ColoredWord {
            word: TangleWord::new(self.slices).expect("cable construction keeps slices matched"),
            colors: self.colors,
        }
    }
}

fn cabled_signs(signs: &[Sign]) -> Vec<Sign> {
    signs.iter().flat_map(|_| [Sign::Plus, Sign::Minus]).collect()
}

/// Cables `w`; with `framing = Some(k)` the turnbacks `ne` and `se` also
/// receive the blocks realizing `η̄` and `ε̄` at framing `k`.
fn cable(w: &TangleWord, framing: Option<i64>) -> ColoredWord {
    let w = w.normalized();
    let mut b = Builder::new(cabled_signs(w.dom()));
    if w.slices().is_empty() {
        // Keep the identity visible so the cabled word has the right signs.
        let id = TangleWord::identity(&b.signs);
        return ColoredWord { word: id, colors: Vec::new() };
    }
    let mut wrote_any = false;
    for slice in w.slices() {
        let mut x = 0;
        for g in slice {
            let pos = 2 * x;
            match g {
                Generator::Up | Generator::Down => {}
                Generator::Pos => b.block(pos, Block::Rho),
                Generator::Neg => b.block(pos, Block::RhoInv),
                Generator::CapNW => b.nested_cap(pos),
                Generator::CupSW => b.nested_cup(pos),
                Generator::CapNE => {
                    b.nested_cap(pos);
                    if let Some(k) = framing {
                        b.block(pos, Block::RhoMinusInv);
                        b.omega_power(pos + 2, k);
                    }
                }
                Generator::CupSE => {
                    if let Some(k) = framing {
                        b.omega_power(pos, -k);
                        b.block(pos, Block::RhoPlusInv);
                    }
                    b.nested_cup(pos);
                }
            }
            wrote_any |= !g.is_identity();
            x += g.cod().len();
        }
    }
    if !wrote_any {
        let id = TangleWord::identity(&b.signs);
        return ColoredWord { word: id, colors: Vec::new() };
    }
    b.finish()
}

/// The reversed 2-cable: every strand doubled, the copy reversed.
pub fn two_cable_reversed(w: &TangleWord) -> TangleWord {
    cable(w, None).word
}

/// The colored representative whose state sum reproduces the `ρ_τ`
/// functor at framing `k`.
pub fn colored_cable(w: &TangleWord, k: i64) -> ColoredWord {
    cable(w, Some(k))
}

/// One block on `(+,−,+,−)`, for tests and diagnostics.
pub fn block_word(block: Block) -> ColoredWord {
    let mut b = Builder::new(cabled_signs(&[Sign::Plus, Sign::Plus]));
    b.block(0, block);
    b.finish()
}

/// `ω^e` on a single cable pair `(+,−)`.
pub fn omega_word(e: i64) -> Result<ColoredWord> {
    if e == 0 {
        return Err(Error::InvalidTangle("ω^0 is the identity and has no block".into()));
    }
    let mut b = Builder::new(cabled_signs(&[Sign::Plus]));
    b.omega_power(0, e);
    Ok(b.finish())
}
