//! Slice-by-slice evaluation of the tangle functor `Φ_{ρ,k}` and the
//! curl-corrected invariant `Ψ_ρ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linmap::{Morphism, ObjectWord, Pipeline, Prepared};
use crate::rmatrix::{bar_duality_with_k, RMatrixPackage};
use crate::tangle::{connected_components, kink_word, Generator, KinkKind, Sign, TangleWord};

/// Images of the eight generators, prepared for repeated application.
pub struct FunctorAssignment<S: Field> {
    plus: ObjectWord,
    minus: ObjectWord,
    images: [Prepared<S>; 6],
}

impl<S: Field> FunctorAssignment<S> {
    pub fn new(pkg: &RMatrixPackage<S>, k: i64) -> Result<Self> {
        let bar = bar_duality_with_k(pkg, k)?;
        Ok(FunctorAssignment {
            plus: pkg.obj.clone(),
            minus: pkg.dual_obj().clone(),
            images: [
                Prepared::new(pkg.rho.clone()),
                Prepared::new(pkg.rho_inv.clone()),
                Prepared::new(pkg.p.unit.clone()),
                Prepared::new(pkg.p.counit.clone()),
                Prepared::new(bar.unit),
                Prepared::new(bar.counit),
            ],
        })
    }

    /// The object assigned to a sign sequence.
    pub fn object(&self, signs: &[Sign]) -> ObjectWord {
        signs.iter().fold(ObjectWord::unit(), |acc, s| {
            acc.concat(match s {
                Sign::Plus => &self.plus,
                Sign::Minus => &self.minus,
            })
        })
    }

    pub fn image(&self, g: Generator) -> Option<&Prepared<S>> {
        let i = match g {
            Generator::Up | Generator::Down => return None,
            Generator::Pos => 0,
            Generator::Neg => 1,
            Generator::CapNW => 2,
            Generator::CupSW => 3,
            Generator::CapNE => 4,
            Generator::CupSE => 5,
        };
        Some(&self.images[i])
    }

    fn width(&self, s: Sign) -> usize {
        match s {
            Sign::Plus => self.plus.len(),
            Sign::Minus => self.minus.len(),
        }
    }

    /// Evaluates `w` with the prepared images.
    pub fn evaluate(&self, ctx: &S::Ctx, w: &TangleWord) -> Result<Morphism<S>> {
        let mut pipe = Pipeline::start(ctx, &self.object(w.dom()));
        for (t, slice) in w.slices().iter().enumerate() {
            let signs = w.level_signs(t);
            // Apply right to left so earlier factor offsets stay valid.
            let mut placed = Vec::with_capacity(slice.len());
            let mut x = 0;
            for g in slice {
                placed.push((x, *g));
                x += g.dom().len();
            }
            for (x, g) in placed.into_iter().rev() {
                if let Some(f) = self.image(g) {
                    let at: usize = signs[..x].iter().map(|s| self.width(*s)).sum();
                    pipe.apply_prepared(at, f)
                        .map_err(|e| Error::Internal(format!("functor evaluation at slice {}: {e}", t + 1)))?;
                }
            }
        }
        Ok(pipe.finish())
    }
}

/// `Φ_{ρ,k}(w)`.
pub fn evaluate_functor<S: Field>(pkg: &RMatrixPackage<S>, k: i64, w: &TangleWord) -> Result<Morphism<S>> {
    FunctorAssignment::new(pkg, k)?.evaluate(pkg.ctx(), w)
}

/// `Φ_{ρ,k}` of the four kinks, in the order of [`KinkKind::ALL`]; these
/// equal `ω^{-k}`, `ω^{-1-k}`, `ω^{1+k}` and `ω^k`.
pub fn curl_values<S: Field>(pkg: &RMatrixPackage<S>, k: i64) -> Result<[Morphism<S>; 4]> {
    let f = FunctorAssignment::new(pkg, k)?;
    let eval = |kind| f.evaluate(pkg.ctx(), &kink_word(kind));
    Ok([
        eval(KinkKind::PosRight)?,
        eval(KinkKind::NegRight)?,
        eval(KinkKind::PosLeft)?,
        eval(KinkKind::NegLeft)?,
    ])
}

/// The exponents the curls must realize, matching [`curl_values`].
pub fn curl_exponents(k: i64) -> [i64; 4] {
    [-k, -1 - k, 1 + k, k]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotData {
    pub writhe: i64,
    pub twice_winding: i64,
}

/// Checks that `w` is a connected `(+) → (+)` word and returns its counts.
pub fn long_knot_data(w: &TangleWord) -> Result<KnotData> {
    if w.dom() != [Sign::Plus] || w.cod() != [Sign::Plus] {
        return Err(Error::InvalidTangle(format!(
            "a knot needs dom = cod = (+), got {} -> {}",
            crate::tangle::format_signs(w.dom()),
            crate::tangle::format_signs(w.cod())
        )));
    }
    let comps = connected_components(w);
    if comps.len() != 1 {
        return Err(Error::InvalidTangle(format!(
            "a knot must be connected, found {} components",
            comps.len()
        )));
    }
    Ok(KnotData {
        writhe: comps[0].writhe(),
        twice_winding: comps[0].twice_winding(),
    })
}

/// The exponent `-(wr + (1+2k)wn)/2` of `ω` in `Ψ`.
pub fn correction_exponent(data: &KnotData, k: i64) -> Result<i64> {
    let numerator = 2 * data.writhe + (1 + 2 * k) * data.twice_winding;
    if numerator % 4 != 0 {
        return Err(Error::Internal(format!(
            "wr + (1+2k)wn is not even (wr = {}, 2wn = {}, k = {k})",
            data.writhe, data.twice_winding
        )));
    }
    Ok(-numerator / 4)
}

fn invariant_at<S: Field>(pkg: &RMatrixPackage<S>, w: &TangleWord, data: &KnotData, k: i64) -> Result<Morphism<S>> {
    let phi = evaluate_functor(pkg, k, w)?;
    let e = correction_exponent(data, k)?;
    if e == 0 {
        return Ok(phi);
    }
    crate::linmap::compose(&pkg.omega_pow(e)?, &phi)
}

/// `Ψ_ρ(w) = ω^{-(wr+(1+2k)wn)/2} ∘ Φ_{ρ,k}(w)`.
///
/// Debug builds recompute at `k + 1` and fail if the results differ.
pub fn knot_invariant<S: Field>(pkg: &RMatrixPackage<S>, w: &TangleWord, k: i64) -> Result<Morphism<S>> {
    let data = long_knot_data(w)?;
    let psi = invariant_at(pkg, w, &data, k)?;
    if cfg!(debug_assertions) && invariant_at(pkg, w, &data, k + 1)? != psi {
        return Err(Error::Internal(format!("Ψ differs between k = {k} and k = {}", k + 1)));
    }
    Ok(psi)
}

/// `Ψ` at each framing in `ks`, failing unless all agree.
pub fn knot_invariant_checked<S: Field>(pkg: &RMatrixPackage<S>, w: &TangleWord, ks: &[i64]) -> Result<Morphism<S>> {
    let data = long_knot_data(w)?;
    let mut result: Option<Morphism<S>> = None;
    for &k in ks {
        let psi = invariant_at(pkg, w, &data, k)?;
        match &result {
            Some(first) if *first != psi => {
                return Err(Error::Internal(format!("Ψ depends on the framing parameter (k = {k})")))
            }
            Some(_) => {}
            None => result = Some(psi),
        }
    }
    result.ok_or_else(|| Error::UnsupportedFraming("no framing parameter given".into()))
}
