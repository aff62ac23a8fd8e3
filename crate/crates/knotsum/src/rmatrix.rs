//! R-matrices: the Yang-Baxter check, rigidity certificates, the curl
//! morphism ω and the twisted second duality used for NE caps and SE cups.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linmap::{duality_check, rp, Duality, Morphism, ObjectWord, Pipeline, Prepared};

/// Number of identity columns pushed through the Yang-Baxter composites at a time.
const YBE_CHUNK: usize = 512;

/// Splits `XX` into `X`, failing if the word is not a square of a word.
fn square_root_word(w: &ObjectWord) -> Option<ObjectWord> {
    let n = w.len();
    if !n.is_multiple_of(2) {
        return None;
    }
    let half = w.sub_word(0..n / 2);
    (w.sub_word(n / 2..n) == half).then_some(half)
}

fn check_square<S: Field>(rho: &Morphism<S>, op: &'static str) -> Result<ObjectWord> {
    match square_root_word(&rho.dom) {
        Some(x) if rho.cod == rho.dom && !x.is_empty() => Ok(x),
        _ => Err(Error::TypeMismatch {
            op,
            expected: "an endomorphism of X⊗X".into(),
            found: format!("{} -> {}", rho.dom, rho.cod),
        }),
    }
}

/// `ρX∘Xρ∘ρX = Xρ∘ρX∘Xρ` on `X⊗X⊗X`.
pub fn check_yang_baxter<S: Field>(rho: &Morphism<S>) -> Result<bool> {
    let x = check_square(rho, "check_yang_baxter")?;
    let n = x.len();
    let xxx = x.concat(&x).concat(&x);
    let total = xxx.total_dim();
    let f = Prepared::new(rho.clone());
    let ctx = rho.ctx();
    let mut start = 0;
    while start < total {
        let end = (start + YBE_CHUNK).min(total);
        let mut lhs = Pipeline::start_columns(ctx, &xxx, start..end);
        let mut rhs = lhs.clone();
        for at in [0, n, 0] {
            lhs.apply_prepared(at, &f)?;
        }
        for at in [n, 0, n] {
            rhs.apply_prepared(at, &f)?;
        }
        if !lhs.state().equals(rhs.state()) {
            return Ok(false);
        }
        start = end;
    }
    Ok(true)
}

/// The two partial transposes `ρ_± = r_p(ρ^{±1})` and their inverses.
#[derive(Clone, Debug)]
pub struct Rigidity<S: Field> {
    pub rho_plus: Morphism<S>,
    pub rho_minus: Morphism<S>,
    pub rho_plus_inv: Morphism<S>,
    pub rho_minus_inv: Morphism<S>,
}

/// Inverts `r_p(ρ)` and `r_p(ρ⁻¹)` for `p = ⟨Y, X, η, ε⟩`.
pub fn certify_rigidity<S: Field>(rho: &Morphism<S>, p: &Duality<S>) -> Result<Rigidity<S>> {
    let x = check_square(rho, "certify_rigidity")?;
    if p.right != x {
        return Err(Error::TypeMismatch {
            op: "certify_rigidity",
            expected: format!("duality with right dual {x}"),
            found: p.right.to_string(),
        });
    }
    let rho_inv = rho
        .inverse()?
        .ok_or_else(|| Error::InvalidRMatrix("ρ is not invertible".into()))?;
    let rho_plus = rp(p, rho)?;
    let rho_minus = rp(p, &rho_inv)?;
    let rho_plus_inv = rho_plus
        .inverse()?
        .ok_or_else(|| Error::Singular("r_p(ρ) is not invertible".into()))?;
    let rho_minus_inv = rho_minus
        .inverse()?
        .ok_or_else(|| Error::Singular("r_p(ρ⁻¹) is not invertible".into()))?;
    Ok(Rigidity {
        rho_plus,
        rho_minus,
        rho_plus_inv,
        rho_minus_inv,
    })
}

/// A certified rigid R-matrix with everything the tangle functor needs.
#[derive(Clone, Debug)]
pub struct RMatrixPackage<S: Field> {
    pub obj: ObjectWord,
    pub rho: Morphism<S>,
    pub rho_inv: Morphism<S>,
    /// `⟨Y, X, η: I → XY, ε: YX → I⟩`.
    pub p: Duality<S>,
    pub rho_plus: Morphism<S>,
    pub rho_minus: Morphism<S>,
    pub rho_plus_inv: Morphism<S>,
    pub rho_minus_inv: Morphism<S>,
    pub omega: Morphism<S>,
    pub omega_inv: Morphism<S>,
    pub k: i64,
}

impl<S: Field> RMatrixPackage<S> {
    /// Runs every check and builds the package; `k` is the default framing.
    pub fn certify(rho: Morphism<S>, p: Duality<S>, k: i64) -> Result<Self> {
        let obj = check_square(&rho, "RMatrixPackage::certify")?;
        if !duality_check(&p) {
            return Err(Error::InvalidDuality("supplied duality fails the snake equations".into()));
        }
        if !check_yang_baxter(&rho)? {
            return Err(Error::InvalidRMatrix("Yang-Baxter equation fails".into()));
        }
        let rig = certify_rigidity(&rho, &p)?;
        let rho_inv = rho.inverse()?.expect("checked by certify_rigidity");
        let omega = compute_omega(&obj, &p, &rig.rho_minus_inv)?;
        let omega_inv = omega
            .inverse()?
            .ok_or_else(|| Error::Singular("ω is not invertible".into()))?;
        Ok(RMatrixPackage {
            obj,
            rho,
            rho_inv,
            p,
            rho_plus: rig.rho_plus,
            rho_minus: rig.rho_minus,
            rho_plus_inv: rig.rho_plus_inv,
            rho_minus_inv: rig.rho_minus_inv,
            omega,
            omega_inv,
            k,
        })
    }

    /// The left dual `Y` carried by the package duality.
    pub fn dual_obj(&self) -> &ObjectWord {
        &self.p.left
    }

    pub fn ctx(&self) -> &S::Ctx {
        self.rho.ctx()
    }

    /// `ω^e` for any integer `e`.
    pub fn omega_pow(&self, e: i64) -> Result<Morphism<S>> {
        if e >= 0 {
            self.omega.pow(e)
        } else {
            self.omega_inv.pow(-e)
        }
    }
}

/// `ω = (ε∘ρ_-⁻¹)X ∘ X(ρ_-⁻¹∘η)`.
pub fn compute_omega<S: Field>(
    x: &ObjectWord,
    p: &Duality<S>,
    rho_minus_inv: &Morphism<S>,
) -> Result<Morphism<S>> {
    let n = x.len();
    let r = Prepared::new(rho_minus_inv.clone());
    let mut pipe = Pipeline::start(rho_minus_inv.ctx(), x);
    pipe.apply(n, &p.unit)?;
    pipe.apply_prepared(n, &r)?;
    pipe.apply_prepared(0, &r)?;
    pipe.apply(0, &p.counit)?;
    Ok(pipe.finish())
}

/// `⟨X, Y, η̄, ε̄⟩` with `η̄ = Yω^k∘ρ_-⁻¹∘η` and `ε̄ = ε∘ρ_+⁻¹∘ω^{-k}Y`.
pub fn bar_duality_with_k<S: Field>(pkg: &RMatrixPackage<S>, k: i64) -> Result<Duality<S>> {
    let ctx = pkg.ctx();
    let ny = pkg.dual_obj().len();
    let mut unit = Pipeline::start(ctx, &ObjectWord::unit());
    unit.apply(0, &pkg.p.unit)?;
    unit.apply(0, &pkg.rho_minus_inv)?;
    if k != 0 {
        unit.apply(ny, &pkg.omega_pow(k)?)?;
    }
    let xy = pkg.obj.concat(pkg.dual_obj());
    let mut counit = Pipeline::start(ctx, &xy);
    if k != 0 {
        counit.apply(0, &pkg.omega_pow(-k)?)?;
    }
    counit.apply(0, &pkg.rho_plus_inv)?;
    counit.apply(0, &pkg.p.counit)?;
    Duality::new(pkg.obj.clone(), pkg.dual_obj().clone(), unit.finish(), counit.finish())
}

/// [`bar_duality_with_k`] at the package's own framing.
pub fn bar_duality<S: Field>(pkg: &RMatrixPackage<S>) -> Result<Duality<S>> {
    bar_duality_with_k(pkg, pkg.k)
}
