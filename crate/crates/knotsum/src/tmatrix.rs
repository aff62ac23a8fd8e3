//! T-matrices `(σ, τ)`: axiom checks, the eight pentagon relations and the
//! self-dual rigid R-matrix `ρ_τ` on `X⊗Y`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linmap::{
    compose, duality_check, duality_product, lp, rp, Duality, Morphism, ObjectWord, Pipeline,
    Prepared,
};
use crate::rmatrix::{check_yang_baxter, RMatrixPackage};

#[derive(Clone, Debug)]
pub struct TMatrixPackage<S: Field> {
    pub obj: ObjectWord,
    pub sigma: Morphism<S>,
    pub tau: Morphism<S>,
    pub tau_inv: Morphism<S>,
    /// `⟨Y, X, η, ε⟩`.
    pub p: Duality<S>,
    /// `τ̂ = r_p(τ⁻¹)`
    pub tau_hat: Morphism<S>,
    /// `τ̌ = r_p(τ)⁻¹`
    pub tau_check: Morphism<S>,
    /// `τ′ = r_p(r_p(τ))`
    pub tau_prime: Morphism<S>,
    /// `σ̂ = r_p(σ)`
    pub sigma_hat: Morphism<S>,
    /// `σ̌ = σ̂⁻¹`
    pub sigma_check: Morphism<S>,
    /// `σ′ = r_p(r_p(σ))`
    pub sigma_prime: Morphism<S>,
}

fn invert_named<S: Field>(f: &Morphism<S>, name: &str) -> Result<Morphism<S>> {
    f.inverse()?
        .ok_or_else(|| Error::Singular(format!("{name} is not invertible")))
}

impl<S: Field> TMatrixPackage<S> {
    /// Computes the derived sextet eagerly; each failed inversion is named.
    pub fn new(sigma: Morphism<S>, tau: Morphism<S>, p: Duality<S>) -> Result<Self> {
        let obj = p.right.clone();
        let xx = obj.concat(&obj);
        for (name, f) in [("σ", &sigma), ("τ", &tau)] {
            if f.dom != xx || f.cod != xx {
                return Err(Error::TypeMismatch {
                    op: "TMatrixPackage::new",
                    expected: format!("{name}: {xx} -> {xx}"),
                    found: format!("{} -> {}", f.dom, f.cod),
                });
            }
        }
        let tau_inv = invert_named(&tau, "τ")?;
        let r_tau = rp(&p, &tau)?;
        let tau_hat = rp(&p, &tau_inv)?;
        let tau_check = invert_named(&r_tau, "r_p(τ)")?;
        let tau_prime = rp(&p, &r_tau)?;
        let sigma_hat = rp(&p, &sigma)?;
        let sigma_check = invert_named(&sigma_hat, "σ̂ = r_p(σ)")?;
        let sigma_prime = rp(&p, &sigma_hat)?;
        Ok(TMatrixPackage {
            obj,
            sigma,
            tau,
            tau_inv,
            p,
            tau_hat,
            tau_check,
            tau_prime,
            sigma_hat,
            sigma_check,
            sigma_prime,
        })
    }

    pub fn dual_obj(&self) -> &ObjectWord {
        &self.p.left
    }

    pub fn ctx(&self) -> &S::Ctx {
        self.tau.ctx()
    }
}

/// Applies `steps` (in application order, positions counted in tensor
/// factors of `X` or `Y`) to the identity of `start`.
type Chain<'a, S> = Vec<(usize, &'a Prepared<S>)>;
type Relation<'a, S> = (&'static str, [&'a ObjectWord; 3], Chain<'a, S>, Chain<'a, S>);

fn run_chain<S: Field>(
    ctx: &S::Ctx,
    start: &[&ObjectWord],
    steps: &[(usize, &Prepared<S>)],
) -> Result<Morphism<S>> {
    let word = start.iter().fold(ObjectWord::unit(), |acc, w| acc.concat(w));
    let unit_len = start.first().map_or(1, |w| w.len());
    let mut pipe = Pipeline::start(ctx, &word);
    for (slot, f) in steps {
        pipe.apply_prepared(slot * unit_len, f)?;
    }
    Ok(pipe.finish())
}

fn chains_agree<S: Field>(
    ctx: &S::Ctx,
    start: &[&ObjectWord],
    lhs: &[(usize, &Prepared<S>)],
    rhs: &[(usize, &Prepared<S>)],
) -> Result<bool> {
    Ok(run_chain(ctx, start, lhs)? == run_chain(ctx, start, rhs)?)
}

fn same_length_sides(x: &ObjectWord, y: &ObjectWord) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::TypeMismatch {
            op: "T-matrix relations",
            expected: format!("X and Y with equally many factors ({x})"),
            found: y.to_string(),
        });
    }
    Ok(())
}

/// Naturality `τX∘Xσ∘σX = Xσ∘σX∘Xτ` and pentagon `τX∘Xσ∘τX = Xτ∘τX∘Xτ`.
pub fn check_tmatrix<S: Field>(sigma: &Morphism<S>, tau: &Morphism<S>) -> Result<bool> {
    if sigma.dom != sigma.cod || tau.dom != tau.cod || sigma.dom != tau.dom || !sigma.dom.len().is_multiple_of(2) {
        return Err(Error::TypeMismatch {
            op: "check_tmatrix",
            expected: "σ, τ: X⊗X → X⊗X".into(),
            found: format!("σ: {} -> {}, τ: {} -> {}", sigma.dom, sigma.cod, tau.dom, tau.cod),
        });
    }
    let half = sigma.dom.len() / 2;
    let x = sigma.dom.sub_word(0..half);
    if !compose(sigma, sigma)?.is_identity() {
        return Err(Error::InvalidTMatrix("σ is not involutive".into()));
    }
    if !check_yang_baxter(sigma)? {
        return Err(Error::InvalidTMatrix("σ fails the Yang-Baxter equation".into()));
    }
    if tau.inverse()?.is_none() {
        return Err(Error::InvalidTMatrix("τ is not invertible".into()));
    }
    let ctx = tau.ctx();
    let s = Prepared::new(sigma.clone());
    let t = Prepared::new(tau.clone());
    let xxx = [&x, &x, &x];
    let naturality = chains_agree(ctx, &xxx, &[(0, &s), (1, &s), (0, &t)], &[(1, &t), (0, &s), (1, &s)])?;
    let pentagon = chains_agree(ctx, &xxx, &[(0, &t), (1, &s), (0, &t)], &[(1, &t), (0, &t), (1, &t)])?;
    Ok(naturality && pentagon)
}

/// `(σ, τ⁻¹)` is again a T-matrix.
pub fn tmatrix_inverse_symmetry<S: Field>(pkg: &TMatrixPackage<S>) -> Result<bool> {
    check_tmatrix(&pkg.sigma, &pkg.tau_inv)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonReport {
    pub results: Vec<(&'static str, bool)>,
}

impl PentagonReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|(_, ok)| *ok)
    }
}

/// Evaluates the eight pentagon relations in `τ, τ′, τ̂, τ̌, σ, σ′, σ̂, σ̌`.
pub fn pentagon_family_check<S: Field>(pkg: &TMatrixPackage<S>) -> Result<PentagonReport> {
    let x = &pkg.obj;
    let y = pkg.dual_obj();
    same_length_sides(x, y)?;
    let ctx = pkg.ctx();
    let t = Prepared::new(pkg.tau.clone());
    let tp = Prepared::new(pkg.tau_prime.clone());
    let th = Prepared::new(pkg.tau_hat.clone());
    let tc = Prepared::new(pkg.tau_check.clone());
    let s = Prepared::new(pkg.sigma.clone());
    let sp = Prepared::new(pkg.sigma_prime.clone());
    let sh = Prepared::new(pkg.sigma_hat.clone());
    let sc = Prepared::new(pkg.sigma_check.clone());
    // Each side is listed in application order (rightmost factor first).
    let relations: [Relation<S>; 8] = [
        ("τX∘Xσ∘τX = Xτ∘τX∘Xτ", [x, x, x], vec![(0, &t), (1, &s), (0, &t)], vec![(1, &t), (0, &t), (1, &t)]),
        ("τ′Y∘Yτ′∘τ′Y = Yτ′∘σ′Y∘Yτ′", [y, y, y], vec![(0, &tp), (1, &tp), (0, &tp)], vec![(1, &tp), (0, &sp), (1, &tp)]),
        ("τY∘Xσ̂∘τ̂X = Xτ̂∘τ̂X∘Yτ", [y, x, x], vec![(0, &th), (1, &sh), (0, &t)], vec![(1, &t), (0, &th), (1, &th)]),
        ("τ′X∘Yτ̌∘τ̌Y = Yτ̌∘σ̌Y∘Xτ′", [x, y, y], vec![(0, &tc), (1, &tc), (0, &tp)], vec![(1, &tp), (0, &sc), (1, &tc)]),
        ("τ̂X∘Yτ∘τ̌X = Xτ̌∘σY∘Xτ̂", [x, y, x], vec![(0, &tc), (1, &t), (0, &th)], vec![(1, &th), (0, &s), (1, &tc)]),
        ("τ̌Y∘Xσ′∘τ̂Y = Yτ̂∘τ′X∘Yτ̌", [y, x, y], vec![(0, &th), (1, &sp), (0, &tc)], vec![(1, &tc), (0, &tp), (1, &th)]),
        ("τ̌X∘Xσ̌∘τY = Yτ∘τ̌X∘Xτ̌", [x, x, y], vec![(0, &t), (1, &sc), (0, &tc)], vec![(1, &tc), (0, &tc), (1, &t)]),
        ("τ̂Y∘Yτ̂∘τ′X = Xτ′∘σ̂Y∘Yτ̂", [y, y, x], vec![(0, &tp), (1, &th), (0, &th)], vec![(1, &th), (0, &sh), (1, &tp)]),
    ];
    let mut results = Vec::with_capacity(8);
    for (name, start, lhs, rhs) in relations.iter() {
        results.push((*name, chains_agree(ctx, start, lhs, rhs)?));
    }
    Ok(PentagonReport { results })
}

/// `q = ⟨X, Y, σ̌∘η, ε∘σ̌⟩`, validated.
pub fn sigma_duality<S: Field>(pkg: &TMatrixPackage<S>) -> Result<Duality<S>> {
    let q = Duality::new(
        pkg.obj.clone(),
        pkg.dual_obj().clone(),
        compose(&pkg.sigma_check, &pkg.p.unit)?,
        compose(&pkg.p.counit, &pkg.sigma_check)?,
    )?;
    if !duality_check(&q) {
        return Err(Error::InvalidDuality("⟨X, Y, σ̌∘η, ε∘σ̌⟩ fails the snake equations".into()));
    }
    Ok(q)
}

/// The self-duality `qp = ⟨XY, XY, X(σ̌∘η)Y∘η, ε∘σ̌∘XεY⟩` of `X⊗Y`.
pub fn self_duality_qp<S: Field>(pkg: &TMatrixPackage<S>) -> Result<Duality<S>> {
    let q = sigma_duality(pkg)?;
    let qp = duality_product(&q, &pkg.p)?;
    if !duality_check(&qp) {
        return Err(Error::InvalidDuality("the product duality qp fails the snake equations".into()));
    }
    Ok(qp)
}

/// `Xτ̌Y ∘ ττ′ ∘ Xτ̂Y` on `XYXY`.
fn rho_from_sextet<S: Field>(pkg: &TMatrixPackage<S>) -> Result<Morphism<S>> {
    let x = &pkg.obj;
    let y = pkg.dual_obj();
    same_length_sides(x, y)?;
    run_chain(
        pkg.ctx(),
        &[x, y, x, y],
        &[
            (1, &Prepared::new(pkg.tau_hat.clone())),
            (0, &Prepared::new(pkg.tau.clone())),
            (2, &Prepared::new(pkg.tau_prime.clone())),
            (1, &Prepared::new(pkg.tau_check.clone())),
        ],
    )
}

/// `ρ_τ` and `ρ_{τ⁻¹}` without certification.
pub fn rho_tau_pair<S: Field>(pkg: &TMatrixPackage<S>) -> Result<(Morphism<S>, Morphism<S>)> {
    let inverse_pkg = TMatrixPackage::new(pkg.sigma.clone(), pkg.tau_inv.clone(), pkg.p.clone())?;
    Ok((rho_from_sextet(pkg)?, rho_from_sextet(&inverse_pkg)?))
}

/// Builds and certifies the rigid R-matrix `ρ_τ` on `X⊗Y` with duality `qp`.
///
/// Besides the generic certification, the partial transposes are compared
/// with their closed forms `Xl_q(τ)Y ∘ r_q(τ̌)τ′⁻¹ ∘ Xr_p(τ)Y` and
/// `Xl_q(τ⁻¹)Y ∘ r_q(τ̂⁻¹)τ′ ∘ Xτ̂Y`.
pub fn build_rho_tau<S: Field>(pkg: &TMatrixPackage<S>, k: i64) -> Result<RMatrixPackage<S>> {
    let ctx = pkg.ctx();
    let (rho, rho_inv) = rho_tau_pair(pkg)?;
    if !compose(&rho_inv, &rho)?.is_identity() {
        return Err(Error::InvalidRMatrix("ρ_{τ⁻¹} does not invert ρ_τ".into()));
    }
    let q = sigma_duality(pkg)?;
    let qp = self_duality_qp(pkg)?;
    let out = RMatrixPackage::certify(rho, qp, k)?;

    let x = &pkg.obj;
    let y = pkg.dual_obj();
    let tau_prime_inv = invert_named(&pkg.tau_prime, "τ′")?;
    let tau_hat_inv = invert_named(&pkg.tau_hat, "τ̂")?;
    let plus = run_chain(
        ctx,
        &[x, y, x, y],
        &[
            (1, &Prepared::new(rp(&pkg.p, &pkg.tau)?)),
            (0, &Prepared::new(rp(&q, &pkg.tau_check)?)),
            (2, &Prepared::new(tau_prime_inv)),
            (1, &Prepared::new(lp(&q, &pkg.tau)?)),
        ],
    )?;
    let minus = run_chain(
        ctx,
        &[x, y, x, y],
        &[
            (1, &Prepared::new(pkg.tau_hat.clone())),
            (0, &Prepared::new(rp(&q, &tau_hat_inv)?)),
            (2, &Prepared::new(pkg.tau_prime.clone())),
            (1, &Prepared::new(lp(&q, &pkg.tau_inv)?)),
        ],
    )?;
    if plus.matrix != out.rho_plus.matrix {
        return Err(Error::InvalidRMatrix(
            "r_qp(ρ_τ) differs from its closed form".into(),
        ));
    }
    if minus.matrix != out.rho_minus.matrix {
        return Err(Error::InvalidRMatrix(
            "r_qp(ρ_τ⁻¹) differs from its closed form".into(),
        ));
    }
    Ok(out)
}
