//! Finite-dimensional Hopf algebras given by structure constants.
//!
//! Conventions (0-based internally, 1-based in files):
//! * `mul` is the `d × d²` matrix with `mul[k, (i,j)] = ∇_{i,j}^k`;
//! * `comul` is the `d² × d` matrix with `comul[(i,j), k] = Δ_k^{i,j}`, so
//!   `Δ(v_k) = Σ Δ_k^{i,j} v_i⊗v_j`;
//! * `antipode` is the `d × d` matrix with `antipode[j, i] = γ_i^j`, so
//!   `γ(v_i) = Σ_j γ_i^j v_j`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linmap::{canonical_dualities, compose, lp, Morphism, ObjectWord, Pipeline, X_LABEL};
use crate::matrix::{mat_inverse, permute_tensor_factors, unflatten, DenseMatrix};
use crate::tmatrix::{check_tmatrix, TMatrixPackage};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData<S: Field> {
    pub dim: usize,
    pub mul: DenseMatrix<S>,
    pub comul: DenseMatrix<S>,
    pub unit: DenseMatrix<S>,
    pub counit: DenseMatrix<S>,
    pub antipode: DenseMatrix<S>,
}

/// A scalar as written in a file: a string (`"3"`, `"-1/2"`) or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    fn parse<S: Field>(&self, ctx: &S::Ctx) -> Result<S> {
        match self {
            ScalarText::Text(t) => S::parse(ctx, t),
            ScalarText::Int(v) => Ok(S::from_i64(ctx, *v)),
        }
    }
}

/// The on-disk Hopf JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub mul: Vec<(usize, usize, usize, ScalarText)>,
    pub comul: Vec<(usize, usize, usize, ScalarText)>,
    pub unit: Vec<ScalarText>,
    pub counit: Vec<ScalarText>,
    pub antipode: Vec<Vec<ScalarText>>,
}

impl HopfFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidHopf(format!("malformed Hopf JSON: {e}")))
    }
}

fn index_check(name: &str, d: usize, idx: &[usize]) -> Result<()> {
    if idx.iter().any(|&i| i == 0 || i > d) {
        return Err(Error::InvalidHopf(format!(
            "{name} entry {idx:?} has an index outside 1..={d}"
        )));
    }
    Ok(())
}

impl<S: Field> HopfData<S> {
    /// Reads a file into the field given by `ctx` (which may differ from the
    /// file's own field when the caller overrides it).
    pub fn from_file(file: &HopfFile, ctx: &S::Ctx) -> Result<Self> {
        let d = file.dim;
        if d == 0 {
            return Err(Error::InvalidHopf("dimension must be at least 1".into()));
        }
        let mut mul = DenseMatrix::zeros(ctx, d, d * d);
        let mut seen = std::collections::HashSet::new();
        for (i, j, k, v) in &file.mul {
            index_check("mul", d, &[*i, *j, *k])?;
            if !seen.insert((0, *i, *j, *k)) {
                return Err(Error::InvalidHopf(format!("duplicate mul entry ({i}, {j}, {k})")));
            }
            mul.set(k - 1, (i - 1) * d + (j - 1), v.parse(ctx)?);
        }
        let mut comul = DenseMatrix::zeros(ctx, d * d, d);
        for (k, i, j, v) in &file.comul {
            index_check("comul", d, &[*k, *i, *j])?;
            if !seen.insert((1, *k, *i, *j)) {
                return Err(Error::InvalidHopf(format!("duplicate comul entry ({k}, {i}, {j})")));
            }
            comul.set((i - 1) * d + (j - 1), k - 1, v.parse(ctx)?);
        }
        let vector = |name: &str, v: &[ScalarText]| -> Result<Vec<S>> {
            if v.len() != d {
                return Err(Error::InvalidHopf(format!("{name} has {} entries, expected {d}", v.len())));
            }
            v.iter().map(|x| x.parse(ctx)).collect()
        };
        let unit_v = vector("unit", &file.unit)?;
        let counit_v = vector("counit", &file.counit)?;
        if file.antipode.len() != d || file.antipode.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidHopf(format!("antipode must be a {d}x{d} matrix")));
        }
        let mut antipode = DenseMatrix::zeros(ctx, d, d);
        for (i, row) in file.antipode.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                antipode.set(j, i, v.parse(ctx)?);
            }
        }
        Ok(HopfData {
            dim: d,
            mul,
            comul,
            unit: DenseMatrix::from_fn(ctx, d, 1, |r, _| unit_v[r].clone()),
            counit: DenseMatrix::from_fn(ctx, 1, d, |_, c| counit_v[c].clone()),
            antipode,
        })
    }

    pub fn to_file(&self) -> HopfFile {
        let d = self.dim;
        let text = |x: &S| ScalarText::Text(x.to_string());
        let mut mul = Vec::new();
        let mut comul = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let m = self.mul.get(k, i * d + j);
                    if !m.is_zero() {
                        mul.push((i + 1, j + 1, k + 1, text(m)));
                    }
                }
            }
        }
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let c = self.comul.get(i * d + j, k);
                    if !c.is_zero() {
                        comul.push((k + 1, i + 1, j + 1, text(c)));
                    }
                }
            }
        }
        HopfFile {
            field: self.field(),
            dim: d,
            mul,
            comul,
            unit: (0..d).map(|i| text(self.unit.get(i, 0))).collect(),
            counit: (0..d).map(|i| text(self.counit.get(0, i))).collect(),
            antipode: (0..d)
                .map(|i| (0..d).map(|j| text(self.antipode.get(j, i))).collect())
                .collect(),
        }
    }

    pub fn ctx(&self) -> &S::Ctx {
        self.mul.ctx()
    }

    pub fn field(&self) -> FieldSpec {
        self.mul.field()
    }

    pub fn x(&self) -> ObjectWord {
        ObjectWord::single(X_LABEL, self.dim)
    }

    fn morph(&self, dom: usize, cod: usize, m: &DenseMatrix<S>) -> Morphism<S> {
        let word = |n: usize| (0..n).fold(ObjectWord::unit(), |acc, _| acc.concat(&self.x()));
        Morphism::new(word(dom), word(cod), m.clone()).expect("structure constants are well shaped")
    }

    pub fn mul_morphism(&self) -> Morphism<S> {
        self.morph(2, 1, &self.mul)
    }

    pub fn comul_morphism(&self) -> Morphism<S> {
        self.morph(1, 2, &self.comul)
    }

    pub fn unit_morphism(&self) -> Morphism<S> {
        self.morph(0, 1, &self.unit)
    }

    pub fn counit_morphism(&self) -> Morphism<S> {
        self.morph(1, 0, &self.counit)
    }

    pub fn antipode_morphism(&self) -> Morphism<S> {
        self.morph(1, 1, &self.antipode)
    }

    /// The symmetry `s_{X,X}`.
    pub fn swap_morphism(&self) -> Morphism<S> {
        let d = self.dim;
        self.morph(2, 2, &permute_tensor_factors(self.ctx(), &[d, d], &[1, 0]).expect("valid permutation"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// 1-based index tuple on the output side of the failing identity.
    pub output: Vec<usize>,
    /// 1-based index tuple on the input side.
    pub input: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub passed: bool,
    pub axioms: Vec<AxiomResult>,
}

impl HopfReport {
    pub fn failed(&self) -> Vec<&'static str> {
        self.axioms.iter().filter(|a| !a.passed).map(|a| a.name).collect()
    }
}

fn compare<S: Field>(d: usize, lhs: &Morphism<S>, rhs: &Morphism<S>) -> Option<Witness> {
    lhs.matrix.first_difference(&rhs.matrix).map(|(r, c)| {
        let digits = |index: usize, n: usize| -> Vec<usize> {
            unflatten(index, &vec![d; n]).into_iter().map(|x| x + 1).collect()
        };
        Witness {
            output: digits(r, lhs.cod.len()),
            input: digits(c, lhs.dom.len()),
        }
    })
}

fn chain<S: Field>(h: &HopfData<S>, n_in: usize, steps: &[(usize, &Morphism<S>)]) -> Result<Morphism<S>> {
    let word = (0..n_in).fold(ObjectWord::unit(), |acc, _| acc.concat(&h.x()));
    let mut pipe = Pipeline::start(h.ctx(), &word);
    for (at, f) in steps {
        pipe.apply(*at, f)?;
    }
    Ok(pipe.finish())
}

/// Checks every Hopf algebra axiom and reports the first violation of each.
pub fn validate_hopf<S: Field>(h: &HopfData<S>) -> Result<HopfReport> {
    let d = h.dim;
    let m = h.mul_morphism();
    let c = h.comul_morphism();
    let u = h.unit_morphism();
    let e = h.counit_morphism();
    let g = h.antipode_morphism();
    let s = h.swap_morphism();
    let id = Morphism::identity(h.ctx(), &h.x());

    let first = |pairs: Vec<(Morphism<S>, Morphism<S>)>| -> Option<Witness> {
        pairs.iter().find_map(|(a, b)| compare(d, a, b))
    };

    let associativity = first(vec![(chain(h, 3, &[(0, &m), (0, &m)])?, chain(h, 3, &[(1, &m), (0, &m)])?)]);
    let unitality = first(vec![
        (chain(h, 1, &[(0, &u), (0, &m)])?, id.clone()),
        (chain(h, 1, &[(1, &u), (0, &m)])?, id.clone()),
    ]);
    let coassociativity = first(vec![(chain(h, 1, &[(0, &c), (0, &c)])?, chain(h, 1, &[(0, &c), (1, &c)])?)]);
    let counitality = first(vec![
        (chain(h, 1, &[(0, &c), (0, &e)])?, id.clone()),
        (chain(h, 1, &[(0, &c), (1, &e)])?, id.clone()),
    ]);
    let compatibility = first(vec![(
        chain(h, 2, &[(0, &m), (0, &c)])?,
        chain(h, 2, &[(1, &c), (0, &c), (1, &s), (0, &m), (1, &m)])?,
    )]);
    let unit_counit = first(vec![
        (chain(h, 0, &[(0, &u), (0, &c)])?, chain(h, 0, &[(0, &u), (1, &u)])?),
        (chain(h, 2, &[(0, &m), (0, &e)])?, chain(h, 2, &[(1, &e), (0, &e)])?),
        (chain(h, 0, &[(0, &u), (0, &e)])?, Morphism::identity(h.ctx(), &ObjectWord::unit())),
    ]);
    let eta_eps = chain(h, 1, &[(0, &e), (0, &u)])?;
    let antipode = first(vec![
        (chain(h, 1, &[(0, &c), (1, &g), (0, &m)])?, eta_eps.clone()),
        (chain(h, 1, &[(0, &c), (0, &g), (0, &m)])?, eta_eps),
    ]);

    let axioms: Vec<AxiomResult> = [
        ("associativity", associativity),
        ("unitality", unitality),
        ("coassociativity", coassociativity),
        ("counitality", counitality),
        ("compatibility", compatibility),
        ("unit_counit_compatibility", unit_counit),
        ("antipode", antipode),
    ]
    .into_iter()
    .map(|(name, w)| AxiomResult {
        name,
        passed: w.is_none(),
        witness: w,
    })
    .collect();
    Ok(HopfReport {
        passed: axioms.iter().all(|a| a.passed),
        axioms,
    })
}

/// Exact inverse of the antipode matrix.
pub fn antipode_inverse<S: Field>(h: &HopfData<S>) -> Result<DenseMatrix<S>> {
    mat_inverse(&h.antipode)?.ok_or_else(|| Error::Singular("the antipode is not invertible".into()))
}

/// Memoized `τ_r = X∇∘Xγ^rX∘ΔX`.
#[derive(Debug)]
pub struct TauFamily<S: Field> {
    pub hopf: HopfData<S>,
    cache: RwLock<HashMap<i64, Arc<Morphism<S>>>>,
    antipode_powers: RwLock<HashMap<i64, Arc<DenseMatrix<S>>>>,
}

impl<S: Field> TauFamily<S> {
    pub fn new(hopf: HopfData<S>) -> Self {
        TauFamily {
            hopf,
            cache: RwLock::new(HashMap::new()),
            antipode_powers: RwLock::new(HashMap::new()),
        }
    }

    fn antipode_power(&self, r: i64) -> Result<Arc<DenseMatrix<S>>> {
        if let Some(g) = self.antipode_powers.read().expect("cache lock").get(&r) {
            return Ok(g.clone());
        }
        let g = if r >= 0 {
            self.hopf.antipode.pow(r)?
        } else {
            antipode_inverse(&self.hopf)?.pow(-r)?
        };
        let g = Arc::new(g);
        self.antipode_powers.write().expect("cache lock").insert(r, g.clone());
        Ok(g)
    }

    /// `(τ_r)_{i,j}^{k,n} = Σ_{l,m} Δ_i^{k,l} (γ^r)_l^m ∇_{m,j}^n` as a map `XX → XX`.
    pub fn tau_r(&self, r: i64) -> Result<Arc<Morphism<S>>> {
        if let Some(t) = self.cache.read().expect("cache lock").get(&r) {
            return Ok(t.clone());
        }
        let h = &self.hopf;
        let d = h.dim;
        let ctx = h.ctx();
        let g = self.antipode_power(r)?;
        // First contract γ^r into ∇: a[n, l, j] = Σ_m (γ^r)_l^m ∇_{m,j}^n.
        let mut a = vec![S::zero(ctx); d * d * d];
        for n in 0..d {
            for l in 0..d {
                for m in 0..d {
                    let glm = g.get(m, l);
                    if glm.is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        let mu = h.mul.get(n, m * d + j);
                        if !mu.is_zero() {
                            a[(n * d + l) * d + j].add_mul_assign(glm, mu);
                        }
                    }
                }
            }
        }
        let mut t: DenseMatrix<S> = DenseMatrix::zeros(ctx, d * d, d * d);
        for i in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let delta = h.comul.get(k * d + l, i);
                    if delta.is_zero() {
                        continue;
                    }
                    for n in 0..d {
                        for j in 0..d {
                            let v = &a[(n * d + l) * d + j];
                            if !v.is_zero() {
                                t.get_mut(k * d + n, i * d + j).add_mul_assign(delta, v);
                            }
                        }
                    }
                }
            }
        }
        let xx = h.x().concat(&h.x());
        let tau = Arc::new(Morphism::new(xx.clone(), xx, t)?);
        self.cache.write().expect("cache lock").insert(r, tau.clone());
        Ok(tau)
    }

    /// Fills the cache for every `r` in `range` so later reads never write.
    pub fn prepopulate(&self, range: std::ops::RangeInclusive<i64>) -> Result<()> {
        for r in range {
            self.tau_r(r)?;
        }
        Ok(())
    }
}

/// `τ_r` assembled through typed composition instead of index sums.
pub fn tau_r_by_composition<S: Field>(h: &HopfData<S>, r: i64) -> Result<Morphism<S>> {
    let g = if r >= 0 {
        h.antipode_morphism().pow(r)?
    } else {
        let inv = antipode_inverse(h)?;
        Morphism::new(h.x(), h.x(), inv)?.pow(-r)?
    };
    chain(h, 2, &[(0, &h.comul_morphism()), (1, &g), (1, &h.mul_morphism())])
}

/// `σ = s_{X,X}`, `τ = σ∘τ_0` with the canonical duality; the rigidity
/// witnesses from the `τ_{-1}`, `τ_2` identities are checked against
/// direct inversion.
pub fn canonical_tmatrix<S: Field>(h: &HopfData<S>) -> Result<TMatrixPackage<S>> {
    let report = validate_hopf(h)?;
    if !report.passed {
        return Err(Error::InvalidHopf(format!("axioms fail: {:?}", report.failed())));
    }
    antipode_inverse(h)?;
    let fam = TauFamily::new(h.clone());
    let sigma = h.swap_morphism();
    let tau = compose(&sigma, &*fam.tau_r(0)?)?;
    if !check_tmatrix(&sigma, &tau)? {
        return Err(Error::InvalidTMatrix("canonical (σ, τ) fails naturality or pentagon".into()));
    }
    let (p, _) = canonical_dualities(h.ctx(), h.dim)?;
    let pkg = TMatrixPackage::new(sigma, tau, p)?;
    let (check_via_identity, hat_inv_via_identity) = identity_witnesses(h, &fam)?;
    if check_via_identity != pkg.tau_check {
        return Err(Error::InvalidTMatrix("l_q(τ_{-1}∘σ) differs from r_p(τ)⁻¹".into()));
    }
    let hat_inv = pkg.tau_hat.inverse()?.expect("τ̂ invertibility was checked via τ̌ path");
    if hat_inv_via_identity != hat_inv {
        return Err(Error::InvalidTMatrix("l_q(σ∘τ_2) differs from r_p(τ⁻¹)⁻¹".into()));
    }
    Ok(pkg)
}

/// `(l_q(τ_{-1}∘σ), l_q(σ∘τ_2))`, the closed forms of `r_p(τ)⁻¹` and `r_p(τ⁻¹)⁻¹`.
pub fn identity_witnesses<S: Field>(h: &HopfData<S>, fam: &TauFamily<S>) -> Result<(Morphism<S>, Morphism<S>)> {
    let (_, q) = canonical_dualities(h.ctx(), h.dim)?;
    let sigma = h.swap_morphism();
    let a = lp(&q, &compose(&*fam.tau_r(-1)?, &sigma)?)?;
    let b = lp(&q, &compose(&sigma, &*fam.tau_r(2)?)?)?;
    Ok((a, b))
}

/// The dual Hopf algebra in the dual basis.
pub fn dual_hopf<S: Field>(h: &HopfData<S>) -> HopfData<S> {
    HopfData {
        dim: h.dim,
        mul: h.comul.transpose(),
        comul: h.mul.transpose(),
        unit: h.counit.transpose(),
        counit: h.unit.transpose(),
        antipode: h.antipode.transpose(),
    }
}

pub const BUILTIN_NAMES: [&str; 6] = ["trivial", "group_z2", "group_z3", "group_s3", "functions_z2", "sweedler"];

/// Group algebra from a multiplication table on `0..n` with identity `0`.
fn group_algebra<S: Field>(ctx: &S::Ctx, n: usize, op: impl Fn(usize, usize) -> usize) -> HopfData<S> {
    let one = S::one(ctx);
    let mut mul = DenseMatrix::zeros(ctx, n, n * n);
    let mut comul = DenseMatrix::zeros(ctx, n * n, n);
    let mut antipode = DenseMatrix::zeros(ctx, n, n);
    for g in 0..n {
        comul.set(g * n + g, g, one.clone());
        for h in 0..n {
            mul.set(op(g, h), g * n + h, one.clone());
            if op(g, h) == 0 {
                antipode.set(h, g, one.clone());
            }
        }
    }
    HopfData {
        dim: n,
        mul,
        comul,
        unit: DenseMatrix::from_fn(ctx, n, 1, |r, _| if r == 0 { one.clone() } else { S::zero(ctx) }),
        counit: DenseMatrix::from_fn(ctx, 1, n, |_, _| one.clone()),
        antipode,
    }
}

/// Permutations of three letters, identity first.
const S3: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

fn s3_product(a: usize, b: usize) -> usize {
    // (a·b)(i) = a(b(i))
    let p: [usize; 3] = std::array::from_fn(|i| S3[a][S3[b][i]]);
    S3.iter().position(|q| *q == p).expect("S3 is closed")
}

/// Sweedler's algebra with basis `1, g, x, gx`.
fn sweedler<S: Field>(ctx: &S::Ctx) -> Result<HopfData<S>> {
    if S::spec_of(ctx).characteristic() == 2 {
        return Err(Error::InvalidHopf("Sweedler's algebra needs characteristic other than 2".into()));
    }
    let d = 4;
    let idx = |a: usize, b: usize| a + 2 * b;
    let int = |v: i64| S::from_i64(ctx, v);
    let mut mul = DenseMatrix::zeros(ctx, d, d * d);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for e in 0..2 {
                    if b + e == 2 {
                        continue;
                    }
                    // (g^a x^b)(g^c x^e) = (-1)^{bc} g^{a+c} x^{b+e}
                    let sign = if b * c == 1 { -1 } else { 1 };
                    mul.set(idx((a + c) % 2, b + e), idx(a, b) * d + idx(c, e), int(sign));
                }
            }
        }
    }
    let mut comul = DenseMatrix::zeros(ctx, d * d, d);
    let (one, g, x, gx) = (0, 1, 2, 3);
    comul.set(one * d + one, one, int(1));
    comul.set(g * d + g, g, int(1));
    comul.set(x * d + one, x, int(1));
    comul.set(g * d + x, x, int(1));
    comul.set(gx * d + g, gx, int(1));
    comul.set(one * d + gx, gx, int(1));
    let mut antipode = DenseMatrix::zeros(ctx, d, d);
    antipode.set(one, one, int(1));
    antipode.set(g, g, int(1));
    antipode.set(gx, x, int(-1));
    antipode.set(x, gx, int(1));
    Ok(HopfData {
        dim: d,
        mul,
        comul,
        unit: DenseMatrix::from_fn(ctx, d, 1, |r, _| int(i64::from(r == one))),
        counit: DenseMatrix::from_fn(ctx, 1, d, |_, c| int(i64::from(c == one || c == g))),
        antipode,
    })
}

/// One of the built-in algebras, validated.
pub fn builtin<S: Field>(name: &str, ctx: &S::Ctx) -> Result<HopfData<S>> {
    let h = match name {
        "trivial" => group_algebra(ctx, 1, |_, _| 0),
        "group_z2" => group_algebra(ctx, 2, |a, b| (a + b) % 2),
        "group_z3" => group_algebra(ctx, 3, |a, b| (a + b) % 3),
        "group_s3" => group_algebra(ctx, 6, s3_product),
        "functions_z2" => dual_hopf(&group_algebra(ctx, 2, |a, b| (a + b) % 2)),
        "sweedler" => sweedler(ctx)?,
        other => {
            return Err(Error::InvalidHopf(format!(
                "unknown builtin {other:?}; expected one of {BUILTIN_NAMES:?}"
            )))
        }
    };
    let report = validate_hopf(&h)?;
    if !report.passed {
        return Err(Error::Internal(format!("builtin {name} fails {:?}", report.failed())));
    }
    Ok(h)
}
