//! Typed morphisms between tensor words of based vector spaces, dualities
//! and the partial-transpose bijections `a_p`, `b_p`, `l_p`, `r_p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{kron, mat_inverse, mat_mul, DenseMatrix};
use crate::sparse::{LocalOp, SparseColumns};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub label: String,
    pub dim: usize,
}

/// A tensor word of labeled factors; the empty word is the unit object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ObjectWord(Vec<Factor>);

impl ObjectWord {
    pub fn unit() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn single(label: &str, dim: usize) -> Self {
        ObjectWord(vec![Factor {
            label: label.to_string(),
            dim,
        }])
    }

    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.iter().any(|f| f.dim == 0) {
            return Err(Error::TypeMismatch {
                op: "ObjectWord::new",
                expected: "factor dimensions >= 1".into(),
                found: format!("{factors:?}"),
            });
        }
        Ok(ObjectWord(factors))
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().map(|f| f.dim).product()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|f| f.dim).collect()
    }

    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ObjectWord(v)
    }

    pub fn sub_word(&self, range: std::ops::Range<usize>) -> ObjectWord {
        ObjectWord(self.0[range].to_vec())
    }

    pub fn starts_with(&self, prefix: &ObjectWord) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &ObjectWord) -> bool {
        self.0.ends_with(&suffix.0)
    }

    pub fn to_pairs(&self) -> Vec<(String, usize)> {
        self.0.iter().map(|f| (f.label.clone(), f.dim)).collect()
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.0.iter().map(|x| format!("{}[{}]", x.label, x.dim)).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<S: Field> {
    pub dom: ObjectWord,
    pub cod: ObjectWord,
    pub matrix: DenseMatrix<S>,
}

impl<S: Field> Morphism<S> {
    pub fn new(dom: ObjectWord, cod: ObjectWord, matrix: DenseMatrix<S>) -> Result<Self> {
        if matrix.cols() != dom.total_dim() || matrix.rows() != cod.total_dim() {
            return Err(Error::TypeMismatch {
                op: "Morphism::new",
                expected: format!("{}x{} matrix for {dom} -> {cod}", cod.total_dim(), dom.total_dim()),
                found: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        Ok(Morphism { dom, cod, matrix })
    }

    pub fn identity(ctx: &S::Ctx, word: &ObjectWord) -> Self {
        Morphism {
            dom: word.clone(),
            cod: word.clone(),
            matrix: DenseMatrix::identity(ctx, word.total_dim()),
        }
    }

    pub fn ctx(&self) -> &S::Ctx {
        self.matrix.ctx()
    }

    pub fn is_endo(&self) -> bool {
        self.dom == self.cod
    }

    pub fn is_identity(&self) -> bool {
        self.is_endo() && self.matrix.is_identity()
    }

    /// Exact inverse with domain and codomain exchanged, `None` if singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        Ok(mat_inverse(&self.matrix)?.map(|m| Morphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            matrix: m,
        }))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if !self.is_endo() {
            return Err(Error::TypeMismatch {
                op: "pow",
                expected: "an endomorphism".into(),
                found: format!("{} -> {}", self.dom, self.cod),
            });
        }
        Ok(Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            matrix: self.matrix.pow(e)?,
        })
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson {
            dom: self.dom.to_pairs(),
            cod: self.cod.to_pairs(),
            matrix: self
                .matrix
                .to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(ctx: &S::Ctx, j: &MorphismJson) -> Result<Self> {
        let word = |pairs: &Vec<(String, usize)>| {
            ObjectWord::new(
                pairs
                    .iter()
                    .map(|(l, d)| Factor {
                        label: l.clone(),
                        dim: *d,
                    })
                    .collect(),
            )
        };
        let rows = j
            .matrix
            .iter()
            .map(|row| row.iter().map(|x| S::parse(ctx, x)).collect::<Result<Vec<S>>>())
            .collect::<Result<Vec<_>>>()?;
        let dom = word(&j.dom)?;
        let cod = word(&j.cod)?;
        let matrix = if rows.is_empty() {
            DenseMatrix::zeros(ctx, 0, dom.total_dim())
        } else {
            DenseMatrix::from_rows(ctx, rows)?
        };
        Morphism::new(dom, cod, matrix)
    }
}

/// Serialized form `{"dom": [["X",2]], "cod": [...], "matrix": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub dom: Vec<(String, usize)>,
    pub cod: Vec<(String, usize)>,
    pub matrix: Vec<Vec<String>>,
}

fn type_error(op: &'static str, expected: &ObjectWord, found: &ObjectWord) -> Error {
    Error::TypeMismatch {
        op,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// `g ∘ f`.
pub fn compose<S: Field>(g: &Morphism<S>, f: &Morphism<S>) -> Result<Morphism<S>> {
    if f.cod != g.dom {
        return Err(type_error("compose", &g.dom, &f.cod));
    }
    Ok(Morphism {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        matrix: mat_mul(&g.matrix, &f.matrix)?,
    })
}

/// `f ⊗ g`.
pub fn tensor<S: Field>(f: &Morphism<S>, g: &Morphism<S>) -> Result<Morphism<S>> {
    Ok(Morphism {
        dom: f.dom.concat(&g.dom),
        cod: f.cod.concat(&g.cod),
        matrix: kron(&f.matrix, &g.matrix)?,
    })
}

/// A morphism together with its nonzero pattern, ready for repeated
/// Kronecker-structured application.
#[derive(Clone, Debug)]
pub struct Prepared<S: Field> {
    pub morphism: Morphism<S>,
    op: LocalOp<S>,
}

impl<S: Field> Prepared<S> {
    pub fn new(morphism: Morphism<S>) -> Self {
        let op = LocalOp::new(&morphism.matrix);
        Prepared { morphism, op }
    }
}

/// Accumulates a composite `f_n ∘ (… ⊗ f_{n-1} ⊗ …) ∘ …` applied to a
/// starting morphism, whiskering each factor by identities implicitly.
#[derive(Clone, Debug)]
pub struct Pipeline<S: Field> {
    dom: ObjectWord,
    cod: ObjectWord,
    state: SparseColumns<S>,
}

impl<S: Field> Pipeline<S> {
    pub fn start(ctx: &S::Ctx, dom: &ObjectWord) -> Self {
        Pipeline {
            dom: dom.clone(),
            cod: dom.clone(),
            state: SparseColumns::identity(ctx, dom.total_dim()),
        }
    }

    pub fn from_morphism(f: &Morphism<S>) -> Self {
        Pipeline {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            state: SparseColumns::from_dense(&f.matrix),
        }
    }

    /// Starts from a block of identity columns of `dom`; the result of
    /// `finish_columns` is then the matching block of the composite.
    pub fn start_columns(ctx: &S::Ctx, dom: &ObjectWord, range: std::ops::Range<usize>) -> Self {
        Pipeline {
            dom: dom.clone(),
            cod: dom.clone(),
            state: SparseColumns::identity_columns(ctx, dom.total_dim(), range),
        }
    }

    pub fn cod(&self) -> &ObjectWord {
        &self.cod
    }

    /// Applies `f` to the factors `at .. at + len(f.dom)` of the current codomain.
    pub fn apply_prepared(&mut self, at: usize, f: &Prepared<S>) -> Result<()> {
        let fd = &f.morphism.dom;
        if at + fd.len() > self.cod.len() {
            return Err(type_error("Pipeline::apply", fd, &self.cod));
        }
        let found = self.cod.sub_word(at..at + fd.len());
        if &found != fd {
            return Err(type_error("Pipeline::apply", fd, &found));
        }
        let left: usize = self.cod.factors()[..at].iter().map(|x| x.dim).product();
        let right: usize = self.cod.factors()[at + fd.len()..].iter().map(|x| x.dim).product();
        self.state = self.state.apply_local(left, &f.op, right)?;
        let mut factors = self.cod.factors()[..at].to_vec();
        factors.extend(f.morphism.cod.factors().iter().cloned());
        factors.extend(self.cod.factors()[at + fd.len()..].iter().cloned());
        self.cod = ObjectWord(factors);
        Ok(())
    }

    pub fn apply(&mut self, at: usize, f: &Morphism<S>) -> Result<()> {
        self.apply_prepared(at, &Prepared::new(f.clone()))
    }

    pub fn state(&self) -> &SparseColumns<S> {
        &self.state
    }

    pub fn finish(self) -> Morphism<S> {
        Morphism {
            dom: self.dom,
            cod: self.cod,
            matrix: self.state.to_dense(),
        }
    }
}

/// `⟨left, right, unit: I → right⊗left, counit: left⊗right → I⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Duality<S: Field> {
    pub left: ObjectWord,
    pub right: ObjectWord,
    pub unit: Morphism<S>,
    pub counit: Morphism<S>,
}

impl<S: Field> Duality<S> {
    /// Checks the types of unit and counit (not the snake equations).
    pub fn new(left: ObjectWord, right: ObjectWord, unit: Morphism<S>, counit: Morphism<S>) -> Result<Self> {
        let rl = right.concat(&left);
        let lr = left.concat(&right);
        if !unit.dom.is_empty() || unit.cod != rl {
            return Err(type_error("Duality::new (unit codomain)", &rl, &unit.cod));
        }
        if !counit.cod.is_empty() || counit.dom != lr {
            return Err(type_error("Duality::new (counit domain)", &lr, &counit.dom));
        }
        Ok(Duality {
            left,
            right,
            unit,
            counit,
        })
    }

    /// The duality of the unit object with itself.
    pub fn trivial(ctx: &S::Ctx) -> Self {
        let one = Morphism::identity(ctx, &ObjectWord::unit());
        Duality {
            left: ObjectWord::unit(),
            right: ObjectWord::unit(),
            unit: one.clone(),
            counit: one,
        }
    }

    pub fn ctx(&self) -> &S::Ctx {
        self.unit.ctx()
    }
}

pub const X_LABEL: &str = "X";
pub const XSTAR_LABEL: &str = "Xstar";

/// The canonical dualities `p = ⟨X*, X, coev, eval⟩` and `q = ⟨X, X*, coev′, eval′⟩`.
pub fn canonical_dualities<S: Field>(ctx: &S::Ctx, d: usize) -> Result<(Duality<S>, Duality<S>)> {
    if d == 0 {
        return Err(Error::InvalidDuality("dimension must be at least 1".into()));
    }
    let x = ObjectWord::single(X_LABEL, d);
    let xs = ObjectWord::single(XSTAR_LABEL, d);
    let pairing = |dom: ObjectWord, cod: ObjectWord| -> Result<Morphism<S>> {
        let m = if dom.is_empty() {
            DenseMatrix::from_fn(ctx, d * d, 1, |r, _| {
                if r / d == r % d {
                    S::one(ctx)
                } else {
                    S::zero(ctx)
                }
            })
        } else {
            DenseMatrix::from_fn(ctx, 1, d * d, |_, c| {
                if c / d == c % d {
                    S::one(ctx)
                } else {
                    S::zero(ctx)
                }
            })
        };
        Morphism::new(dom, cod, m)
    };
    let p = Duality::new(
        xs.clone(),
        x.clone(),
        pairing(ObjectWord::unit(), x.concat(&xs))?,
        pairing(xs.concat(&x), ObjectWord::unit())?,
    )?;
    let q = Duality::new(
        x.clone(),
        xs.clone(),
        pairing(ObjectWord::unit(), xs.concat(&x))?,
        pairing(x.concat(&xs), ObjectWord::unit())?,
    )?;
    Ok((p, q))
}

/// Both snake equations `εX∘Xη = X` and `Yε∘ηY = Y`.
pub fn duality_check<S: Field>(p: &Duality<S>) -> bool {
    snake_left(p).map(|m| m.is_identity()).unwrap_or(false)
        && snake_right(p).map(|m| m.is_identity()).unwrap_or(false)
}

fn snake_left<S: Field>(p: &Duality<S>) -> Result<Morphism<S>> {
    let mut pipe = Pipeline::start(p.ctx(), &p.left);
    pipe.apply(p.left.len(), &p.unit)?;
    pipe.apply(0, &p.counit)?;
    Ok(pipe.finish())
}

fn snake_right<S: Field>(p: &Duality<S>) -> Result<Morphism<S>> {
    let mut pipe = Pipeline::start(p.ctx(), &p.right);
    pipe.apply(0, &p.unit)?;
    pipe.apply(p.right.len(), &p.counit)?;
    Ok(pipe.finish())
}

/// `pq = ⟨XU, VY, VηU∘η′, ε∘Xε′Y⟩` for `p = ⟨X,Y,η,ε⟩`, `q = ⟨U,V,η′,ε′⟩`.
pub fn duality_product<S: Field>(p: &Duality<S>, q: &Duality<S>) -> Result<Duality<S>> {
    if p.ctx() != q.ctx() {
        return Err(Error::FieldMismatch { op: "duality_product" });
    }
    let ctx = p.ctx();
    let mut unit = Pipeline::start(ctx, &ObjectWord::unit());
    unit.apply(0, &q.unit)?;
    unit.apply(q.right.len(), &p.unit)?;
    let left = p.left.concat(&q.left);
    let right = q.right.concat(&p.right);
    let mut counit = Pipeline::start(ctx, &left.concat(&right));
    counit.apply(p.left.len(), &q.counit)?;
    counit.apply(0, &p.counit)?;
    Duality::new(left, right, unit.finish(), counit.finish())
}

/// `a_p(f) = Yf∘ηU` for `f: XU → V`; with `invert`, `a_p⁻¹(f) = εV∘Xf` for `f: U → YV`.
pub fn bij_a<S: Field>(p: &Duality<S>, f: &Morphism<S>, invert: bool) -> Result<Morphism<S>> {
    let ctx = f.ctx();
    if !invert {
        if !f.dom.starts_with(&p.left) {
            return Err(type_error("bij_a", &p.left, &f.dom));
        }
        let u = f.dom.sub_word(p.left.len()..f.dom.len());
        let mut pipe = Pipeline::start(ctx, &u);
        pipe.apply(0, &p.unit)?;
        pipe.apply_prepared(p.right.len(), &Prepared::new(f.clone()))?;
        Ok(pipe.finish())
    } else {
        if !f.cod.starts_with(&p.right) {
            return Err(type_error("bij_a inverse", &p.right, &f.cod));
        }
        let mut pipe = Pipeline::start(ctx, &p.left.concat(&f.dom));
        pipe.apply_prepared(p.left.len(), &Prepared::new(f.clone()))?;
        pipe.apply(0, &p.counit)?;
        Ok(pipe.finish())
    }
}

/// `b_p(g) = gX∘Uη` for `g: UY → V`; with `invert`, `b_p⁻¹(g) = Vε∘gY` for `g: U → VX`.
pub fn bij_b<S: Field>(p: &Duality<S>, g: &Morphism<S>, invert: bool) -> Result<Morphism<S>> {
    let ctx = g.ctx();
    if !invert {
        if !g.dom.ends_with(&p.right) {
            return Err(type_error("bij_b", &p.right, &g.dom));
        }
        let u = g.dom.sub_word(0..g.dom.len() - p.right.len());
        let mut pipe = Pipeline::start(ctx, &u);
        pipe.apply(u.len(), &p.unit)?;
        pipe.apply_prepared(0, &Prepared::new(g.clone()))?;
        Ok(pipe.finish())
    } else {
        if !g.cod.ends_with(&p.left) {
            return Err(type_error("bij_b inverse", &p.left, &g.cod));
        }
        let v_len = g.cod.len() - p.left.len();
        let mut pipe = Pipeline::start(ctx, &g.dom.concat(&p.right));
        pipe.apply_prepared(0, &Prepared::new(g.clone()))?;
        pipe.apply(v_len, &p.counit)?;
        Ok(pipe.finish())
    }
}

/// `l_p = a_p∘b_p⁻¹`: `Hom(XU, VX) → Hom(UY, YV)`.
pub fn lp<S: Field>(p: &Duality<S>, f: &Morphism<S>) -> Result<Morphism<S>> {
    bij_a(p, &bij_b(p, f, true)?, false)
}

/// `r_p = b_p∘a_p⁻¹ = l_p⁻¹`: `Hom(UY, YV) → Hom(XU, VX)`.
pub fn rp<S: Field>(p: &Duality<S>, f: &Morphism<S>) -> Result<Morphism<S>> {
    bij_b(p, &bij_a(p, f, true)?, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    fn swap(d: usize) -> Morphism<Rational> {
        let x = ObjectWord::single(X_LABEL, d);
        let xx = x.concat(&x);
        let m = crate::matrix::permute_tensor_factors(&(), &[d, d], &[1, 0]).unwrap();
        Morphism::new(xx.clone(), xx, m).unwrap()
    }

    #[test]
    fn canonical_dualities_pass_snakes() {
        for d in 1..=4 {
            let (p, q) = canonical_dualities::<Rational>(&(), d).unwrap();
            assert!(duality_check(&p));
            assert!(duality_check(&q));
        }
        let (p, _) = canonical_dualities::<Fp>(&5, 2).unwrap();
        let coev = &p.unit.matrix;
        assert_eq!(coev.rows(), 4);
        for r in 0..4 {
            assert_eq!(coev.get(r, 0).is_one(), r == 0 || r == 3);
        }
        let (p1, _) = canonical_dualities::<Rational>(&(), 1).unwrap();
        assert!(p1.unit.matrix.is_identity() && p1.counit.matrix.is_identity());
        assert!(canonical_dualities::<Rational>(&(), 0).is_err());
    }

    #[test]
    fn scaled_unit_breaks_snakes_unless_compensated() {
        let (p, _) = canonical_dualities::<Rational>(&(), 3).unwrap();
        let mut bad = p.clone();
        bad.unit.matrix = p.unit.matrix.scale(&Rational::integer(2));
        assert!(!duality_check(&bad));
        bad.counit.matrix = p.counit.matrix.scale(&Rational::new(1, 2));
        assert!(duality_check(&bad));
    }

    #[test]
    fn trivial_duality_is_a_product_unit() {
        let (p, _) = canonical_dualities::<Rational>(&(), 2).unwrap();
        let t = Duality::trivial(&());
        assert_eq!(duality_product(&p, &t).unwrap(), p);
        assert_eq!(duality_product(&t, &p).unwrap(), p);
    }

    #[test]
    fn lp_of_swap_is_swap_under_canonical_duality() {
        // With q = ⟨X, X*⟩, l_q sends σ on XX to a map XX* → X*X; for
        // Kronecker pairings it is again the flip of the two factors.
        let (_, q) = canonical_dualities::<Rational>(&(), 2).unwrap();
        let l = lp(&q, &swap(2)).unwrap();
        for c in 0..4 {
            for r in 0..4 {
                let expect = r == (c % 2) * 2 + c / 2;
                assert_eq!(l.matrix.get(r, c).is_one(), expect);
                assert!(l.matrix.get(r, c).is_zero() || expect);
            }
        }
        assert_eq!(rp(&q, &l).unwrap(), swap(2));
    }

    #[test]
    fn compose_reports_type_errors() {
        let (p, q) = canonical_dualities::<Rational>(&(), 2).unwrap();
        let err = compose(&p.counit, &p.unit).unwrap_err();
        assert!(compose(&p.counit, &q.unit).is_ok());
        assert!(matches!(err, Error::TypeMismatch { .. }));
        let (p1, q1) = canonical_dualities::<Rational>(&(), 1).unwrap();
        let scalar = compose(&q1.counit, &p1.unit).unwrap();
        assert!(scalar.dom.is_empty() && scalar.cod.is_empty());
        assert!(scalar.matrix.is_identity());
    }
}
