//! Dense exact matrices and the handful of kernels everything else uses.
//!
//! Tensor indices are row-major: in `V_1 ⊗ … ⊗ V_n` the leftmost factor is
//! the most significant digit of the flat index.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix<S: Field> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    ctx: S::Ctx,
}

impl<S: Field> fmt::Debug for DenseMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} over {}", self.rows, self.cols, self.field())?;
        for r in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16))
                .map(|c| self.get(r, c).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Field> DenseMatrix<S> {
    pub fn zeros(ctx: &S::Ctx, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![S::zero(ctx); rows * cols],
            ctx: ctx.clone(),
        }
    }

    pub fn identity(ctx: &S::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, S::one(ctx));
        }
        m
    }

    pub fn from_fn(ctx: &S::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DenseMatrix {
            rows,
            cols,
            data,
            ctx: ctx.clone(),
        }
    }

    /// Builds a matrix from integer rows; handy for fixtures and tests.
    pub fn from_i64_rows(ctx: &S::Ctx, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                op: "from_i64_rows",
                left: (r, c),
                right: (r, 0),
            });
        }
        Ok(Self::from_fn(ctx, r, c, |i, j| S::from_i64(ctx, rows[i][j])))
    }

    pub fn from_rows(ctx: &S::Ctx, rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    op: "from_rows",
                    left: (r, c),
                    right: (r, row.len()),
                });
            }
            if row.iter().any(|x| &x.context() != ctx) {
                return Err(Error::FieldMismatch { op: "from_rows" });
            }
            data.extend(row);
        }
        Ok(DenseMatrix {
            rows: r,
            cols: c,
            data,
            ctx: ctx.clone(),
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn field(&self) -> FieldSpec {
        S::spec_of(&self.ctx)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut S {
        &mut self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul(s)).collect(),
            ctx: self.ctx.clone(),
        }
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch { op });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
            ctx: self.ctx.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
            ctx: self.ctx.clone(),
        })
    }

    /// First entry (row, col) where two equally shaped matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.cols, i % self.cols))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        mat_mul(self, other)
    }

    /// Matrix power for square matrices; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "pow",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut base = if e < 0 {
            mat_inverse(self)?.ok_or_else(|| Error::Singular("negative power of a singular matrix".into()))?
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = Self::identity(&self.ctx, self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = mat_mul(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = mat_mul(&base, &base)?;
            }
        }
        Ok(acc)
    }
}

/// Exact product `a · b`.
pub fn mat_mul<S: Field>(a: &DenseMatrix<S>, b: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    if a.ctx != b.ctx {
        return Err(Error::FieldMismatch { op: "mat_mul" });
    }
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "mat_mul",
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    let mut out: DenseMatrix<S> = DenseMatrix::zeros(&a.ctx, a.rows, b.cols);
    for i in 0..a.rows {
        let out_row: &mut [S] = &mut out.data[i * b.cols..(i + 1) * b.cols];
        for k in 0..a.cols {
            let aik = &a.data[i * a.cols + k];
            if aik.is_zero() {
                continue;
            }
            let b_row = &b.data[k * b.cols..(k + 1) * b.cols];
            for (o, bkj) in out_row.iter_mut().zip(b_row) {
                if !bkj.is_zero() {
                    o.add_mul_assign(aik, bkj);
                }
            }
        }
    }
    Ok(out)
}

/// Exact inverse by Gauss-Jordan elimination with first-nonzero pivoting.
/// `Ok(None)` means the matrix is singular.
pub fn mat_inverse<S: Field>(a: &DenseMatrix<S>) -> Result<Option<DenseMatrix<S>>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "mat_inverse",
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let ctx = a.ctx.clone();
    let mut m = a.clone();
    let mut inv = DenseMatrix::identity(&ctx, n);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
            return Ok(None);
        };
        if pivot != col {
            swap_rows(&mut m, pivot, col);
            swap_rows(&mut inv, pivot, col);
        }
        let pinv = m.get(col, col).inv().expect("pivot is nonzero");
        scale_row(&mut m, col, &pinv);
        scale_row(&mut inv, col, &pinv);
        let pivot_m: Vec<S> = m.row(col).to_vec();
        let pivot_i: Vec<S> = inv.row(col).to_vec();
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = m.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            let neg = factor.neg();
            eliminate(&mut m, r, &pivot_m, &neg);
            eliminate(&mut inv, r, &pivot_i, &neg);
        }
    }
    Ok(Some(inv))
}

fn swap_rows<S: Field>(m: &mut DenseMatrix<S>, a: usize, b: usize) {
    let c = m.cols;
    for j in 0..c {
        m.data.swap(a * c + j, b * c + j);
    }
}

fn scale_row<S: Field>(m: &mut DenseMatrix<S>, r: usize, s: &S) {
    let c = m.cols;
    for x in &mut m.data[r * c..(r + 1) * c] {
        *x = x.mul(s);
    }
}

fn eliminate<S: Field>(m: &mut DenseMatrix<S>, r: usize, pivot_row: &[S], factor: &S) {
    let c = m.cols;
    for (x, p) in m.data[r * c..(r + 1) * c].iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            x.add_mul_assign(factor, p);
        }
    }
}

/// Kronecker product with `(i,k),(j,l) ↦ a[i,j]·b[k,l]`.
pub fn kron<S: Field>(a: &DenseMatrix<S>, b: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    if a.ctx != b.ctx {
        return Err(Error::FieldMismatch { op: "kron" });
    }
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = DenseMatrix::zeros(&a.ctx, rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let bkl = b.get(k, l);
                    if !bkl.is_zero() {
                        out.set(i * b.rows + k, j * b.cols + l, aij.mul(bkl));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Permutation matrix moving tensor factor `j` (of dimension `dims[j]`) to
/// output slot `perm[j]`. Slots are 0-based.
pub fn permute_tensor_factors<S: Field>(
    ctx: &S::Ctx,
    dims: &[usize],
    perm: &[usize],
) -> Result<DenseMatrix<S>> {
    let n = dims.len();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::InvalidPermutation(perm.to_vec()));
    }
    let mut out_dims = vec![0; n];
    for (j, &p) in perm.iter().enumerate() {
        out_dims[p] = dims[j];
    }
    let total: usize = dims.iter().product();
    let mut m = DenseMatrix::zeros(ctx, total, total);
    let mut digits = vec![0usize; n];
    let mut out_digits = vec![0usize; n];
    for col in 0..total {
        let mut rest = col;
        for j in (0..n).rev() {
            digits[j] = rest % dims[j];
            rest /= dims[j];
        }
        for j in 0..n {
            out_digits[perm[j]] = digits[j];
        }
        let row = out_digits
            .iter()
            .zip(&out_dims)
            .fold(0, |acc, (&d, &dim)| acc * dim + d);
        m.set(row, col, S::one(ctx));
    }
    Ok(m)
}

/// Splits a flat tensor index into digits for the given factor dimensions.
pub fn unflatten(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for j in (0..dims.len()).rev() {
        out[j] = index % dims[j];
        index /= dims[j];
    }
    out
}

pub fn flatten(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&d, &dim)| acc * dim + d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    fn m7(rows: &[Vec<i64>]) -> DenseMatrix<Fp> {
        DenseMatrix::from_i64_rows(&7, rows).unwrap()
    }

    #[test]
    fn identity_products() {
        let i3 = DenseMatrix::<Rational>::identity(&(), 3);
        assert_eq!(mat_mul(&i3, &i3).unwrap(), i3);
        let a = m7(&[vec![1, 2], vec![3, 4], vec![5, 6]]);
        let z = DenseMatrix::zeros(&7, 2, 2);
        assert!(mat_mul(&a, &z).unwrap().is_zero());
    }

    #[test]
    fn mismatches_are_reported() {
        let a = m7(&[vec![1, 2]]);
        assert!(matches!(mat_mul(&a, &a), Err(Error::DimensionMismatch { .. })));
        let b = DenseMatrix::<Fp>::identity(&5, 2);
        assert!(matches!(mat_mul(&a, &b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(mat_inverse(&a), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn inverse_basic_cases() {
        let i5 = DenseMatrix::<Rational>::identity(&(), 5);
        assert_eq!(mat_inverse(&i5).unwrap().unwrap(), i5);
        let z = DenseMatrix::<Rational>::zeros(&(), 2, 2);
        assert!(mat_inverse(&z).unwrap().is_none());
        let a = DenseMatrix::<Rational>::from_i64_rows(&(), &[vec![0, 2], vec![3, 1]]).unwrap();
        let inv = mat_inverse(&a).unwrap().unwrap();
        assert!(mat_mul(&a, &inv).unwrap().is_identity());
        assert_eq!(inv.get(0, 0), &Rational::new(-1, 6));
    }

    #[test]
    fn kron_units_and_identities() {
        let i2 = DenseMatrix::<Rational>::identity(&(), 2);
        let i3 = DenseMatrix::<Rational>::identity(&(), 3);
        assert_eq!(kron(&i2, &i3).unwrap(), DenseMatrix::identity(&(), 6));
        let a = DenseMatrix::<Rational>::from_i64_rows(&(), &[vec![1, 2], vec![3, 4]]).unwrap();
        let one = DenseMatrix::<Rational>::identity(&(), 1);
        assert_eq!(kron(&a, &one).unwrap(), a);
        assert_eq!(kron(&one, &a).unwrap(), a);
    }

    #[test]
    fn swap_permutation() {
        let p = permute_tensor_factors::<Rational>(&(), &[2, 2], &[1, 0]).unwrap();
        // e_0⊗e_1 (index 1) goes to e_1⊗e_0 (index 2).
        assert!(p.get(2, 1).is_one());
        assert!(mat_mul(&p, &p).unwrap().is_identity());
        let id = permute_tensor_factors::<Rational>(&(), &[3], &[0]).unwrap();
        assert!(id.is_identity());
        assert!(permute_tensor_factors::<Rational>(&(), &[2, 2], &[0, 0]).is_err());
        assert!(permute_tensor_factors::<Rational>(&(), &[2, 2], &[0, 2]).is_err());
    }

    #[test]
    fn matrix_powers() {
        let a = DenseMatrix::<Rational>::from_i64_rows(&(), &[vec![1, 1], vec![0, 1]]).unwrap();
        let a3 = a.pow(3).unwrap();
        assert_eq!(a3.get(0, 1), &Rational::integer(3));
        let am2 = a.pow(-2).unwrap();
        assert_eq!(am2.get(0, 1), &Rational::integer(-2));
        assert!(a.pow(0).unwrap().is_identity());
    }
}
