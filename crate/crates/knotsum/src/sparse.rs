//! Column-sparse matrices and Kronecker-structured application.
//!
//! `apply_local` computes `(I_left ⊗ M ⊗ I_right) · X` without building the
//! padded operator. Tangle evaluation, partial transposes and the
//! Yang-Baxter check all reduce to chains of such applications.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::DenseMatrix;

/// Above this many output rows `apply_local` accumulates in a hash map
/// instead of a dense scratch column.
const DENSE_SCRATCH_LIMIT: usize = 1 << 20;

/// Nonzero entries of a dense operator, grouped by input index.
#[derive(Clone, Debug)]
pub struct LocalOp<S: Field> {
    rows: usize,
    cols: usize,
    by_col: Vec<Vec<(usize, S)>>,
}

impl<S: Field> LocalOp<S> {
    pub fn new(m: &DenseMatrix<S>) -> Self {
        let mut by_col = vec![Vec::new(); m.cols()];
        for r in 0..m.rows() {
            for (c, x) in m.row(r).iter().enumerate() {
                if !x.is_zero() {
                    by_col[c].push((r, x.clone()));
                }
            }
        }
        LocalOp {
            rows: m.rows(),
            cols: m.cols(),
            by_col,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// A matrix stored as sorted nonzero lists per column.
#[derive(Clone, Debug)]
pub struct SparseColumns<S: Field> {
    rows: usize,
    cols: Vec<Vec<(usize, S)>>,
    ctx: S::Ctx,
}

impl<S: Field> SparseColumns<S> {
    pub fn identity(ctx: &S::Ctx, n: usize) -> Self {
        SparseColumns {
            rows: n,
            cols: (0..n).map(|i| vec![(i, S::one(ctx))]).collect(),
            ctx: ctx.clone(),
        }
    }

    pub fn from_dense(m: &DenseMatrix<S>) -> Self {
        let mut cols = vec![Vec::new(); m.cols()];
        for r in 0..m.rows() {
            for (c, x) in m.row(r).iter().enumerate() {
                if !x.is_zero() {
                    cols[c].push((r, x.clone()));
                }
            }
        }
        SparseColumns {
            rows: m.rows(),
            cols,
            ctx: m.ctx().clone(),
        }
    }

    /// Identity restricted to a contiguous range of columns; used to stream
    /// large identity inputs through a chain in bounded memory.
    pub fn identity_columns(ctx: &S::Ctx, n: usize, range: std::ops::Range<usize>) -> Self {
        SparseColumns {
            rows: n,
            cols: range.map(|i| vec![(i, S::one(ctx))]).collect(),
            ctx: ctx.clone(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, S)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        let mut m = DenseMatrix::zeros(&self.ctx, self.rows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                m.set(*r, c, x.clone());
            }
        }
        m
    }

    /// `(I_left ⊗ op ⊗ I_right) · self`.
    pub fn apply_local(&self, left: usize, op: &LocalOp<S>, right: usize) -> Result<Self> {
        if left * op.cols * right != self.rows {
            return Err(Error::DimensionMismatch {
                op: "apply_local",
                left: (left * op.rows * right, left * op.cols * right),
                right: (self.rows, self.cols.len()),
            });
        }
        let out_rows = left * op.rows * right;
        let block_in = op.cols * right;
        let block_out = op.rows * right;
        // Output positions hit by input row `r`, with the op entry to use.
        let targets = |r: usize| {
            let li = r / block_in;
            let rem = r % block_in;
            let base = li * block_out + rem % right;
            op.by_col[rem / right].iter().map(move |(o, m)| (base + o * right, m))
        };
        let out_cols = if out_rows <= DENSE_SCRATCH_LIMIT {
            let zero = S::zero(&self.ctx);
            let mut scratch = vec![zero.clone(); out_rows];
            let mut touched_flag = vec![false; out_rows];
            let mut touched: Vec<usize> = Vec::new();
            let mut out_cols = Vec::with_capacity(self.cols.len());
            for col in &self.cols {
                for (r, x) in col {
                    for (idx, m) in targets(*r) {
                        if !touched_flag[idx] {
                            touched_flag[idx] = true;
                            touched.push(idx);
                        }
                        scratch[idx].add_mul_assign(m, x);
                    }
                }
                touched.sort_unstable();
                let mut out = Vec::with_capacity(touched.len());
                for &idx in &touched {
                    touched_flag[idx] = false;
                    let v = std::mem::replace(&mut scratch[idx], zero.clone());
                    if !v.is_zero() {
                        out.push((idx, v));
                    }
                }
                touched.clear();
                out_cols.push(out);
            }
            out_cols
        } else {
            self.cols
                .iter()
                .map(|col| {
                    let mut acc: HashMap<usize, S> = HashMap::new();
                    for (r, x) in col {
                        for (idx, m) in targets(*r) {
                            acc.entry(idx).or_insert_with(|| S::zero(&self.ctx)).add_mul_assign(m, x);
                        }
                    }
                    let mut out: Vec<(usize, S)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    out.sort_unstable_by_key(|(idx, _)| *idx);
                    out
                })
                .collect()
        };
        Ok(SparseColumns {
            rows: out_rows,
            cols: out_cols,
            ctx: self.ctx.clone(),
        })
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::matrix::{kron, mat_mul};

    #[test]
    fn local_application_matches_explicit_kron() {
        let ctx = ();
        let m = DenseMatrix::<Rational>::from_i64_rows(&ctx, &[vec![1, 2, 0], vec![0, -1, 3]]).unwrap();
        let x = DenseMatrix::<Rational>::from_fn(&ctx, 2 * 3 * 2, 3, |r, c| {
            Rational::integer(((r * 7 + c * 3) % 5) as i64 - 2)
        });
        let padded = kron(
            &kron(&DenseMatrix::identity(&ctx, 2), &m).unwrap(),
            &DenseMatrix::identity(&ctx, 2),
        )
        .unwrap();
        let expect = mat_mul(&padded, &x).unwrap();
        let got = SparseColumns::from_dense(&x)
            .apply_local(2, &LocalOp::new(&m), 2)
            .unwrap()
            .to_dense();
        assert_eq!(got, expect);
    }

    #[test]
    fn wrong_padding_is_rejected() {
        let m = DenseMatrix::<Rational>::identity(&(), 2);
        let x = SparseColumns::identity(&(), 5);
        assert!(x.apply_local(1, &LocalOp::new(&m), 2).is_err());
    }

    #[test]
    fn wide_rows_use_the_sparse_accumulator() {
        let ctx = ();
        let m = DenseMatrix::<Rational>::from_i64_rows(&ctx, &[vec![1, 2], vec![0, -1], vec![4, 0]]).unwrap();
        let right = DENSE_SCRATCH_LIMIT;
        let cols = [0, 5, right + 7, 2 * right - 1];
        let x = SparseColumns {
            rows: 2 * right,
            cols: cols.iter().map(|&r| vec![(r, Rational::integer(3))]).collect(),
            ctx,
        };
        let y = x.apply_local(1, &LocalOp::new(&m), right).unwrap();
        assert_eq!(y.rows(), 3 * right);
        for (c, &r) in cols.iter().enumerate() {
            let (i, ri) = (r / right, r % right);
            let expect: Vec<(usize, Rational)> = (0..3)
                .filter(|o| !m.get(*o, i).is_zero())
                .map(|o| (o * right + ri, Field::mul(m.get(o, i), &Rational::integer(3))))
                .collect();
            assert_eq!(y.column(c), expect.as_slice());
        }
    }
}
