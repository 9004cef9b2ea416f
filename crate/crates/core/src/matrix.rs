//! Column-major sparse matrices over the scalar rings used in this crate.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::{IntPoly, RatPoly};

/// The ring operations matrix code needs from an entry type.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

macro_rules! impl_scalar {
    ($ty:ty, $zero:expr, $one:expr, $is_zero:path) => {
        impl Scalar for $ty {
            fn zero() -> Self {
                $zero
            }
            fn one() -> Self {
                $one
            }
            fn is_zero(&self) -> bool {
                $is_zero(self)
            }
            fn add(&self, other: &Self) -> Self {
                self + other
            }
            fn sub(&self, other: &Self) -> Self {
                self - other
            }
            fn mul(&self, other: &Self) -> Self {
                self * other
            }
            fn neg(&self) -> Self {
                -self
            }
        }
    };
}

impl_scalar!(BigInt, <BigInt as Zero>::zero(), <BigInt as One>::one(), Zero::is_zero);
impl_scalar!(IntPoly, IntPoly::zero(), IntPoly::one(), IntPoly::is_zero);
impl_scalar!(RatPoly, RatPoly::zero(), RatPoly::one(), RatPoly::is_zero);

/// Sparse matrix stored by columns; each column is sorted by row index and
/// holds no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<R> {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, R)>>,
}

impl<R: Scalar> SparseMatrix<R> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n).map(|i| vec![(i, R::one())]).collect();
        SparseMatrix { nrows: n, ncols: n, cols }
    }

    /// Builds a matrix from columns of `(row, value)` pairs in any order;
    /// repeated rows are summed and zeros dropped.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, R)>>) -> Self {
        let ncols = cols.len();
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|(r, _)| *r);
                let mut out: Vec<(usize, R)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    assert!(r < nrows, "row index {r} out of range {nrows}");
                    match out.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv = lv.add(&v),
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn from_dense(rows: &[Vec<R>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| !rows[i][j].is_zero()).map(|i| (i, rows[i][j].clone())).collect())
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn col(&self, j: usize) -> &[(usize, R)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, R)>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> R {
        match self.cols[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => R::zero(),
        }
    }

    /// Iterates nonzero entries as `(row, col, value)` in column-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        let mut out = vec![vec![R::zero(); self.ncols]; self.nrows];
        for (i, j, v) in self.iter() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, R)>> = vec![Vec::new(); self.nrows];
        for (i, j, v) in self.iter() {
            cols[i].push((j, v.clone()));
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, cols }
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> SparseMatrix<S> {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols }
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<R>) -> SparseMatrix<R> {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let mut acc: Vec<Option<R>> = vec![None; self.nrows];
        let mut touched = Vec::new();
        let cols = rhs
            .cols
            .iter()
            .map(|rc| {
                for (k, b) in rc {
                    for (i, a) in &self.cols[*k] {
                        let prod = a.mul(b);
                        match &mut acc[*i] {
                            Some(x) => *x = x.add(&prod),
                            slot @ None => {
                                *slot = Some(prod);
                                touched.push(*i);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                let col: Vec<(usize, R)> = touched
                    .drain(..)
                    .filter_map(|i| acc[i].take().filter(|v| !v.is_zero()).map(|v| (i, v)))
                    .collect();
                col
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: rhs.ncols, cols }
    }

    pub fn sub(&self, rhs: &SparseMatrix<R>) -> SparseMatrix<R> {
        assert_eq!(self.shape(), rhs.shape());
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| {
                let mut out = a.clone();
                out.extend(b.iter().map(|(i, v)| (*i, v.neg())));
                out
            })
            .collect();
        SparseMatrix::from_columns(self.nrows, cols)
    }

    /// Sets every entry of column `j`.
    pub fn set_col(&mut self, j: usize, mut col: Vec<(usize, R)>) {
        col.sort_by_key(|(r, _)| *r);
        col.retain(|(_, v)| !v.is_zero());
        self.cols[j] = col;
    }
}

impl SparseMatrix<IntPoly> {
    /// Specializes `t` to the integer `c`.
    pub fn eval(&self, c: &BigInt) -> SparseMatrix<BigInt> {
        self.map(|p| p.eval(c))
    }

    pub fn to_rat(&self) -> SparseMatrix<RatPoly> {
        self.map(|p| p.to_rat())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> SparseMatrix<BigInt> {
        let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        SparseMatrix::from_dense(&dense)
    }

    #[test]
    fn product_matches_dense() {
        let a = int(&[&[1, 2, 0], &[0, -1, 3]]);
        let b = int(&[&[1, 0], &[2, 1], &[0, 4]]);
        assert_eq!(a.mul(&b), int(&[&[5, 2], &[-2, 11]]));
        assert_eq!(a.mul(&SparseMatrix::identity(3)), a);
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = int(&[&[1, -1]]);
        let b = int(&[&[1], &[1]]);
        assert!(a.mul(&b).is_zero());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn from_columns_merges_duplicates() {
        let m = SparseMatrix::from_columns(2, vec![vec![(1, BigInt::from(2)), (1, BigInt::from(-2)), (0, BigInt::from(1))]]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), BigInt::from(1));
        assert_eq!(m.transpose().get(0, 0), BigInt::from(1));
    }
}
