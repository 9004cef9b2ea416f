//! The normalized HOMFLYPT Yang-Baxter operator on `m` ordered letters.
//!
//! Weights depend only on the relative order of the two input letters:
//!
//! ```text
//! R(a, b) = (b, a)                         if a >= b
//! R(a, b) = (1 - t)(a, b) + t (b, a)       if a <  b
//! ```
//!
//! with `t = y^2`. Every column sums to 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matrix::{Scalar, SparseMatrix};
use crate::ring::IntPoly;

/// A basis letter `v_i` of the ordered alphabet `v_1 < v_2 < ... < v_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u8);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A weight of the form `t^t_pow * (1 - t)^omt_pow`. Every product of
/// Boltzmann weights along a face-map path has this shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Weight {
    pub t_pow: u16,
    pub omt_pow: u16,
}

impl Weight {
    pub const ONE: Weight = Weight { t_pow: 0, omt_pow: 0 };
    pub const T: Weight = Weight { t_pow: 1, omt_pow: 0 };
    pub const ONE_MINUS_T: Weight = Weight { t_pow: 0, omt_pow: 1 };

    pub fn times(self, other: Weight) -> Weight {
        Weight { t_pow: self.t_pow + other.t_pow, omt_pow: self.omt_pow + other.omt_pow }
    }

    pub fn to_poly(self) -> IntPoly {
        &IntPoly::monomial(self.t_pow as usize) * &IntPoly::one_minus_t().pow(self.omt_pow as u32)
    }
}

/// One nonzero term `weight * (c, d)` of `R(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub weight: Weight,
    pub left: u8,
    pub right: u8,
}

/// `R(a, b)` as at most two weighted pairs.
pub fn apply_r_raw(a: u8, b: u8) -> ([Term; 2], usize) {
    if a >= b {
        let t = Term { weight: Weight::ONE, left: b, right: a };
        ([t, t], 1)
    } else {
        (
            [
                Term { weight: Weight::ONE_MINUS_T, left: a, right: b },
                Term { weight: Weight::T, left: b, right: a },
            ],
            2,
        )
    }
}

/// `R(a, b) = Σ R^{ab}_{cd} (c, d)`.
pub fn apply_r(a: Letter, b: Letter) -> Vec<(IntPoly, Letter, Letter)> {
    let (terms, k) = apply_r_raw(a.0, b.0);
    terms[..k].iter().map(|t| (t.weight.to_poly(), Letter(t.left), Letter(t.right))).collect()
}

/// The Boltzmann weight `R^{ab}_{cd}`.
pub fn boltzmann_weight(a: Letter, b: Letter, c: Letter, d: Letter) -> IntPoly {
    if d == a && b == c && a >= b {
        IntPoly::one()
    } else if d == a && b == c && a < b {
        IntPoly::monomial(1)
    } else if c == a && b == d && a < b {
        IntPoly::one_minus_t()
    } else {
        IntPoly::zero()
    }
}

fn pair_index(m: usize, a: usize, b: usize) -> usize {
    (a - 1) * m + (b - 1)
}

/// Dense `m^2 x m^2` matrix of `R` in lexicographic pair order; column
/// `(a, b)` holds `R(a, b)`.
pub fn r_matrix(m: usize) -> SparseMatrix<IntPoly> {
    let mut cols = Vec::with_capacity(m * m);
    for a in 1..=m {
        for b in 1..=m {
            let mut col = Vec::new();
            for c in 1..=m {
                for d in 1..=m {
                    let w = boltzmann_weight(Letter(a as u8), Letter(b as u8), Letter(c as u8), Letter(d as u8));
                    if !w.is_zero() {
                        col.push((pair_index(m, c, d), w));
                    }
                }
            }
            cols.push(col);
        }
    }
    SparseMatrix::from_columns(m * m, cols)
}

/// Kronecker product of two sparse matrices.
fn kron(a: &SparseMatrix<IntPoly>, b: &SparseMatrix<IntPoly>) -> SparseMatrix<IntPoly> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut cols = Vec::with_capacity(ac * bc);
    for ja in 0..ac {
        for jb in 0..bc {
            let mut col = Vec::new();
            for (ia, va) in a.col(ja) {
                for (ib, vb) in b.col(jb) {
                    col.push((ia * br + ib, Scalar::mul(va, vb)));
                }
            }
            cols.push(col);
        }
    }
    SparseMatrix::from_columns(ar * br, cols)
}

/// Checks `(R⊗1)(1⊗R)(R⊗1) = (1⊗R)(R⊗1)(1⊗R)` symbolically over ℤ[t].
pub fn verify_ybe(m: usize) -> bool {
    assert!(m >= 1);
    let r = r_matrix(m);
    let id = SparseMatrix::<IntPoly>::identity(m);
    let r1 = kron(&r, &id);
    let r2 = kron(&id, &r);
    let lhs = r1.mul(&r2).mul(&r1);
    let rhs = r2.mul(&r1).mul(&r2);
    lhs == rhs
}

/// Checks that every column of `R` sums to the constant 1.
pub fn verify_column_unital(m: usize) -> bool {
    assert!(m >= 1);
    let r = r_matrix(m);
    r.columns().iter().all(|col| col.iter().fold(IntPoly::zero(), |acc, (_, v)| &acc + v).is_one())
}
