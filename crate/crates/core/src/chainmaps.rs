//! Maps between chain complexes: the duality `τ`, maps induced by
//! order-preserving letter maps, and the splitting pair `(α, ᾱ)`.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{
    boundary, boundary_of, enumerate_raw, BasisTuple, ChainVector, ComplexError, ComplexSpec, FaceMaps, Membership,
    Side, SparsePolyMatrix,
};
use crate::matrix::SparseMatrix;
use crate::ring::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("letter map is not weakly order-preserving: {0:?}")]
    NotOrderPreserving(Vec<u8>),
    #[error("letter map image {image:?} does not fit {m_from} -> {m_to}")]
    BadShape { m_from: usize, m_to: usize, image: Vec<u8> },
    #[error("splitting needs u < m - 1, got m={m}, u={u}")]
    NoSplitting { m: usize, u: usize },
    #[error("image of {tuple} is not in the target complex {spec}")]
    Target { spec: String, tuple: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A map of letters `v_i -> v_{image[i-1]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    pub m_from: usize,
    pub m_to: usize,
    pub image: Vec<u8>,
}

impl LetterMap {
    pub fn new(m_from: usize, m_to: usize, image: Vec<u8>) -> Result<Self, MapError> {
        if image.len() != m_from || image.iter().any(|&a| a == 0 || a as usize > m_to) {
            return Err(MapError::BadShape { m_from, m_to, image });
        }
        Ok(LetterMap { m_from, m_to, image })
    }

    pub fn identity(m: usize) -> Self {
        LetterMap { m_from: m, m_to: m, image: (1..=m as u8).collect() }
    }

    /// `v_i -> v_{i+1}` on `m - 1` letters.
    pub fn shift(m: usize) -> Self {
        LetterMap { m_from: m - 1, m_to: m, image: (2..=m as u8).collect() }
    }

    pub fn is_weakly_order_preserving(&self) -> bool {
        self.image.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_strict(&self) -> bool {
        self.image.windows(2).all(|w| w[0] < w[1])
    }

    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        x.iter().map(|&a| self.image[a as usize - 1]).collect()
    }

    pub fn compose(&self, first: &LetterMap) -> LetterMap {
        assert_eq!(first.m_to, self.m_from);
        LetterMap { m_from: first.m_from, m_to: self.m_to, image: self.apply(&first.image) }
    }
}

/// `τ_m(a_1, ..., a_n) = (m+1-a_n, ..., m+1-a_1)`.
pub fn tau(x: &BasisTuple, m: usize) -> BasisTuple {
    BasisTuple::from_indices(&tau_raw(&x.indices(), m))
}

fn tau_raw(x: &[u8], m: usize) -> Vec<u8> {
    x.iter().rev().map(|&a| m as u8 + 1 - a).collect()
}

pub fn tau_vector(v: &ChainVector, m: usize) -> ChainVector {
    let mut out = ChainVector::new();
    for (t, c) in &v.entries {
        out.add_term(tau(t, m), c);
    }
    out
}

/// Checks `τ_m ∂_n = (-1)^n ∂_n τ_m` and `τ_m d_i^l = d_{n+1-i}^r τ_m` on
/// every basis tuple of `Full(m)` in degree `n`.
pub fn verify_tau_duality(m: usize, n: usize) -> bool {
    assert!(n >= 1);
    let sign = if n % 2 == 0 { IntPoly::one() } else { -IntPoly::one() };
    enumerate_raw(&ComplexSpec::Full { m }, n).par_iter().all(|x| {
        let mut maps = FaceMaps::new();
        let tx = tau_raw(x, m);
        let lhs = tau_vector(&boundary_of(&mut maps, x), m);
        let mut rhs = ChainVector::new();
        rhs.add_scaled(&boundary_of(&mut maps, &tx), &sign);
        if lhs != rhs {
            return false;
        }
        (1..=n).all(|i| {
            let l = ChainVector::from_leaves(&maps.left_leaves(i, x));
            let r = ChainVector::from_leaves(&maps.right_leaves(n + 1 - i, &tx));
            tau_vector(&l, m) == r
        })
    })
}

/// Matrix of `f^{⊗n}` from `Full(m_from)` to `Full(m_to)`.
pub fn induced_chain_map(f: &LetterMap, n: usize) -> Result<SparsePolyMatrix, MapError> {
    induced_map_between(f, &ComplexSpec::Full { m: f.m_from }, &ComplexSpec::Full { m: f.m_to }, n)
}

/// Matrix of `f^{⊗n}` between two specs on the internal alphabets; tuples
/// landing in the zero part of a quotient target are dropped.
pub fn induced_map_between(
    f: &LetterMap,
    from: &ComplexSpec,
    to: &ComplexSpec,
    n: usize,
) -> Result<SparsePolyMatrix, MapError> {
    if !f.is_weakly_order_preserving() {
        return Err(MapError::NotOrderPreserving(f.image.clone()));
    }
    let cols_raw = enumerate_raw(from, n);
    let rows_raw = enumerate_raw(to, n);
    let row_index: HashMap<&[u8], usize> = rows_raw.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();
    let mut cols = Vec::with_capacity(cols_raw.len());
    for x in &cols_raw {
        let y = f.apply(x);
        match row_index.get(y.as_slice()) {
            Some(&r) => cols.push(vec![(r, IntPoly::one())]),
            None if to.classify(&y) == Membership::Dropped => cols.push(Vec::new()),
            None => {
                return Err(MapError::Target {
                    spec: to.to_string(),
                    tuple: BasisTuple::from_indices(x).to_string(),
                })
            }
        }
    }
    Ok(SparsePolyMatrix {
        matrix: SparseMatrix::from_columns(rows_raw.len(), cols),
        row_basis: rows_raw.iter().map(|t| BasisTuple::from_indices(t)).collect(),
        col_basis: cols_raw.iter().map(|t| BasisTuple::from_indices(t)).collect(),
    })
}

/// Checks `∂^to_n f_n = f_{n-1} ∂^from_n`.
pub fn verify_chain_map(f: &LetterMap, from: &ComplexSpec, to: &ComplexSpec, n: usize) -> Result<bool, MapError> {
    assert!(n >= 1);
    let f_n = induced_map_between(f, from, to, n)?;
    let f_n1 = induced_map_between(f, from, to, n - 1)?;
    let d_from = boundary(from, n)?;
    let d_to = boundary(to, n)?;
    Ok(d_to.matrix.mul(&f_n.matrix) == f_n1.matrix.mul(&d_from.matrix))
}

/// Checks `f(d_i^ε x) = d_i^ε f(x)` for every face map and every `x` in
/// `Full(f.m_from)` of degree `n`.
pub fn verify_face_naturality(f: &LetterMap, n: usize) -> bool {
    let image = |v: &ChainVector| {
        let mut out = ChainVector::new();
        for (t, c) in &v.entries {
            out.add_term(BasisTuple::from_indices(&f.apply(&t.indices())), c);
        }
        out
    };
    enumerate_raw(&ComplexSpec::Full { m: f.m_from }, n).par_iter().all(|x| {
        let mut maps = FaceMaps::new();
        let fx = f.apply(x);
        (1..=n).all(|i| {
            [Side::Left, Side::Right].iter().all(|&side| {
                let (a, b) = match side {
                    Side::Left => (maps.left_leaves(i, x), maps.left_leaves(i, &fx)),
                    Side::Right => (maps.right_leaves(i, x), maps.right_leaves(i, &fx)),
                };
                image(&ChainVector::from_leaves(&a)) == ChainVector::from_leaves(&b)
            })
        })
    })
}

/// The letter maps `f` (for `α`) and `g` (for `ᾱ`) splitting
/// `C^{m,u} ≅ C^{m-1,u} ⊕ C^{m,u+1}`.
pub fn splitting_pair(m: usize, u: usize) -> Result<(LetterMap, LetterMap), MapError> {
    if u + 1 >= m {
        return Err(MapError::NoSplitting { m, u });
    }
    let cut = (m - u) as u8;
    let f = LetterMap::new(m - 1, m, (1..m as u8).map(|i| if i < cut { i } else { i + 1 }).collect())?;
    let g = LetterMap::new(m, m - 1, (1..=m as u8).map(|i| if i < cut { i } else { i - 1 }).collect())?;
    Ok((f, g))
}

/// `C^{m,u}`: `m` letters with the top `u` required.
pub fn use_top(m: usize, u: usize) -> ComplexSpec {
    ComplexSpec::UseTop { m, u, l: m - u }
}

/// Verifies that `α` and `ᾱ` are chain maps in degree `n` and that
/// `ᾱ α = id` there.
pub fn verify_split(m: usize, u: usize, n: usize) -> Result<bool, MapError> {
    let (f, g) = splitting_pair(m, u)?;
    let small = use_top(m - 1, u);
    let big = use_top(m, u);
    if !verify_chain_map(&f, &small, &big, n)? || !verify_chain_map(&g, &big, &small, n)? {
        return Ok(false);
    }
    let a = induced_map_between(&f, &small, &big, n)?;
    let abar = induced_map_between(&g, &big, &small, n)?;
    Ok(abar.matrix.mul(&a.matrix) == SparseMatrix::identity(a.ncols()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::boundary_of;

    fn bt(ix: &[u8]) -> BasisTuple {
        BasisTuple::from_indices(ix)
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&bt(&[1, 2, 3]), 3), bt(&[1, 2, 3]));
        assert_eq!(tau(&bt(&[1, 1, 2]), 2), bt(&[1, 2, 2]));
        assert_eq!(tau(&tau(&bt(&[3, 1, 4, 1]), 4), 4), bt(&[3, 1, 4, 1]));
    }

    #[test]
    fn duality_small() {
        for m in 1..=3 {
            for n in 1..=4 {
                assert!(verify_tau_duality(m, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn splitting_maps() {
        let (f, g) = splitting_pair(3, 1).unwrap();
        assert_eq!(f.image, vec![1, 3]);
        assert_eq!(g.image, vec![1, 1, 2]);
        let (f, g) = splitting_pair(2, 0).unwrap();
        assert_eq!(f.image, vec![1]);
        assert_eq!(g.image, vec![1, 1]);
        assert!(splitting_pair(4, 3).is_err());
    }

    #[test]
    fn split_checks() {
        assert!(verify_split(3, 0, 3).unwrap());
        assert!(verify_split(2, 0, 3).unwrap());
        assert!(verify_split(3, 1, 3).unwrap());
    }

    #[test]
    fn rejects_decreasing_map() {
        let f = LetterMap::new(2, 2, vec![2, 1]).unwrap();
        assert!(matches!(induced_chain_map(&f, 2), Err(MapError::NotOrderPreserving(_))));
        assert!(LetterMap::new(2, 2, vec![1, 3]).is_err());
    }

    #[test]
    fn identity_map_is_identity() {
        let m = induced_chain_map(&LetterMap::identity(3), 3).unwrap();
        assert_eq!(m.matrix, SparseMatrix::identity(27));
    }

    #[test]
    fn shift_commutes_with_faces() {
        for n in 1..=4 {
            assert!(verify_face_naturality(&LetterMap::shift(3), n));
        }
    }

    #[test]
    fn boundary_of_tau_image() {
        let mut maps = FaceMaps::new();
        let x = [1u8, 3, 2];
        let lhs = tau_vector(&boundary_of(&mut maps, &x), 3);
        let mut rhs = ChainVector::new();
        rhs.add_scaled(&boundary_of(&mut maps, &tau_raw(&x, 3)), &-IntPoly::one());
        assert_eq!(lhs, rhs);
    }
}
