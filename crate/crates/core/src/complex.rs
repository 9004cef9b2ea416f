//! Chain modules, face maps and boundary matrices.
//!
//! The face map `d_i^l` slides the `i`-th strand to the left wall through
//! `i - 1` crossings and deletes it there; `d_i^r` slides it to the right
//! wall. Both are evaluated by recursion over the sliding prefix (resp.
//! suffix) with memoization, so `R` is never materialized.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::SparseMatrix;
use crate::ring::IntPoly;
use crate::ybop::{apply_r_raw, Letter, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("face index {i} out of range for a tuple of length {n}")]
    FaceIndex { i: usize, n: usize },
    #[error("invalid complex: {0}")]
    InvalidSpec(String),
    #[error("boundary of {tuple} leaves the subcomplex {spec}: produced {image}")]
    NotClosed { spec: String, tuple: String, image: String },
}

/// A basis element of `V^{⊗n}`: an `n`-tuple of letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisTuple(pub Vec<Letter>);

impl BasisTuple {
    pub fn from_indices(ix: &[u8]) -> Self {
        BasisTuple(ix.iter().map(|&i| Letter(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> Vec<u8> {
        self.0.iter().map(|l| l.0).collect()
    }
}

impl fmt::Display for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which chain complex is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComplexSpec {
    /// All tuples on `m` letters.
    Full { m: usize },
    /// Tuples on the bottom `l` and top `u` letters of an `m`-letter
    /// alphabet, each top letter used at least once. Realized on the
    /// consecutive alphabet `1..=l+u`.
    UseTop { m: usize, u: usize, l: usize },
    /// `UseTop(m, m - 1, 1)`: letters `2..=m` all required.
    Final { m: usize },
    /// `Final(m)` restricted to tuples using `v_m` at most `cap` times; a
    /// subcomplex.
    TopCapped { m: usize, cap: usize },
    /// `Final(m)` modulo `TopCapped(m, cap)`: tuples using `v_m` more than
    /// `cap` times.
    TopQuotient { m: usize, cap: usize },
    /// Tuples `(u, w)` with `u` on letters above `split` and `w` on letters
    /// at most `split`; a subcomplex of `Full(m)`.
    Kunneth { m: usize, split: usize },
    /// `Full(m)` modulo `Kunneth(m, split)`.
    KunnethQuotient { m: usize, split: usize },
}

/// How a tuple relates to a spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    In,
    /// Zero in the quotient the spec describes.
    Dropped,
    /// Not part of the complex at all.
    Outside,
}

impl ComplexSpec {
    pub fn validate(&self) -> Result<(), ComplexError> {
        let bad = |s: String| Err(ComplexError::InvalidSpec(s));
        match *self {
            ComplexSpec::Full { m } if m == 0 => bad("full complex needs m >= 1".into()),
            ComplexSpec::UseTop { m, u, l } if u + l > m => bad(format!("usetop needs u + l <= m, got u={u}, l={l}, m={m}")),
            ComplexSpec::UseTop { u, l, .. } if u + l == 0 => bad("usetop needs u + l >= 1".into()),
            ComplexSpec::Final { m } if m == 0 => bad("final complex needs m >= 1".into()),
            ComplexSpec::TopCapped { m, cap } | ComplexSpec::TopQuotient { m, cap } if m == 0 || cap == 0 => {
                bad(format!("capped complex needs m >= 1 and cap >= 1, got m={m}, cap={cap}"))
            }
            ComplexSpec::Kunneth { m, split } | ComplexSpec::KunnethQuotient { m, split } if split == 0 || split >= m => {
                bad(format!("kunneth needs 1 <= split < m, got split={split}, m={m}"))
            }
            _ => Ok(()),
        }
    }

    /// Size of the consecutive internal alphabet.
    pub fn alphabet(&self) -> usize {
        match *self {
            ComplexSpec::Full { m } | ComplexSpec::Final { m } => m,
            ComplexSpec::UseTop { u, l, .. } => u + l,
            ComplexSpec::TopCapped { m, .. } | ComplexSpec::TopQuotient { m, .. } => m,
            ComplexSpec::Kunneth { m, .. } | ComplexSpec::KunnethQuotient { m, .. } => m,
        }
    }

    /// Required letters (each must occur at least once), as an inclusive range.
    fn required(&self) -> Option<(u8, u8)> {
        match *self {
            ComplexSpec::UseTop { u, l, .. } if u > 0 => Some((l as u8 + 1, (l + u) as u8)),
            ComplexSpec::Final { m } | ComplexSpec::TopCapped { m, .. } | ComplexSpec::TopQuotient { m, .. } if m > 1 => {
                Some((2, m as u8))
            }
            _ => None,
        }
    }

    /// True when the boundary is obtained by projecting away tuples.
    pub fn is_quotient(&self) -> bool {
        self.required().is_some() || matches!(self, ComplexSpec::TopQuotient { .. } | ComplexSpec::KunnethQuotient { .. })
    }

    pub fn classify(&self, t: &[u8]) -> Membership {
        let alpha = self.alphabet() as u8;
        if t.iter().any(|&a| a == 0 || a > alpha) {
            return Membership::Outside;
        }
        if let Some((lo, hi)) = self.required() {
            let mut seen = 0u64;
            for &a in t {
                if a >= lo {
                    seen |= 1 << (a - lo);
                }
            }
            if seen.count_ones() as u8 != hi - lo + 1 {
                return Membership::Dropped;
            }
        }
        match *self {
            ComplexSpec::TopCapped { m, cap } => {
                if t.iter().filter(|&&a| a as usize == m).count() > cap {
                    return Membership::Outside;
                }
            }
            ComplexSpec::TopQuotient { m, cap } => {
                if t.iter().filter(|&&a| a as usize == m).count() <= cap {
                    return Membership::Dropped;
                }
            }
            ComplexSpec::Kunneth { split, .. } => {
                if !is_split_tuple(t, split as u8) {
                    return Membership::Outside;
                }
            }
            ComplexSpec::KunnethQuotient { split, .. } => {
                if is_split_tuple(t, split as u8) {
                    return Membership::Dropped;
                }
            }
            _ => {}
        }
        Membership::In
    }

    pub fn contains(&self, t: &[u8]) -> bool {
        self.classify(t) == Membership::In
    }

    /// Canonical key used for cache directories, e.g. `m4u3l1` for `Final(4)`.
    pub fn key(&self) -> String {
        match *self {
            ComplexSpec::Full { m } => format!("m{m}u0l{m}"),
            ComplexSpec::UseTop { m, u, l } => format!("m{m}u{u}l{l}"),
            ComplexSpec::Final { m } => format!("m{m}u{}l1", m - 1),
            ComplexSpec::TopCapped { m, cap } => format!("m{m}u{}l1cap{cap}", m - 1),
            ComplexSpec::TopQuotient { m, cap } => format!("m{m}u{}l1over{cap}", m - 1),
            ComplexSpec::Kunneth { m, split } => format!("m{m}k{split}"),
            ComplexSpec::KunnethQuotient { m, split } => format!("m{m}k{split}quot"),
        }
    }

    /// `UseTop` and `Final` describing the same complex share one form.
    pub fn canonical(&self) -> ComplexSpec {
        match *self {
            ComplexSpec::UseTop { m, u, l } if u + 1 == m && l == 1 => ComplexSpec::Final { m },
            ComplexSpec::UseTop { m, u: 0, l } if l == m => ComplexSpec::Full { m },
            s => s,
        }
    }
}

impl fmt::Display for ComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ComplexSpec::Full { m } => write!(f, "full:m={m}"),
            ComplexSpec::UseTop { m, u, l } => write!(f, "usetop:m={m},u={u},l={l}"),
            ComplexSpec::Final { m } => write!(f, "final:m={m}"),
            ComplexSpec::TopCapped { m, cap } => write!(f, "capped:m={m},cap={cap}"),
            ComplexSpec::TopQuotient { m, cap } => write!(f, "capquot:m={m},cap={cap}"),
            ComplexSpec::Kunneth { m, split } => write!(f, "kunneth:m={m},split={split}"),
            ComplexSpec::KunnethQuotient { m, split } => write!(f, "kunnethquot:m={m},split={split}"),
        }
    }
}

/// A prefix of letters above `split` followed by letters at most `split`.
fn is_split_tuple(t: &[u8], split: u8) -> bool {
    let first_low = t.iter().position(|&a| a <= split).unwrap_or(t.len());
    t[first_low..].iter().all(|&a| a <= split)
}

/// All `n`-tuples of the spec, in lexicographic order.
pub fn enumerate_basis(spec: &ComplexSpec, n: usize) -> Vec<BasisTuple> {
    enumerate_raw(spec, n).into_iter().map(|t| BasisTuple::from_indices(&t)).collect()
}

pub(crate) fn enumerate_raw(spec: &ComplexSpec, n: usize) -> Vec<Vec<u8>> {
    let alpha = spec.alphabet() as u8;
    let mut out = Vec::new();
    if alpha == 0 {
        return out;
    }
    let mut cur = vec![1u8; n];
    loop {
        if spec.contains(&cur) {
            out.push(cur.clone());
        }
        // odometer, last position fastest
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < alpha {
                cur[k] += 1;
                break;
            }
            cur[k] = 1;
        }
    }
}

type Leaves = Arc<Vec<(Vec<u8>, Weight)>>;

/// Memoized evaluator for the left and right sliding recursions.
#[derive(Default)]
pub struct FaceMaps {
    left: HashMap<Vec<u8>, Leaves>,
    right: HashMap<Vec<u8>, Leaves>,
}

impl FaceMaps {
    pub fn new() -> Self {
        Self::default()
    }

    /// Slides the last letter of `prefix` to the left wall:
    /// `L(a_1..a_i) = Σ R^{a_{i-1} a_i}_{cd} L(a_1..a_{i-2}, c) ⊗ d`.
    pub fn left_slide(&mut self, prefix: &[u8]) -> Leaves {
        if let Some(v) = self.left.get(prefix) {
            return v.clone();
        }
        let k = prefix.len();
        let out = if k <= 1 {
            vec![(Vec::new(), Weight::ONE)]
        } else {
            let (terms, cnt) = apply_r_raw(prefix[k - 2], prefix[k - 1]);
            let mut out = Vec::new();
            let mut head = prefix[..k - 1].to_vec();
            for term in &terms[..cnt] {
                head[k - 2] = term.left;
                for (tup, w) in self.left_slide(&head).iter() {
                    let mut t = Vec::with_capacity(k - 1);
                    t.extend_from_slice(tup);
                    t.push(term.right);
                    out.push((t, w.times(term.weight)));
                }
            }
            out
        };
        let out = Arc::new(out);
        self.left.insert(prefix.to_vec(), out.clone());
        out
    }

    /// Slides the first letter of `suffix` to the right wall:
    /// `Rs(a_i..a_n) = Σ R^{a_i a_{i+1}}_{cd} c ⊗ Rs(d, a_{i+2}..a_n)`.
    pub fn right_slide(&mut self, suffix: &[u8]) -> Leaves {
        if let Some(v) = self.right.get(suffix) {
            return v.clone();
        }
        let k = suffix.len();
        let out = if k <= 1 {
            vec![(Vec::new(), Weight::ONE)]
        } else {
            let (terms, cnt) = apply_r_raw(suffix[0], suffix[1]);
            let mut out = Vec::new();
            let mut tail = suffix[1..].to_vec();
            for term in &terms[..cnt] {
                tail[0] = term.right;
                for (tup, w) in self.right_slide(&tail).iter() {
                    let mut t = Vec::with_capacity(k - 1);
                    t.push(term.left);
                    t.extend_from_slice(tup);
                    out.push((t, w.times(term.weight)));
                }
            }
            out
        };
        let out = Arc::new(out);
        self.right.insert(suffix.to_vec(), out.clone());
        out
    }

    /// Leaves of `d_i^l(x)`; `i` is 1-based.
    pub fn left_leaves(&mut self, i: usize, x: &[u8]) -> Vec<(Vec<u8>, Weight)> {
        let rest = &x[i..];
        self.left_slide(&x[..i])
            .iter()
            .map(|(t, w)| {
                let mut v = t.clone();
                v.extend_from_slice(rest);
                (v, *w)
            })
            .collect()
    }

    /// Leaves of `d_i^r(x)`; `i` is 1-based.
    pub fn right_leaves(&mut self, i: usize, x: &[u8]) -> Vec<(Vec<u8>, Weight)> {
        let head = &x[..i - 1];
        self.right_slide(&x[i - 1..])
            .iter()
            .map(|(t, w)| {
                let mut v = head.to_vec();
                v.extend_from_slice(t);
                (v, *w)
            })
            .collect()
    }
}

/// Caches `Weight -> IntPoly` conversions.
#[derive(Default)]
pub(crate) struct WeightPolys(HashMap<Weight, IntPoly>);

impl WeightPolys {
    pub(crate) fn get(&mut self, w: Weight) -> &IntPoly {
        self.0.entry(w).or_insert_with(|| w.to_poly())
    }
}

/// A finite linear combination of basis tuples with ℤ[t] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainVector {
    pub entries: BTreeMap<BasisTuple, IntPoly>,
}

impl ChainVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, t: BasisTuple, c: &IntPoly) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ChainVector, c: &IntPoly) {
        for (t, v) in &other.entries {
            self.add_term(t.clone(), &(v * c));
        }
    }

    pub fn from_leaves(leaves: &[(Vec<u8>, Weight)]) -> Self {
        let mut out = ChainVector::new();
        let mut polys = WeightPolys::default();
        for (t, w) in leaves {
            out.add_term(BasisTuple::from_indices(t), polys.get(*w));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, t: &BasisTuple) -> IntPoly {
        self.entries.get(t).cloned().unwrap_or_default()
    }

    /// Drops tuples that are zero in the spec's quotient. Fails if a tuple
    /// lies outside the complex entirely.
    pub fn project(&self, spec: &ComplexSpec) -> Result<ChainVector, ComplexError> {
        let mut out = ChainVector::new();
        for (t, v) in &self.entries {
            match spec.classify(&t.indices()) {
                Membership::In => {
                    out.entries.insert(t.clone(), v.clone());
                }
                Membership::Dropped => {}
                Membership::Outside => {
                    return Err(ComplexError::NotClosed {
                        spec: spec.to_string(),
                        tuple: String::new(),
                        image: t.to_string(),
                    })
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{v}]{t}")?;
        }
        Ok(())
    }
}

fn check_face(i: usize, n: usize) -> Result<(), ComplexError> {
    if i == 0 || i > n {
        Err(ComplexError::FaceIndex { i, n })
    } else {
        Ok(())
    }
}

/// `d_i^l(x)` in the full complex.
pub fn face_left(i: usize, x: &BasisTuple) -> Result<ChainVector, ComplexError> {
    check_face(i, x.len())?;
    Ok(ChainVector::from_leaves(&FaceMaps::new().left_leaves(i, &x.indices())))
}

/// `d_i^r(x)` in the full complex.
pub fn face_right(i: usize, x: &BasisTuple) -> Result<ChainVector, ComplexError> {
    check_face(i, x.len())?;
    Ok(ChainVector::from_leaves(&FaceMaps::new().right_leaves(i, &x.indices())))
}

/// Which face map family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Applies a face map to a chain vector (full complex, no projection).
pub fn apply_face(maps: &mut FaceMaps, side: Side, i: usize, v: &ChainVector) -> ChainVector {
    let mut out = ChainVector::new();
    let mut polys = WeightPolys::default();
    for (t, c) in &v.entries {
        let x = t.indices();
        let leaves = match side {
            Side::Left => maps.left_leaves(i, &x),
            Side::Right => maps.right_leaves(i, &x),
        };
        for (tup, w) in leaves {
            out.add_term(BasisTuple::from_indices(&tup), &(polys.get(w) * c));
        }
    }
    out
}

/// `∂_n(x) = Σ_i (-1)^i (d_i^l(x) - d_i^r(x))` in the full complex.
pub fn boundary_of(maps: &mut FaceMaps, x: &[u8]) -> ChainVector {
    let mut acc: HashMap<Vec<u8>, IntPoly> = HashMap::new();
    accumulate_boundary(maps, x, &mut acc, &mut WeightPolys::default());
    let mut out = ChainVector::new();
    for (t, v) in acc {
        if !v.is_zero() {
            out.entries.insert(BasisTuple::from_indices(&t), v);
        }
    }
    out
}

fn accumulate_boundary(maps: &mut FaceMaps, x: &[u8], acc: &mut HashMap<Vec<u8>, IntPoly>, polys: &mut WeightPolys) {
    let n = x.len();
    for i in 1..=n {
        let odd = i % 2 == 1;
        for (side, sign_neg) in [(Side::Left, odd), (Side::Right, !odd)] {
            let leaves = match side {
                Side::Left => maps.left_leaves(i, x),
                Side::Right => maps.right_leaves(i, x),
            };
            for (t, w) in leaves {
                let p = polys.get(w);
                let e = acc.entry(t).or_insert_with(IntPoly::zero);
                if sign_neg {
                    *e -= p;
                } else {
                    *e += p;
                }
            }
        }
    }
}

/// A boundary map in matrix form with its row and column bases.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePolyMatrix {
    pub matrix: SparseMatrix<IntPoly>,
    pub row_basis: Vec<BasisTuple>,
    pub col_basis: Vec<BasisTuple>,
}

impl SparsePolyMatrix {
    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }
}

/// Matrix of `∂_n` from the spec's `n`-basis to its `(n-1)`-basis, relations
/// in columns. Quotient specs discard tuples that vanish in the quotient.
pub fn boundary(spec: &ComplexSpec, n: usize) -> Result<SparsePolyMatrix, ComplexError> {
    spec.validate()?;
    assert!(n >= 1, "boundary needs n >= 1");
    let cols_raw = enumerate_raw(spec, n);
    let rows_raw = enumerate_raw(spec, n - 1);
    let row_index: HashMap<&[u8], usize> = rows_raw.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();

    let columns: Result<Vec<Vec<(usize, IntPoly)>>, ComplexError> = cols_raw
        .par_iter()
        .map_init(
            || (FaceMaps::new(), WeightPolys::default()),
            |(maps, polys), x| {
                let mut acc = HashMap::new();
                accumulate_boundary(maps, x, &mut acc, polys);
                let mut col = Vec::with_capacity(acc.len());
                for (t, v) in acc {
                    if v.is_zero() {
                        continue;
                    }
                    match row_index.get(t.as_slice()) {
                        Some(&r) => col.push((r, v)),
                        None => {
                            if spec.classify(&t) != Membership::Dropped {
                                return Err(ComplexError::NotClosed {
                                    spec: spec.to_string(),
                                    tuple: BasisTuple::from_indices(x).to_string(),
                                    image: BasisTuple::from_indices(&t).to_string(),
                                });
                            }
                        }
                    }
                }
                Ok(col)
            },
        )
        .collect();

    let matrix = SparseMatrix::from_columns(rows_raw.len(), columns?);
    Ok(SparsePolyMatrix {
        matrix,
        row_basis: rows_raw.iter().map(|t| BasisTuple::from_indices(t)).collect(),
        col_basis: cols_raw.iter().map(|t| BasisTuple::from_indices(t)).collect(),
    })
}

/// Checks `d_i^ε d_j^δ = d_{j-1}^δ d_i^ε` for all `i < j` and both sides, on
/// every basis tuple of the spec in degree `n`.
pub fn verify_precubic(spec: &ComplexSpec, n: usize) -> bool {
    assert!(n >= 2);
    let sides = [Side::Left, Side::Right];
    enumerate_raw(spec, n).par_iter().all(|x| {
        let mut maps = FaceMaps::new();
        let mut base = ChainVector::new();
        base.add_term(BasisTuple::from_indices(x), &IntPoly::one());
        for j in 2..=n {
            for i in 1..j {
                for &eps in &sides {
                    for &delta in &sides {
                        let inner = apply_face(&mut maps, delta, j, &base);
                        let lhs = apply_face(&mut maps, eps, i, &inner);
                        let inner = apply_face(&mut maps, eps, i, &base);
                        let rhs = apply_face(&mut maps, delta, j - 1, &inner);
                        match (lhs.project(spec), rhs.project(spec)) {
                            (Ok(a), Ok(b)) if a == b => {}
                            _ => return false,
                        }
                    }
                }
            }
        }
        true
    })
}

/// Checks `∂_{n-1} ∂_n = 0` symbolically.
pub fn verify_boundary_squared(spec: &ComplexSpec, n: usize) -> Result<bool, ComplexError> {
    assert!(n >= 2);
    let outer = boundary(spec, n - 1)?;
    let inner = boundary(spec, n)?;
    Ok(outer.matrix.mul(&inner.matrix).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bt(ix: &[u8]) -> BasisTuple {
        BasisTuple::from_indices(ix)
    }

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn final_three_bases() {
        let s = ComplexSpec::Final { m: 3 };
        assert_eq!(enumerate_basis(&s, 2), vec![bt(&[2, 3]), bt(&[3, 2])]);
        let b3 = enumerate_basis(&s, 3);
        let expected: Vec<BasisTuple> = [
            [1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 2, 3], [2, 3, 1], [2, 3, 2],
            [2, 3, 3], [3, 1, 2], [3, 2, 1], [3, 2, 2], [3, 2, 3], [3, 3, 2],
        ]
        .iter()
        .map(|t| bt(t))
        .collect();
        assert_eq!(b3, expected);
        let b4 = enumerate_basis(&s, 4);
        assert_eq!(b4.len(), 50);
        assert_eq!(b4[0], bt(&[1, 1, 2, 3]));
        assert_eq!(b4[49], bt(&[3, 3, 3, 2]));
    }

    #[test]
    fn full_basis_size() {
        for m in 1..=4usize {
            for n in 0..=4u32 {
                assert_eq!(enumerate_basis(&ComplexSpec::Full { m }, n as usize).len(), m.pow(n));
            }
        }
    }

    #[test]
    fn wall_deletions() {
        let x = bt(&[3, 1, 2, 2]);
        let d1 = face_left(1, &x).unwrap();
        assert_eq!(d1.entries.len(), 1);
        assert_eq!(d1.get(&bt(&[1, 2, 2])), IntPoly::one());
        let dn = face_right(4, &x).unwrap();
        assert_eq!(dn.get(&bt(&[3, 1, 2])), IntPoly::one());
        assert_eq!(dn.entries.len(), 1);
        assert!(face_left(0, &x).is_err());
        assert!(face_right(5, &x).is_err());
    }

    #[test]
    fn two_letter_faces() {
        let d = face_left(2, &bt(&[1, 2])).unwrap();
        assert_eq!(d.get(&bt(&[2])), p(&[1, -1]));
        assert_eq!(d.get(&bt(&[1])), p(&[0, 1]));
        let d = face_right(1, &bt(&[1, 2])).unwrap();
        assert_eq!(d.get(&bt(&[1])), p(&[1, -1]));
        assert_eq!(d.get(&bt(&[2])), p(&[0, 1]));
    }

    #[test]
    fn first_column_of_final_three() {
        let b = boundary(&ComplexSpec::Final { m: 3 }, 3).unwrap();
        assert_eq!(b.row_basis, vec![bt(&[2, 3]), bt(&[3, 2])]);
        // (1,2,3) -> -(1 - t)(2,3) - t(1 - t)(3,2) under this sign convention
        assert_eq!(b.matrix.get(0, 0), p(&[-1, 1]));
        assert_eq!(b.matrix.get(1, 0), p(&[0, -1, 1]));
    }

    #[test]
    fn boundary_in_degree_one_vanishes() {
        for m in 1..=4 {
            assert!(boundary(&ComplexSpec::Full { m }, 1).unwrap().matrix.is_zero());
        }
    }

    #[test]
    fn kunneth_membership() {
        let s = ComplexSpec::Kunneth { m: 3, split: 1 };
        assert!(s.contains(&[3, 2, 1, 1]));
        assert!(s.contains(&[1, 1]));
        assert!(s.contains(&[2, 3]));
        assert!(!s.contains(&[1, 2]));
        assert!(s.contains(&[]));
    }

    #[test]
    fn spec_validation() {
        assert!(ComplexSpec::UseTop { m: 3, u: 2, l: 2 }.validate().is_err());
        assert!(ComplexSpec::Kunneth { m: 3, split: 3 }.validate().is_err());
        assert!(ComplexSpec::UseTop { m: 1, u: 1, l: 0 }.validate().is_ok());
        assert_eq!(ComplexSpec::UseTop { m: 4, u: 3, l: 1 }.canonical(), ComplexSpec::Final { m: 4 });
        assert_eq!(ComplexSpec::Final { m: 4 }.key(), "m4u3l1");
    }

    #[test]
    fn empty_basis_gives_empty_matrix() {
        let b = boundary(&ComplexSpec::Final { m: 5 }, 3).unwrap();
        assert_eq!(b.matrix.shape(), (0, 0));
        let b = boundary(&ComplexSpec::Final { m: 4 }, 3).unwrap();
        assert_eq!(b.matrix.shape(), (0, 6));
    }
}
