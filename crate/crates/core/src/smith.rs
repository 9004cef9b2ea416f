//! Smith normal form over ℤ and over ℚ[t], with transform logs and a
//! certification pass for ℤ[t].
//!
//! Elimination runs in two phases. A sparse phase pivots on entries equal
//! to ±1 in Markowitz order, which keeps every multiplier integral and
//! removes most of the matrix cheaply. The remaining block is reduced by a
//! dense Euclidean elimination. Every elementary operation is logged, so
//! `P`, `Q` and their inverses can be rebuilt and `P A Q = D` can be
//! checked by replaying the log on `A`.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::{Scalar, SparseMatrix};
use crate::ring::{IntPoly, RatPoly};

/// Operations an entry type needs for Euclidean elimination.
pub trait Euclidean: Scalar {
    /// Pivot preference; `Less` means a better pivot.
    fn cmp_size(&self, other: &Self) -> Ordering;
    fn is_pm_one(&self) -> bool;
    fn div_rem_e(&self, d: &Self) -> (Self, Self);
    /// `(g, s, u)` with `g = s*self + u*b`.
    fn xgcd(&self, b: &Self) -> (Self, Self, Self);
    fn divides(&self, b: &Self) -> bool;
    fn div_exact_e(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem_e(d);
        debug_assert!(r.is_zero());
        q
    }
    /// True if the canonical associate is `-self`.
    fn needs_negation(&self) -> bool;
    /// Inverse of a unit.
    fn unit_inverse(&self) -> Self;
    /// Membership in the integral subring (ℤ or ℤ[t]).
    fn is_integral(&self) -> bool {
        true
    }
}

impl Euclidean for BigInt {
    fn cmp_size(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }

    fn is_pm_one(&self) -> bool {
        self.magnitude().is_one()
    }

    /// Division with the remainder of least absolute value.
    fn div_rem_e(&self, d: &Self) -> (Self, Self) {
        let (mut q, mut r) = Integer::div_rem(self, d);
        if (&r + &r).magnitude() > d.magnitude() {
            if r.is_negative() == d.is_negative() {
                q += 1;
                r -= d;
            } else {
                q -= 1;
                r += d;
            }
        }
        (q, r)
    }

    fn xgcd(&self, b: &Self) -> (Self, Self, Self) {
        let e = self.extended_gcd(b);
        (e.gcd, e.x, e.y)
    }

    fn divides(&self, b: &Self) -> bool {
        if Zero::is_zero(self) {
            return Zero::is_zero(b);
        }
        Zero::is_zero(&(b % self))
    }

    fn needs_negation(&self) -> bool {
        self.is_negative()
    }

    fn unit_inverse(&self) -> Self {
        assert!(self.is_pm_one(), "not a unit of ℤ");
        self.clone()
    }
}

fn rat_height(p: &RatPoly) -> BigInt {
    p.coeffs().iter().map(|c| c.numer().abs().max(c.denom().clone())).max().unwrap_or_default()
}

impl Euclidean for RatPoly {
    /// Lower degree first; then integral polynomials with a ±1 leading
    /// coefficient, whose remainders stay in ℤ[t]; then smaller height.
    fn cmp_size(&self, other: &Self) -> Ordering {
        let key = |p: &RatPoly| {
            let lc_unit = p.leading().is_some_and(|c| c.is_integer() && c.numer().magnitude().is_one());
            (p.degree(), !(p.is_integral() && lc_unit))
        };
        key(self).cmp(&key(other)).then_with(|| rat_height(self).cmp(&rat_height(other)))
    }

    fn is_pm_one(&self) -> bool {
        self.is_integral_unit()
    }

    fn div_rem_e(&self, d: &Self) -> (Self, Self) {
        self.div_rem(d).expect("division by zero polynomial")
    }

    fn xgcd(&self, b: &Self) -> (Self, Self, Self) {
        // extended Euclid over ℚ[t]
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut u0, mut u1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem_e(&r1);
            let s2 = &s0 - &(&q * &s1);
            let u2 = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        (r0, s0, u0)
    }

    fn divides(&self, b: &Self) -> bool {
        if self.is_zero() {
            return b.is_zero();
        }
        b.div_rem_e(self).1.is_zero()
    }

    fn needs_negation(&self) -> bool {
        self.coeffs().iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative())
    }

    fn unit_inverse(&self) -> Self {
        assert!(self.is_unit(), "not a unit of ℚ[t]");
        RatPoly::constant(self.coeffs()[0].recip())
    }

    fn is_integral(&self) -> bool {
        RatPoly::is_integral(self)
    }
}

/// An elementary operation. Row operations act on the left, column
/// operations on the right.
#[derive(Clone, Debug, PartialEq)]
pub enum Op<R> {
    RowSwap(usize, usize),
    ColSwap(usize, usize),
    /// `row_target += c * row_source`
    RowAdd { target: usize, source: usize, c: R },
    /// `col_target += c * col_source`
    ColAdd { target: usize, source: usize, c: R },
    RowScale(usize, R),
    ColScale(usize, R),
    /// `(row_i, row_j) <- (m0 row_i + m1 row_j, m2 row_i + m3 row_j)`
    Row2 { i: usize, j: usize, m: [R; 4] },
    /// `(col_i, col_j) <- (m0 col_i + m1 col_j, m2 col_i + m3 col_j)`
    Col2 { i: usize, j: usize, m: [R; 4] },
}

impl<R: Euclidean> Op<R> {
    pub fn is_row(&self) -> bool {
        matches!(self, Op::RowSwap(..) | Op::RowAdd { .. } | Op::RowScale(..) | Op::Row2 { .. })
    }

    /// Whether the elementary matrix lies in `GL(ℤ[t])` (or `GL(ℤ)`).
    fn is_integral_unimodular(&self) -> bool {
        match self {
            Op::RowSwap(..) | Op::ColSwap(..) => true,
            Op::RowAdd { c, .. } | Op::ColAdd { c, .. } => c.is_integral(),
            Op::RowScale(_, u) | Op::ColScale(_, u) => u.is_pm_one(),
            Op::Row2 { m, .. } | Op::Col2 { m, .. } => {
                m.iter().all(|x| x.is_integral()) && m[0].mul(&m[3]).sub(&m[1].mul(&m[2])).is_pm_one()
            }
        }
    }
}

/// Dense row-major work matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<R> {
    pub rows: Vec<Vec<R>>,
    pub ncols: usize,
}

impl<R: Euclidean> Dense<R> {
    pub fn from_sparse(a: &SparseMatrix<R>) -> Self {
        Dense { rows: a.to_dense(), ncols: a.ncols() }
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![R::zero(); n]; n];
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] = R::one();
        }
        Dense { rows, ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    fn row_add(&mut self, target: usize, source: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        let src = std::mem::take(&mut self.rows[source]);
        let dst = &mut self.rows[target];
        for (k, v) in src.iter().enumerate() {
            if !v.is_zero() {
                dst[k] = dst[k].add(&c.mul(v));
            }
        }
        self.rows[source] = src;
    }

    fn col_add(&mut self, target: usize, source: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for row in &mut self.rows {
            if !row[source].is_zero() {
                row[target] = row[target].add(&c.mul(&row[source]));
            }
        }
    }

    pub fn apply(&mut self, op: &Op<R>) {
        match op {
            Op::RowSwap(i, j) => self.rows.swap(*i, *j),
            Op::ColSwap(i, j) => {
                for row in &mut self.rows {
                    row.swap(*i, *j);
                }
            }
            Op::RowAdd { target, source, c } => self.row_add(*target, *source, c),
            Op::ColAdd { target, source, c } => self.col_add(*target, *source, c),
            Op::RowScale(i, u) => {
                for v in &mut self.rows[*i] {
                    *v = v.mul(u);
                }
            }
            Op::ColScale(j, u) => {
                for row in &mut self.rows {
                    row[*j] = row[*j].mul(u);
                }
            }
            Op::Row2 { i, j, m } => {
                for k in 0..self.ncols {
                    let (a, b) = (self.rows[*i][k].clone(), self.rows[*j][k].clone());
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    self.rows[*i][k] = m[0].mul(&a).add(&m[1].mul(&b));
                    self.rows[*j][k] = m[2].mul(&a).add(&m[3].mul(&b));
                }
            }
            Op::Col2 { i, j, m } => {
                for row in &mut self.rows {
                    let (a, b) = (row[*i].clone(), row[*j].clone());
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    row[*i] = m[0].mul(&a).add(&m[1].mul(&b));
                    row[*j] = m[2].mul(&a).add(&m[3].mul(&b));
                }
            }
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix<R> {
        if self.rows.is_empty() {
            return SparseMatrix::zeros(0, self.ncols);
        }
        SparseMatrix::from_dense(&self.rows)
    }
}

/// Which ring the decomposition was computed over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    /// ℤ, after specializing `t` to the given integer.
    IntegerAt { t: i64 },
    /// ℤ with no specialization involved.
    Integer,
    /// ℚ[t].
    RationalPoly,
}

impl Domain {
    pub fn tag(&self) -> String {
        match self {
            Domain::IntegerAt { t } => format!("zt{t}"),
            Domain::Integer => "z".into(),
            Domain::RationalPoly => "qt".into(),
        }
    }
}

/// `P A Q = D` with `P`, `Q` recorded as an operation log.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<R> {
    pub nrows: usize,
    pub ncols: usize,
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, normalized.
    pub diagonal: Vec<R>,
    pub rank: usize,
    pub domain: Domain,
    pub ops: Vec<Op<R>>,
    /// `P A Q = D` confirmed by replaying the log on `A`.
    pub residual_ok: bool,
    pub certified_over_zt: bool,
}

impl<R: Euclidean> SmithDecomposition<R> {
    /// `D` as a sparse matrix.
    pub fn d(&self) -> SparseMatrix<R> {
        let cols = (0..self.ncols)
            .map(|j| if j < self.rank { vec![(j, self.diagonal[j].clone())] } else { Vec::new() })
            .collect();
        SparseMatrix::from_columns(self.nrows, cols)
    }

    /// Elementary divisors other than ±1.
    pub fn torsion(&self) -> Vec<R> {
        self.diagonal.iter().filter(|d| !d.is_pm_one()).cloned().collect()
    }

    pub fn p(&self) -> SparseMatrix<R> {
        let mut m = Dense::identity(self.nrows);
        for op in self.ops.iter().filter(|o| o.is_row()) {
            m.apply(op);
        }
        m.to_sparse()
    }

    pub fn q(&self) -> SparseMatrix<R> {
        let mut m = Dense::identity(self.ncols);
        for op in self.ops.iter().filter(|o| !o.is_row()) {
            m.apply(op);
        }
        m.to_sparse()
    }

    /// `P^{-1}`, built by applying the inverse operations on the right.
    pub fn p_inv(&self) -> SparseMatrix<R> {
        let mut m = Dense::identity(self.nrows);
        for op in self.ops.iter().filter(|o| o.is_row()) {
            let inv = match op {
                Op::RowSwap(i, j) => Op::ColSwap(*i, *j),
                Op::RowAdd { target, source, c } => Op::ColAdd { target: *source, source: *target, c: c.neg() },
                Op::RowScale(i, u) => Op::ColScale(*i, u.unit_inverse()),
                Op::Row2 { i, j, m: mm } => Op::Col2 { i: *i, j: *j, m: inverse_2x2_transposed(mm) },
                _ => unreachable!(),
            };
            m.apply(&inv);
        }
        m.to_sparse()
    }

    /// `Q^{-1}`, built by applying the inverse operations on the left.
    pub fn q_inv(&self) -> SparseMatrix<R> {
        let mut m = Dense::identity(self.ncols);
        for op in self.ops.iter().filter(|o| !o.is_row()) {
            let inv = match op {
                Op::ColSwap(i, j) => Op::RowSwap(*i, *j),
                Op::ColAdd { target, source, c } => Op::RowAdd { target: *source, source: *target, c: c.neg() },
                Op::ColScale(i, u) => Op::RowScale(*i, u.unit_inverse()),
                Op::Col2 { i, j, m: mm } => Op::Row2 { i: *i, j: *j, m: inverse_2x2_transposed(mm) },
                _ => unreachable!(),
            };
            m.apply(&inv);
        }
        m.to_sparse()
    }

    /// Replays the log on `a` and compares with `D`.
    pub fn verify_residual(&self, a: &SparseMatrix<R>) -> bool {
        let mut w = Dense::from_sparse(a);
        for op in &self.ops {
            w.apply(op);
        }
        w.to_sparse() == self.d()
    }

    /// Whether the divisibility chain holds along the diagonal.
    pub fn is_chain(&self) -> bool {
        self.diagonal.windows(2).all(|w| w[0].divides(&w[1]))
    }
}

/// For a 2x2 block `M` acting on rows, the block `N` such that the column
/// operation `Col2 { m: N }` is multiplication on the right by `M^{-1}`.
fn inverse_2x2_transposed<R: Euclidean>(m: &[R; 4]) -> [R; 4] {
    let det = m[0].mul(&m[3]).sub(&m[1].mul(&m[2]));
    let di = det.unit_inverse();
    // M^{-1} = di * [[m3, -m1], [-m2, m0]]; new col_i = col_i*N00 + col_j*N10
    let n00 = m[3].mul(&di);
    let n01 = m[1].neg().mul(&di);
    let n10 = m[2].neg().mul(&di);
    let n11 = m[0].mul(&di);
    [n00, n10, n01, n11]
}

/// Sparse row/column incidence structure for the unit-pivot phase.
struct SparseWork<R> {
    rows: Vec<HashMap<usize, R>>,
    cols: Vec<HashSet<usize>>,
}

impl<R: Euclidean> SparseWork<R> {
    fn new(a: &SparseMatrix<R>) -> Self {
        let mut rows = vec![HashMap::new(); a.nrows()];
        let mut cols = vec![HashSet::new(); a.ncols()];
        for (i, j, v) in a.iter() {
            rows[i].insert(j, v.clone());
            cols[j].insert(i);
        }
        SparseWork { rows, cols }
    }

    fn row_add(&mut self, target: usize, source: usize, c: &R) {
        let src = std::mem::take(&mut self.rows[source]);
        for (&j, v) in &src {
            let dst = &mut self.rows[target];
            let new = match dst.get(&j) {
                Some(old) => old.add(&c.mul(v)),
                None => c.mul(v),
            };
            if new.is_zero() {
                dst.remove(&j);
                self.cols[j].remove(&target);
            } else {
                dst.insert(j, new);
                self.cols[j].insert(target);
            }
        }
        self.rows[source] = src;
    }

    /// Cheapest ±1 entry by Markowitz cost among active rows.
    fn unit_pivot(&self, active_rows: &[usize]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for &i in active_rows {
            let rl = self.rows[i].len();
            if rl == 0 {
                continue;
            }
            for (&j, v) in &self.rows[i] {
                if !v.is_pm_one() {
                    continue;
                }
                let cost = (rl - 1) * (self.cols[j].len() - 1);
                let better = match best {
                    None => true,
                    Some((bc, bi, bj)) => (cost, i, j) < (bc, bi, bj),
                };
                if better {
                    best = Some((cost, i, j));
                }
            }
            if best.is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

struct Engine<R> {
    ops: Vec<Op<R>>,
    /// `(row, col, value)` of each pivot in original indices.
    pivots: Vec<(usize, usize, R)>,
}

impl<R: Euclidean> Engine<R> {
    fn sparse_phase(&mut self, work: &mut SparseWork<R>, active_rows: &mut Vec<usize>) {
        loop {
            let Some((i, j)) = work.unit_pivot(active_rows) else { break };
            let p = work.rows[i][&j].clone();
            // p is ±1, so p^{-1} = p
            let others: Vec<usize> = work.cols[j].iter().copied().filter(|&k| k != i).collect();
            for k in others {
                let c = work.rows[k][&j].mul(&p).neg();
                work.row_add(k, i, &c);
                self.ops.push(Op::RowAdd { target: k, source: i, c });
            }
            let row = std::mem::take(&mut work.rows[i]);
            for (&l, v) in &row {
                work.cols[l].remove(&i);
                if l != j {
                    self.ops.push(Op::ColAdd { target: l, source: j, c: v.mul(&p).neg() });
                }
            }
            work.cols[j].clear();
            active_rows.retain(|&r| r != i);
            self.pivots.push((i, j, p));
        }
    }

    fn dense_phase(&mut self, mut m: Vec<Vec<R>>, row_ids: Vec<usize>, col_ids: Vec<usize>) {
        let nr = row_ids.len();
        let nc = col_ids.len();
        let mut row_active = vec![true; nr];
        let mut col_active = vec![true; nc];
        let mut live_cols: Vec<usize> = (0..nc).collect();

        loop {
            // global minimal pivot
            let mut best: Option<(usize, usize)> = None;
            for i in (0..nr).filter(|&i| row_active[i]) {
                for &j in &live_cols {
                    let v = &m[i][j];
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.cmp_size(&m[bi][bj]) == Ordering::Less) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((mut pi, mut pj)) = best else { break };

            loop {
                // clear column pj with row operations
                let mut best_rem: Option<usize> = None;
                for k in 0..nr {
                    if k == pi || !row_active[k] || m[k][pj].is_zero() {
                        continue;
                    }
                    let (q, r) = m[k][pj].div_rem_e(&m[pi][pj]);
                    let c = q.neg();
                    let src = std::mem::take(&mut m[pi]);
                    for &l in &live_cols {
                        if !src[l].is_zero() {
                            m[k][l] = m[k][l].add(&c.mul(&src[l]));
                        }
                    }
                    m[pi] = src;
                    debug_assert!(m[k][pj] == r);
                    self.ops.push(Op::RowAdd { target: row_ids[k], source: row_ids[pi], c });
                    if !r.is_zero() && best_rem.is_none_or(|b| r.cmp_size(&m[b][pj]) == Ordering::Less) {
                        best_rem = Some(k);
                    }
                }
                if let Some(k) = best_rem {
                    pi = k;
                    continue;
                }
                // column pj now holds only the pivot; clear row pi with column
                // operations, which touch row pi alone
                let mut best_rem: Option<usize> = None;
                for &l in &live_cols {
                    if l == pj || m[pi][l].is_zero() {
                        continue;
                    }
                    let (q, r) = m[pi][l].div_rem_e(&m[pi][pj]);
                    m[pi][l] = r.clone();
                    self.ops.push(Op::ColAdd { target: col_ids[l], source: col_ids[pj], c: q.neg() });
                    if !r.is_zero() && best_rem.is_none_or(|b| r.cmp_size(&m[pi][b]) == Ordering::Less) {
                        best_rem = Some(l);
                    }
                }
                if let Some(l) = best_rem {
                    pj = l;
                    continue;
                }
                break;
            }
            row_active[pi] = false;
            col_active[pj] = false;
            live_cols.retain(|&l| l != pj);
            self.pivots.push((row_ids[pi], col_ids[pj], m[pi][pj].clone()));
        }
    }

    /// Moves pivots onto the diagonal, fixes the divisibility chain and
    /// normalizes signs. Returns the diagonal.
    fn finish(&mut self, nrows: usize, ncols: usize) -> Vec<R> {
        let mut row_at: Vec<usize> = (0..nrows).collect();
        let mut row_pos: Vec<usize> = (0..nrows).collect();
        let mut col_at: Vec<usize> = (0..ncols).collect();
        let mut col_pos: Vec<usize> = (0..ncols).collect();
        let pivots = std::mem::take(&mut self.pivots);
        let mut diag = Vec::with_capacity(pivots.len());
        for (k, (r, c, v)) in pivots.into_iter().enumerate() {
            let pr = row_pos[r];
            if pr != k {
                self.ops.push(Op::RowSwap(k, pr));
                let other = row_at[k];
                row_at.swap(k, pr);
                row_pos[r] = k;
                row_pos[other] = pr;
            }
            let pc = col_pos[c];
            if pc != k {
                self.ops.push(Op::ColSwap(k, pc));
                let other = col_at[k];
                col_at.swap(k, pc);
                col_pos[c] = k;
                col_pos[other] = pc;
            }
            diag.push(v);
        }
        // units first keeps the chain repair short
        let rank = diag.len();
        for i in 0..rank {
            for j in (i + 1)..rank {
                if diag[i].divides(&diag[j]) {
                    continue;
                }
                let (a, b) = (diag[i].clone(), diag[j].clone());
                let (g, s, u) = a.xgcd(&b);
                let bg = b.div_exact_e(&g);
                let ag = a.div_exact_e(&g);
                // [[s, u], [-b/g, a/g]] diag(a, b) [[1, -u b/g], [1, s a/g]] = diag(g, ab/g)
                self.ops.push(Op::Row2 { i, j, m: [s.clone(), u.clone(), bg.neg(), ag.clone()] });
                self.ops.push(Op::Col2 { i, j, m: [R::one(), R::one(), u.mul(&bg).neg(), s.mul(&ag)] });
                diag[i] = g;
                diag[j] = a.mul(&bg);
            }
        }
        for (k, d) in diag.iter_mut().enumerate() {
            if d.needs_negation() {
                let u = R::one().neg();
                *d = d.mul(&u);
                self.ops.push(Op::RowScale(k, u));
            }
        }
        diag
    }
}

fn snf_generic<R: Euclidean>(a: &SparseMatrix<R>, domain: Domain) -> SmithDecomposition<R> {
    let (nrows, ncols) = a.shape();
    let mut eng = Engine { ops: Vec::new(), pivots: Vec::new() };
    let mut work = SparseWork::new(a);
    let mut active_rows: Vec<usize> = (0..nrows).filter(|&i| !work.rows[i].is_empty()).collect();
    eng.sparse_phase(&mut work, &mut active_rows);
    let n_unit = eng.pivots.len();

    let mut col_ids: Vec<usize> = (0..ncols).filter(|&j| !work.cols[j].is_empty()).collect();
    col_ids.sort_unstable();
    let row_ids: Vec<usize> = active_rows.into_iter().filter(|&i| !work.rows[i].is_empty()).collect();
    let col_local: HashMap<usize, usize> = col_ids.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let dense: Vec<Vec<R>> = row_ids
        .iter()
        .map(|&i| {
            let mut row = vec![R::zero(); col_ids.len()];
            for (j, v) in &work.rows[i] {
                row[col_local[j]] = v.clone();
            }
            row
        })
        .collect();
    log::debug!(
        "snf {}x{}: {} unit pivots, dense block {}x{}",
        nrows,
        ncols,
        n_unit,
        row_ids.len(),
        col_ids.len()
    );
    drop(work);
    eng.dense_phase(dense, row_ids, col_ids);
    let diagonal = eng.finish(nrows, ncols);
    let rank = diagonal.len();
    let mut dec = SmithDecomposition {
        nrows,
        ncols,
        diagonal,
        rank,
        domain,
        ops: eng.ops,
        residual_ok: false,
        certified_over_zt: false,
    };
    dec.residual_ok = dec.verify_residual(a);
    if !dec.residual_ok {
        log::error!("Smith normal form residual check failed for a {nrows}x{ncols} matrix");
    }
    dec
}

/// Smith normal form over ℤ.
pub fn snf_integer(a: &SparseMatrix<BigInt>) -> SmithDecomposition<BigInt> {
    let mut dec = snf_generic(a, Domain::Integer);
    dec.certified_over_zt = true;
    dec
}

/// Smith normal form over ℤ of `a` specialized at `t = c`.
pub fn snf_at(a: &SparseMatrix<IntPoly>, t: i64) -> SmithDecomposition<BigInt> {
    let mut dec = snf_integer(&a.eval(&BigInt::from(t)));
    dec.domain = Domain::IntegerAt { t };
    dec
}

/// Smith normal form over ℚ[t] of an integer-polynomial matrix. The result
/// is certified over ℤ[t] when every logged operation is integral and
/// unimodular.
pub fn snf_poly_q(a: &SparseMatrix<IntPoly>) -> SmithDecomposition<RatPoly> {
    let mut dec = snf_generic(&a.to_rat(), Domain::RationalPoly);
    dec.certified_over_zt = certify_over_zt(&dec);
    dec
}

/// Size limit for the explicit `P P^{-1} = I` cross-check.
const EXPLICIT_CHECK_LIMIT: usize = 120;

/// Checks that `P`, `Q` and `D` live over ℤ[t] with `det P, det Q = ±1`.
///
/// Each logged operation is an elementary matrix; when all of them are
/// integral with determinant ±1, so are their products. For small shapes
/// `P P^{-1} = I` and `Q Q^{-1} = I` are also multiplied out.
pub fn certify_over_zt(dec: &SmithDecomposition<RatPoly>) -> bool {
    if !dec.ops.iter().all(|op| op.is_integral_unimodular()) {
        return false;
    }
    if !dec.diagonal.iter().all(|d| d.is_integral()) {
        return false;
    }
    let check = |m: SparseMatrix<RatPoly>, inv: SparseMatrix<RatPoly>| {
        m.iter().all(|(_, _, v)| v.is_integral())
            && inv.iter().all(|(_, _, v)| v.is_integral())
            && m.mul(&inv) == SparseMatrix::identity(m.nrows())
    };
    if dec.nrows <= EXPLICIT_CHECK_LIMIT && !check(dec.p(), dec.p_inv()) {
        return false;
    }
    if dec.ncols <= EXPLICIT_CHECK_LIMIT && !check(dec.q(), dec.q_inv()) {
        return false;
    }
    true
}

/// Rank over ℚ(t) by fraction-free elimination on integer polynomials.
pub fn rank_over_qt(a: &SparseMatrix<IntPoly>) -> usize {
    let mut rows: Vec<Vec<IntPoly>> = a.to_dense();
    let ncols = a.ncols();
    let mut rank = 0;
    for col in 0..ncols {
        // prefer unit pivots, then lowest degree
        let pivot = (rank..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by(|&i, &k| {
                let key = |p: &IntPoly| (!p.is_unit(), p.degree());
                key(&rows[i][col]).cmp(&key(&rows[k][col]))
            });
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let piv = rows[rank][col].clone();
        for i in (rank + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            let (head, tail) = rows.split_at_mut(i);
            let prow = &head[rank];
            let row = &mut tail[0];
            if piv.is_unit() {
                // row -= (f / piv) * prow, exact since piv = ±1
                let c = &f * &piv;
                for k in col..ncols {
                    if !prow[k].is_zero() {
                        row[k] = &row[k] - &(&c * &prow[k]);
                    }
                }
            } else {
                for k in col..ncols {
                    row[k] = &(&row[k] * &piv) - &(&f * &prow[k]);
                }
                let g = row.iter().fold(IntPoly::zero(), |g, x| if x.is_zero() { g } else { poly_content_gcd(&g, x) });
                if !g.is_zero() && !g.is_one() {
                    for x in row.iter_mut() {
                        if !x.is_zero() {
                            *x = x.div_exact(&g).expect("content divides");
                        }
                    }
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Integer content gcd, as a constant polynomial.
fn poly_content_gcd(g: &IntPoly, x: &IntPoly) -> IntPoly {
    let c = x.content();
    if g.is_zero() {
        IntPoly::constant(c)
    } else {
        IntPoly::constant(g.coeff(0).gcd(&c))
    }
}
