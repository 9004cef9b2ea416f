//! Homology modules from Smith normal forms, the binomial assembly of
//! `H_n(C^m)` from the final complexes, and the closed forms in degrees 3
//! and 4.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{boundary, enumerate_raw, ComplexError, ComplexSpec};
use crate::matrix::SparseMatrix;
use crate::ring::IntPoly;
use crate::smith::{snf_at, snf_poly_q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("missing initial condition H_{n}(C^{{{j}f}})")]
    MissingInitial { j: usize, n: usize },
    #[error("Smith normal form of a boundary matrix has non-integral entries")]
    NonIntegral,
    #[error("Smith normal form residual P A Q - D is nonzero")]
    Residual,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Coefficients for a homology computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coefficients {
    /// ℤ[t], computed over ℚ[t] and certified when possible.
    Symbolic,
    /// ℤ with `t` specialized to an integer.
    IntegerAt { t: i64 },
}

impl Coefficients {
    pub fn at_y(y: i64) -> Self {
        Coefficients::IntegerAt { t: y * y }
    }

    pub fn tag(&self) -> String {
        match self {
            Coefficients::Symbolic => "zt".into(),
            Coefficients::IntegerAt { t } => format!("t{t}"),
        }
    }
}

/// A torsion invariant: `k/(p)` or `ℤ/(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Poly(IntPoly),
    Int(BigInt),
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Poly(p) => write!(f, "{p}"),
            Invariant::Int(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Direct,
    Assembled,
    ClosedForm,
    Specialized,
}

/// `k^free ⊕ ⊕ k/(d)^count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyModule {
    pub free_rank: usize,
    #[serde(with = "torsion_pairs")]
    pub torsion: BTreeMap<Invariant, usize>,
    pub provenance: Provenance,
    /// For symbolic results: whether the Smith form was certified over ℤ[t].
    pub certified: bool,
}

// JSON object keys must be strings, so the torsion map travels as a list.
mod torsion_pairs {
    use super::Invariant;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        invariant: Invariant,
        count: usize,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Invariant, usize>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m.iter().map(|(k, &c)| Entry { invariant: k.clone(), count: c }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Invariant, usize>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(v.into_iter().map(|e| (e.invariant, e.count)).collect())
    }
}

/// `1 - t`, `1 - t^2` and `(1 - t)(1 + t)(1 + t + t^2)`, the torsion types
/// seen so far.
pub fn standard_torsion() -> [IntPoly; 3] {
    let omt = IntPoly::one_minus_t();
    let omt2 = IntPoly::from_i64s(&[1, 0, -1]);
    let third = &omt2 * &IntPoly::from_i64s(&[1, 1, 1]);
    [omt, omt2, third]
}

impl HomologyModule {
    pub fn zero(provenance: Provenance) -> Self {
        HomologyModule { free_rank: 0, torsion: BTreeMap::new(), provenance, certified: true }
    }

    /// Builds a symbolic module from counts of the standard torsion types.
    pub fn from_counts(counts: &[usize], provenance: Provenance) -> Self {
        let std = standard_torsion();
        let mut torsion = BTreeMap::new();
        for (k, &c) in counts.iter().enumerate().skip(1) {
            if c > 0 {
                torsion.insert(Invariant::Poly(std[k - 1].clone()), c);
            }
        }
        HomologyModule { free_rank: counts[0], torsion, provenance, certified: true }
    }

    /// Builds an integer module from `(invariant, count)` pairs.
    pub fn from_int_counts(free: usize, counts: &[(i64, usize)], provenance: Provenance) -> Self {
        let torsion = counts.iter().filter(|(_, c)| *c > 0).map(|&(d, c)| (Invariant::Int(BigInt::from(d)), c)).collect();
        HomologyModule { free_rank: free, torsion, provenance, certified: true }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Counts in tuple notation `(free, #(1-t), #(1-t^2), ...)`
    /// for `len - 1` standard types, or `None` if other torsion occurs. At a
    /// specialization the types are compared after evaluation.
    pub fn counts(&self, len: usize, at: Option<i64>) -> Option<Vec<usize>> {
        let std = standard_torsion();
        let mut out = vec![0usize; len];
        out[0] = self.free_rank;
        for (inv, &c) in &self.torsion {
            let k = std.iter().take(len - 1).position(|p| match (inv, at) {
                (Invariant::Poly(q), _) => q == p,
                (Invariant::Int(v), Some(t)) => p.eval(&BigInt::from(t)).abs() == *v,
                (Invariant::Int(_), None) => false,
            })?;
            out[k + 1] += c;
        }
        Some(out)
    }

    /// `(a,b,c)` text, or the torsion listing when it does not fit.
    pub fn tuple_string(&self, len: usize, at: Option<i64>) -> String {
        match self.counts(len, at) {
            Some(c) => format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            None => self.to_string(),
        }
    }

    /// `self ⊕ self ⊕ ...` (`k` copies).
    pub fn scaled(&self, k: usize) -> HomologyModule {
        let torsion = self.torsion.iter().filter(|_| k > 0).map(|(i, &c)| (i.clone(), c * k)).collect();
        HomologyModule { free_rank: self.free_rank * k, torsion, provenance: self.provenance, certified: self.certified }
    }

    pub fn direct_sum(&self, other: &HomologyModule) -> HomologyModule {
        let mut torsion = self.torsion.clone();
        for (i, &c) in &other.torsion {
            *torsion.entry(i.clone()).or_insert(0) += c;
        }
        HomologyModule {
            free_rank: self.free_rank + other.free_rank,
            torsion,
            provenance: self.provenance,
            certified: self.certified && other.certified,
        }
    }

    /// The module over ℤ obtained by setting `t = c`: `k/(d)` becomes
    /// `ℤ/|d(c)|`, rewritten in invariant-factor form.
    pub fn specialize(&self, t: i64) -> HomologyModule {
        let tb = BigInt::from(t);
        let mut divisors = Vec::new();
        let mut free = self.free_rank;
        for (inv, &c) in &self.torsion {
            let v = match inv {
                Invariant::Poly(p) => p.eval(&tb).abs(),
                Invariant::Int(v) => v.clone(),
            };
            if v.is_zero() {
                free += c;
            } else {
                divisors.extend(std::iter::repeat_n(v, c));
            }
        }
        let mut out = HomologyModule::zero(Provenance::Specialized);
        out.free_rank = free;
        out.torsion = invariant_factors(&divisors);
        out.certified = self.certified;
        out
    }
}

/// Invariant factors of `⊕ ℤ/(d_i)`, dropping trivial ones.
pub fn invariant_factors(divisors: &[BigInt]) -> BTreeMap<Invariant, usize> {
    // ℤ/a ⊕ ℤ/b ≅ ℤ/gcd ⊕ ℤ/lcm, applied until the list is a divisor chain
    let mut d: Vec<BigInt> = divisors.iter().map(|x| x.abs()).collect();
    for i in 0..d.len() {
        for j in (i + 1)..d.len() {
            if !(&d[j] % &d[i]).is_zero() {
                let g = d[i].gcd(&d[j]);
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    let mut out = BTreeMap::new();
    for x in d.into_iter().filter(|x| !x.is_one()) {
        *out.entry(Invariant::Int(x)).or_insert(0) += 1;
    }
    out
}

impl HomologyModule {
    /// Text form with the free part written over `Z` or `k`. Display picks
    /// `Z` only when integer torsion is present.
    pub fn render(&self, integer: bool) -> String {
        let mut parts = Vec::new();
        let ring = if integer { "Z" } else { "k" };
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { ring.to_string() } else { format!("{ring}^{}", self.free_rank) });
        }
        for (inv, c) in &self.torsion {
            let term = match inv {
                Invariant::Poly(p) => format!("k/({p})"),
                Invariant::Int(v) => format!("Z_{v}"),
            };
            parts.push(if *c == 1 { term } else { format!("{c} {term}") });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for HomologyModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let integer = self.torsion.keys().any(|i| matches!(i, Invariant::Int(_)));
        write!(f, "{}", self.render(integer))
    }
}

/// Per-degree data from one boundary matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySummary {
    pub rank: usize,
    /// Non-unit elementary divisors.
    pub torsion: Vec<Invariant>,
    pub certified: bool,
}

/// Rank and elementary divisors of `∂_n` for the spec.
pub fn boundary_summary(spec: &ComplexSpec, n: usize, coeffs: Coefficients) -> Result<BoundarySummary, HomologyError> {
    let b = boundary(spec, n)?;
    summarize(&b.matrix, coeffs)
}

/// Rank and elementary divisors of an explicit boundary matrix.
pub fn summarize(a: &SparseMatrix<IntPoly>, coeffs: Coefficients) -> Result<BoundarySummary, HomologyError> {
    match coeffs {
        Coefficients::Symbolic => {
            let dec = snf_poly_q(a);
            if !dec.residual_ok {
                return Err(HomologyError::Residual);
            }
            let mut torsion = Vec::new();
            for d in dec.torsion() {
                torsion.push(Invariant::Poly(d.to_int().ok_or(HomologyError::NonIntegral)?.normalized()));
            }
            Ok(BoundarySummary { rank: dec.rank, torsion, certified: dec.certified_over_zt })
        }
        Coefficients::IntegerAt { t } => {
            let dec = snf_at(a, t);
            if !dec.residual_ok {
                return Err(HomologyError::Residual);
            }
            let torsion = dec.torsion().into_iter().map(Invariant::Int).collect();
            Ok(BoundarySummary { rank: dec.rank, torsion, certified: true })
        }
    }
}

/// Assembles `H_n` from `dim C_n`, `∂_n` and `∂_{n+1}`.
pub fn homology_from_parts(dim: usize, d_n: &BoundarySummary, d_n1: &BoundarySummary) -> HomologyModule {
    let mut torsion = BTreeMap::new();
    for inv in &d_n1.torsion {
        *torsion.entry(inv.clone()).or_insert(0) += 1;
    }
    HomologyModule {
        free_rank: dim - d_n.rank - d_n1.rank,
        torsion,
        provenance: Provenance::Direct,
        certified: d_n1.certified,
    }
}

/// `H_n` of the spec computed from its own boundary matrices.
pub fn homology_direct(spec: &ComplexSpec, n: usize, coeffs: Coefficients) -> Result<HomologyModule, HomologyError> {
    assert!(n >= 1, "homology_direct needs n >= 1");
    let dim = enumerate_raw(spec, n).len();
    if dim == 0 {
        return Ok(HomologyModule::zero(Provenance::Direct));
    }
    let d_n = boundary_summary(spec, n, coeffs)?;
    let d_n1 = boundary_summary(spec, n + 1, coeffs)?;
    Ok(homology_from_parts(dim, &d_n, &d_n1))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `H_n(C^m) = ⊕_{j=1}^{min(m, n+1)} binom(m-1, j-1) H_n(C^{jf})`.
pub fn assemble_decomposition(
    m: usize,
    n: usize,
    initial: &BTreeMap<usize, HomologyModule>,
) -> Result<HomologyModule, HomologyError> {
    let mut acc = HomologyModule::zero(Provenance::Assembled);
    for j in 1..=m.min(n + 1) {
        let h = initial.get(&j).ok_or(HomologyError::MissingInitial { j, n })?;
        acc = acc.direct_sum(&h.scaled(binomial(m - 1, j - 1) as usize));
    }
    acc.provenance = Provenance::Assembled;
    Ok(acc)
}

fn closed(counts: [i128; 3]) -> HomologyModule {
    let c: Vec<usize> = counts.iter().map(|&x| usize::try_from(x).expect("nonnegative count")).collect();
    HomologyModule::from_counts(&c, Provenance::ClosedForm)
}

/// `H_3(C^m) = (m(8-3m+m^2)/6, (m^2-1)(5m-6)/6, m(m-1))`.
pub fn closed_form_h3(m: usize) -> HomologyModule {
    let m = m as i128;
    closed([m * (8 - 3 * m + m * m) / 6, (m * m - 1) * (5 * m - 6) / 6, m * (m - 1)])
}

/// `H_4(C^m)` in binomial form: free `Σ_{k≤4} C(m-1,k)`, `(1-t)`-count
/// `6C1 + 33C2 + 51C3 + 23C4`, `(1-t^2)`-count `4C1 + 6C2 + 3C3`.
pub fn closed_form_h4(m: usize) -> HomologyModule {
    let c = |k| binomial(m - 1, k) as i128;
    closed([
        (0..=4).map(c).sum(),
        6 * c(1) + 33 * c(2) + 51 * c(3) + 23 * c(4),
        4 * c(1) + 6 * c(2) + 3 * c(3),
    ])
}

/// `H_3(C^m)` in binomial form: free `Σ_{k≤3} C(m-1,k)`, `2C1 + 8C2 + 5C3`,
/// `2C1 + 2C2`.
pub fn binomial_form_h3(m: usize) -> HomologyModule {
    let c = |k| binomial(m - 1, k) as i128;
    closed([(0..=3).map(c).sum(), 2 * c(1) + 8 * c(2) + 5 * c(3), 2 * c(1) + 2 * c(2)])
}

/// `H_4(C^m)` as polynomials in `m`.
pub fn polynomial_form_h4(m: usize) -> HomologyModule {
    let m = m as i128;
    closed([
        (m.pow(4) - 6 * m.pow(3) + 23 * m * m - 18 * m + 24) / 24,
        (m - 1) * (23 * m.pow(3) - 3 * m * m - 26 * m + 24) / 24,
        (m - 1) * (m * m + m + 2) / 2,
    ])
}

/// Outcome of comparing two modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub equal: bool,
    pub diff: Vec<String>,
}

pub fn compare(a: &HomologyModule, b: &HomologyModule) -> Comparison {
    let mut diff = Vec::new();
    if a.free_rank != b.free_rank {
        diff.push(format!("free rank {} vs {}", a.free_rank, b.free_rank));
    }
    let keys: std::collections::BTreeSet<&Invariant> = a.torsion.keys().chain(b.torsion.keys()).collect();
    for k in keys {
        let (x, y) = (a.torsion.get(k).copied().unwrap_or(0), b.torsion.get(k).copied().unwrap_or(0));
        if x != y {
            let name = match k {
                Invariant::Poly(p) => format!("k/({p})"),
                Invariant::Int(v) => format!("Z_{v}"),
            };
            diff.push(format!("{name}: {x} vs {y}"));
        }
    }
    Comparison { equal: diff.is_empty(), diff }
}

/// Evaluates `|p(t)|` as an `i64`, for reports.
pub fn eval_abs(p: &IntPoly, t: i64) -> Option<i64> {
    p.eval(&BigInt::from(t)).abs().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(h: &HomologyModule) -> Vec<usize> {
        h.counts(3, None).unwrap()
    }

    #[test]
    fn example_final_three() {
        let h = homology_direct(&ComplexSpec::Final { m: 3 }, 3, Coefficients::Symbolic).unwrap();
        assert_eq!(triple(&h), vec![1, 8, 2]);
        assert!(h.certified);
    }

    #[test]
    fn single_letter_and_counterexample_cells() {
        let h = homology_direct(&ComplexSpec::Full { m: 1 }, 3, Coefficients::Symbolic).unwrap();
        assert_eq!(triple(&h), vec![1, 0, 0]);
        let h = homology_direct(&ComplexSpec::UseTop { m: 2, u: 1, l: 1 }, 2, Coefficients::Symbolic).unwrap();
        assert_eq!(triple(&h), vec![1, 1, 1]);
    }

    #[test]
    fn empty_module_is_zero() {
        let h = homology_direct(&ComplexSpec::Final { m: 5 }, 3, Coefficients::Symbolic).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn assembly_examples() {
        let mut init = BTreeMap::new();
        init.insert(1, HomologyModule::from_counts(&[1, 0, 0], Provenance::Direct));
        init.insert(2, HomologyModule::from_counts(&[1, 2, 2], Provenance::Direct));
        init.insert(3, HomologyModule::from_counts(&[1, 8, 2], Provenance::Direct));
        let h = assemble_decomposition(3, 3, &init).unwrap();
        assert_eq!(triple(&h), vec![4, 12, 6]);
        assert!(compare(&h, &closed_form_h3(3)).equal);
        let h1 = assemble_decomposition(1, 3, &init).unwrap();
        assert_eq!(triple(&h1), vec![1, 0, 0]);
        assert!(matches!(assemble_decomposition(5, 3, &init), Err(HomologyError::MissingInitial { j: 4, .. })));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(triple(&closed_form_h3(2)), vec![2, 2, 2]);
        assert_eq!(triple(&closed_form_h3(1)), vec![1, 0, 0]);
        assert_eq!(triple(&closed_form_h4(2)), vec![2, 6, 4]);
        assert_eq!(triple(&closed_form_h4(4)), vec![8, 168, 33]);
        for m in 1..=12 {
            assert_eq!(closed_form_h3(m), binomial_form_h3(m), "m={m}");
            assert_eq!(closed_form_h4(m), polynomial_form_h4(m), "m={m}");
        }
    }

    #[test]
    fn comparison_diff() {
        let a = HomologyModule::from_counts(&[1, 1, 1], Provenance::Direct);
        let b = HomologyModule::from_counts(&[1, 1, 0], Provenance::Direct);
        let c = compare(&a, &b);
        assert!(!c.equal);
        assert_eq!(c.diff, vec!["k/(1 - y^4): 1 vs 0".to_string()]);
        assert!(compare(&a, &a).equal);
    }

    #[test]
    fn specialization_of_symbolic_module() {
        let h = HomologyModule::from_counts(&[1, 8, 2], Provenance::Direct);
        let s = h.specialize(4);
        assert_eq!(s.counts(3, Some(4)).unwrap(), vec![1, 8, 2]);
        // ℤ/3 ⊕ ℤ/5 is cyclic of order 15
        let m = invariant_factors(&[BigInt::from(3), BigInt::from(5)]);
        assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![(Invariant::Int(BigInt::from(15)), 1)]);
    }

    #[test]
    fn integer_homology_final_three() {
        let h = homology_direct(&ComplexSpec::Final { m: 3 }, 3, Coefficients::at_y(2)).unwrap();
        assert_eq!(h.counts(3, Some(4)).unwrap(), vec![1, 8, 2]);
        let sym = homology_direct(&ComplexSpec::Final { m: 3 }, 3, Coefficients::Symbolic).unwrap();
        assert!(compare(&sym.specialize(4), &HomologyModule { provenance: Provenance::Specialized, ..h }).equal);
    }
}
