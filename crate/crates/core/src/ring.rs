//! Exact arithmetic in ℤ, ℤ[t] and ℚ[t], where `t` stands for `y^2`.
//!
//! Polynomials are stored densely in ascending powers of `t`; the last
//! stored coefficient is always nonzero and the zero polynomial is empty.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse polynomial {input:?} at byte {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
}

/// A polynomial in `t = y^2` with arbitrary-precision integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// A polynomial in `t = y^2` with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monomial `t^k`, i.e. `y^(2k)`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `1 - t`, the basic torsion generator `1 - y^2`.
    pub fn one_minus_t() -> Self {
        Self::from_i64s(&[1, -1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Units of ℤ[t] are exactly ±1.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content(self)`, keeping the sign of `self`.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    /// Division with remainder by a divisor whose leading coefficient is ±1.
    /// Returns `None` when the leading coefficient is not a unit.
    pub fn div_rem_unit_lc(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let lc = d.leading()?;
        if !lc.abs().is_one() {
            return None;
        }
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] * lc; // lc = ±1, so c = rem / lc
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quo[k] = c;
        }
        Some((IntPoly::new(quo), IntPoly::new(rem)))
    }

    /// Exact division in ℤ[t].
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly, RingError> {
        if d.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let not_div = || RingError::NotDivisible {
            dividend: self.to_string(),
            divisor: d.to_string(),
        };
        if self.coeffs.len() < d.coeffs.len() {
            return Err(not_div());
        }
        let dd = d.coeffs.len() - 1;
        let lc = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let (q, r) = rem[k + dd].div_rem(lc);
            if !r.is_zero() {
                return Err(not_div());
            }
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * dc;
                }
            }
            quo[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(not_div());
        }
        Ok(IntPoly::new(quo))
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_ok()
    }

    /// Canonical associate: the lowest nonzero coefficient is positive.
    pub fn normalized(&self) -> IntPoly {
        let neg = self.coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        if neg {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Units of ℚ[t]: nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// True for the constants ±1, the units shared with ℤ[t].
    pub fn is_integral_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_integer() && self.coeffs[0].numer().abs().is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_int(&self) -> Option<IntPoly> {
        if !self.is_integral() {
            return None;
        }
        Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Euclidean division in ℚ[t].
    pub fn div_rem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly), RingError> {
        let lc = d.leading().ok_or(RingError::DivisionByZero)?;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let dd = d.coeffs.len() - 1;
        let lc_inv = lc.recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let q = &rem[k + dd] * &lc_inv;
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * dc;
                }
            }
            quo[k] = q;
        }
        rem.truncate(dd);
        Ok((RatPoly::new(quo), RatPoly::new(rem)))
    }

    /// Splits `self` as `c * p` with `c` rational and `p` a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn rational_content(&self) -> (BigRational, IntPoly) {
        if self.is_zero() {
            return (BigRational::zero(), IntPoly::zero());
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut p = IntPoly::new(ints);
        let mut g = p.content();
        if p.leading().unwrap().is_negative() {
            g = -g;
        }
        p = IntPoly::new(p.coeffs.iter().map(|c| c / &g).collect());
        (BigRational::new(g, den), p)
    }

    /// Associate with leading coefficient 1.
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }
}

macro_rules! poly_ops {
    ($ty:ident, $coef:ty) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
                let mut out = long.coeffs.clone();
                for (o, c) in out.iter_mut().zip(short.coeffs.iter()) {
                    *o += c;
                }
                $ty::new(out)
            }
        }
        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.coeffs.clone();
                if out.len() < rhs.coeffs.len() {
                    out.resize(rhs.coeffs.len(), <$coef>::zero());
                }
                for (o, c) in out.iter_mut().zip(rhs.coeffs.iter()) {
                    *o -= c;
                }
                $ty::new(out)
            }
        }
        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                if self.is_zero() || rhs.is_zero() {
                    return $ty::zero();
                }
                let mut out = vec![<$coef>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                $ty::new(out)
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty { coeffs: self.coeffs.iter().map(|c| -c).collect() }
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                if self.coeffs.len() < rhs.coeffs.len() {
                    self.coeffs.resize(rhs.coeffs.len(), <$coef>::zero());
                }
                for (o, c) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                    *o += c;
                }
                trim(&mut self.coeffs);
            }
        }
        impl SubAssign<&$ty> for $ty {
            fn sub_assign(&mut self, rhs: &$ty) {
                if self.coeffs.len() < rhs.coeffs.len() {
                    self.coeffs.resize(rhs.coeffs.len(), <$coef>::zero());
                }
                for (o, c) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                    *o -= c;
                }
                trim(&mut self.coeffs);
            }
        }
    };
}

poly_ops!(IntPoly, BigInt);
poly_ops!(RatPoly, BigRational);

fn write_terms<C, F>(f: &mut fmt::Formatter<'_>, coeffs: &[C], mut sign_abs: F) -> fmt::Result
where
    F: FnMut(&C) -> (bool, String, bool),
{
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        let (neg, abs, is_one) = sign_abs(c);
        if abs == "0" {
            continue;
        }
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        if k == 0 {
            write!(f, "{abs}")?;
        } else {
            if !is_one {
                write!(f, "{abs}")?;
            }
            write!(f, "y^{}", 2 * k)?;
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |c| (c.is_negative(), c.abs().to_string(), c.abs().is_one()))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |c| {
            let a = c.abs();
            let s = if a.is_integer() { a.numer().to_string() } else { format!("({a})") };
            (c.is_negative(), s, a.is_one())
        })
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// Parses the text form `1 - y^2 + 3y^4` (an optional `*` between
/// coefficient and monomial is accepted). Only even powers of `y` are allowed.
impl FromStr for IntPoly {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |pos: usize, msg: &str| RingError::Parse { input: s.to_string(), pos, msg: msg.to_string() };
        let bytes = s.as_bytes();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let mut coeffs: Vec<BigInt> = vec![];
        let mut first = true;
        skip_ws(&mut i);
        if i == bytes.len() {
            return Err(err(0, "empty input"));
        }
        while i < bytes.len() {
            let mut neg = false;
            if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                neg = bytes[i] == b'-';
                i += 1;
                skip_ws(&mut i);
            } else if !first {
                return Err(err(i, "expected '+' or '-'"));
            }
            first = false;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut c = if i > start {
                s[start..i].parse::<BigInt>().map_err(|_| err(start, "bad integer"))?
            } else {
                BigInt::one()
            };
            let had_digits = i > start;
            let mut j = i;
            skip_ws(&mut j);
            if j < bytes.len() && bytes[j] == b'*' {
                i = j + 1;
                skip_ws(&mut i);
            }
            let mut power = 0usize;
            if i < bytes.len() && bytes[i] == b'y' {
                i += 1;
                let mut ypow = 1usize;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let ps = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    ypow = s[ps..i].parse().map_err(|_| err(ps, "bad exponent"))?;
                }
                if ypow % 2 != 0 {
                    return Err(err(start, "odd power of y"));
                }
                power = ypow / 2;
            } else if !had_digits {
                return Err(err(i, "expected a term"));
            }
            if neg {
                c = -c;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += c;
            skip_ws(&mut i);
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Orders torsion invariants by degree, then coefficients; gives a stable
/// report order.
pub fn cmp_by_degree(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| a.coeffs.cmp(&b.coeffs))
}

/// Determinant over ℤ[t] by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut a: Vec<Vec<IntPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = IntPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// True iff `m` is square with determinant ±1 in ℤ[t].
pub fn is_unimodular(m: &[Vec<IntPoly>]) -> bool {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return false;
    }
    det(m).is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[1, -1]) * &p(&[1, 1]), p(&[1, 0, -1]));
    }

    #[test]
    fn specializations_at_y_equals_two() {
        assert_eq!(p(&[1, -1]).eval_i64(4), BigInt::from(-3));
        let f = &(&p(&[1, -1]) * &p(&[1, 1])) * &p(&[1, 1, 1]);
        assert_eq!(f.eval_i64(4), BigInt::from(-315));
    }

    #[test]
    fn exact_division() {
        let f = p(&[1, 0, -1]);
        assert_eq!(f.div_exact(&p(&[1, -1])).unwrap(), p(&[1, 1]));
        assert!(matches!(p(&[1, 1]).div_exact(&p(&[1, -1])), Err(RingError::NotDivisible { .. })));
        assert!(matches!(p(&[2]).div_exact(&p(&[4])), Err(RingError::NotDivisible { .. })));
        assert_eq!(p(&[1]).div_exact(&IntPoly::zero()), Err(RingError::DivisionByZero));
    }

    #[test]
    fn unimodularity() {
        let one = IntPoly::one();
        let z = IntPoly::zero();
        assert!(is_unimodular(&[vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]]));
        assert!(!is_unimodular(&[vec![p(&[1, -1]), z.clone()], vec![z.clone(), one.clone()]]));
        // P_3 from the worked m = 3 example: [[-1, 0], [-t, 1]]
        assert!(is_unimodular(&[vec![p(&[-1]), z.clone()], vec![p(&[0, -1]), one.clone()]]));
        assert!(!is_unimodular(&[vec![one.clone(), z.clone()]]));
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[1, -1]).to_string(), "1 - y^2");
        assert_eq!(p(&[1, 0, -1]).to_string(), "1 - y^4");
        assert_eq!(p(&[0, 3, -2]).to_string(), "3y^2 - 2y^4");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!("1 - y^4".parse::<IntPoly>().unwrap(), p(&[1, 0, -1]));
        assert_eq!("-2*y^2 + 5".parse::<IntPoly>().unwrap(), p(&[5, -2]));
        assert_eq!("y^2 - y^2".parse::<IntPoly>().unwrap(), IntPoly::zero());
        assert!("1 - y^3".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
        assert!("1 y^2".parse::<IntPoly>().is_err());
    }

    #[test]
    fn sign_normalization() {
        assert_eq!(p(&[-1, 1]).normalized(), p(&[1, -1]));
        assert_eq!(p(&[0, -1, 1]).normalized(), p(&[0, 1, -1]));
    }

    #[test]
    fn rational_division_and_content() {
        let a = p(&[1, 0, -1]).to_rat();
        let b = p(&[2, -2]).to_rat();
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(&q * &b, a);
        let (c, prim) = p(&[-2, 4]).to_rat().rational_content();
        assert_eq!(prim, p(&[-1, 2]));
        assert_eq!(c, BigRational::from_integer(2.into()));
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|v| IntPoly::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_poly(), b in arb_poly(), t in -6i64..7) {
            prop_assert_eq!((&a * &b).eval_i64(t), a.eval_i64(t) * b.eval_i64(t));
        }

        #[test]
        fn content_times_primitive(a in arb_poly()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(a.primitive_part().scale(&a.content()), a);
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<IntPoly>().unwrap(), a);
        }

        #[test]
        fn product_divides_exactly(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }
    }
}
