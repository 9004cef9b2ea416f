//! Ranks of the chain modules: Stirling numbers and `S̃(n, m, u)`, the
//! number of `n`-tuples on `m` letters using each of `u` given letters.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{enumerate_raw, ComplexSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("unknown counting method {0:?}")]
    Method(String),
    #[error("need 0 <= u <= m, got u={u}, m={m}")]
    Range { m: usize, u: usize },
    #[error("methods disagree at n={n}, m={m}, u={u}: {values:?}")]
    Disagreement { n: usize, m: usize, u: usize, values: Vec<(Method, BigInt)> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    InclusionExclusion,
    Recurrence,
    Enumeration,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::InclusionExclusion, Method::Recurrence, Method::Enumeration];
}

impl std::str::FromStr for Method {
    type Err = CountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inclusion-exclusion" => Ok(Method::InclusionExclusion),
            "recurrence" => Ok(Method::Recurrence),
            "enumeration" => Ok(Method::Enumeration),
            _ => Err(CountError::Method(s.to_string())),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::InclusionExclusion => "inclusion-exclusion",
            Method::Recurrence => "recurrence",
            Method::Enumeration => "enumeration",
        };
        write!(f, "{s}")
    }
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, m: usize) -> BigInt {
    // row-by-row recurrence S(n, m) = m S(n-1, m) + S(n-1, m-1)
    let mut row = vec![BigInt::zero(); m + 1];
    row[0] = BigInt::one();
    for _ in 0..n {
        for k in (1..=m).rev() {
            row[k] = &row[k] * BigInt::from(k) + &row[k - 1];
        }
        row[0] = BigInt::zero();
    }
    row[m].clone()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `S̃(n, m, u)` by the chosen method.
pub fn s_tilde(n: usize, m: usize, u: usize, method: Method) -> Result<BigInt, CountError> {
    if u > m {
        return Err(CountError::Range { m, u });
    }
    Ok(match method {
        Method::InclusionExclusion => (0..=u).fold(BigInt::zero(), |acc, i| {
            let term = binom(u, i) * BigInt::from(m - i).pow(n as u32);
            if i % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        }),
        Method::Recurrence => s_tilde_rec(n, m, u, &mut BTreeMap::new()),
        Method::Enumeration => {
            let spec = ComplexSpec::UseTop { m, u, l: m - u };
            if m == 0 {
                BigInt::from(usize::from(n == 0))
            } else {
                BigInt::from(enumerate_raw(&spec, n).len())
            }
        }
    })
}

/// `S̃(n, m, u) = S̃(n, m-1, u) + S̃(n, m, u+1)`: a tuple either avoids one
/// fixed optional letter or uses it. Base case `u = m` is `m! S(n, m)`.
fn s_tilde_rec(n: usize, m: usize, u: usize, memo: &mut BTreeMap<(usize, usize), BigInt>) -> BigInt {
    if u == m {
        return factorial(m) * stirling2(n, m);
    }
    if let Some(v) = memo.get(&(m, u)) {
        return v.clone();
    }
    let v = s_tilde_rec(n, m - 1, u, memo) + s_tilde_rec(n, m, u + 1, memo);
    memo.insert((m, u), v.clone());
    v
}

/// `S̃(n, m, u)` with all three methods required to agree.
pub fn s_tilde_checked(n: usize, m: usize, u: usize) -> Result<BigInt, CountError> {
    let values: Vec<(Method, BigInt)> =
        Method::ALL.iter().map(|&k| s_tilde(n, m, u, k).map(|v| (k, v))).collect::<Result<_, _>>()?;
    if values.iter().any(|(_, v)| *v != values[0].1) {
        return Err(CountError::Disagreement { n, m, u, values });
    }
    Ok(values[0].1.clone())
}

/// Table of `S̃(n, m, m-1)` keyed by `(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub max_n: usize,
    pub max_m: usize,
    pub values: BTreeMap<(usize, usize), BigInt>,
}

impl CountTable {
    pub fn get(&self, n: usize, m: usize) -> &BigInt {
        &self.values[&(n, m)]
    }

    /// Rows `m`, columns `n`, comma separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m");
        for n in 1..=self.max_n {
            out.push_str(&format!(",n={n}"));
        }
        out.push('\n');
        for m in 1..=self.max_m {
            out.push_str(&m.to_string());
            for n in 1..=self.max_n {
                out.push_str(&format!(",{}", self.get(n, m)));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let w = self.values.values().map(|v| v.to_string().len()).max().unwrap_or(1).max(3);
        let mut out = format!("{:>4}", "m\\n");
        for n in 1..=self.max_n {
            out.push_str(&format!(" {n:>w$}"));
        }
        out.push('\n');
        for m in 1..=self.max_m {
            out.push_str(&format!("{m:>4}"));
            for n in 1..=self.max_n {
                out.push_str(&format!(" {:>w$}", self.get(n, m).to_string()));
            }
            out.push('\n');
        }
        out
    }
}

/// `S̃(n, m, m-1)` for `1 <= n <= max_n`, `1 <= m <= max_m`, every cell
/// computed by all three methods.
pub fn rank_table(max_n: usize, max_m: usize) -> Result<CountTable, CountError> {
    let mut values = BTreeMap::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            values.insert((n, m), s_tilde_checked(n, m, m - 1)?);
        }
    }
    Ok(CountTable { max_n, max_m, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(3, 2), b(3));
        assert_eq!(stirling2(4, 2), b(7));
        assert_eq!(stirling2(0, 0), b(1));
        assert_eq!(stirling2(5, 0), b(0));
        assert_eq!(stirling2(2, 3), b(0));
    }

    #[test]
    fn s_tilde_examples() {
        assert_eq!(s_tilde_checked(3, 3, 2).unwrap(), b(12));
        assert_eq!(s_tilde_checked(4, 3, 2).unwrap(), b(50));
        assert_eq!(s_tilde_checked(4, 4, 3).unwrap(), b(60));
        assert_eq!(s_tilde_checked(1, 3, 2).unwrap(), b(0));
        assert_eq!(s_tilde_checked(3, 4, 3).unwrap(), b(6));
        for m in 1..=4 {
            assert_eq!(s_tilde_checked(3, m, 0).unwrap(), b(m as i64).pow(3));
        }
        assert!(s_tilde(2, 2, 3, Method::Recurrence).is_err());
        assert!("bogus".parse::<Method>().is_err());
    }

    #[test]
    fn all_methods_agree_on_small_grid() {
        for n in 0..=5 {
            for m in 1..=5 {
                for u in 0..=m {
                    s_tilde_checked(n, m, u).unwrap();
                }
            }
        }
    }

    #[test]
    fn stirling_identity() {
        for n in 1..=6 {
            for m in 1..=6 {
                assert_eq!(s_tilde_checked(n, m, m - 1).unwrap(), factorial(m - 1) * stirling2(n + 1, m));
                assert_eq!(s_tilde_checked(n, m, m).unwrap(), factorial(m) * stirling2(n, m));
            }
        }
    }

    #[test]
    fn table_rendering() {
        let t = rank_table(3, 2).unwrap();
        assert_eq!(t.to_csv(), "m,n=1,n=2,n=3\n1,1,1,1\n2,1,3,7\n");
    }
}
