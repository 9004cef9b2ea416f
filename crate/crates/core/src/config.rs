//! Spec strings and job configuration.
//!
//! Grammar: `kind:key=value,key=value` with kinds `full` (m), `usetop`
//! (m, u, l), `final` (m), `capped` (m, cap), `capquot` (m, cap),
//! `kunneth` (m, split) and `kunnethquot` (m, split).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, ComplexSpec};
use crate::homology::Coefficients;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecParseError {
    #[error("spec {input:?}, position {pos}: {msg}")]
    Syntax { input: String, pos: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] ComplexError),
}

pub fn parse_spec(s: &str) -> Result<ComplexSpec, SpecParseError> {
    let syntax = |pos: usize, msg: &str| SpecParseError::Syntax { input: s.to_string(), pos, msg: msg.to_string() };
    if s.trim().is_empty() {
        return Err(syntax(0, "empty spec"));
    }
    let (kind, rest) = s.split_once(':').ok_or_else(|| syntax(s.len(), "expected ':' after the complex kind"))?;
    let mut params: BTreeMap<&str, usize> = BTreeMap::new();
    let mut pos = kind.len() + 1;
    for item in rest.split(',') {
        let (k, v) = item.split_once('=').ok_or_else(|| syntax(pos, "expected key=value"))?;
        let v: usize = v.trim().parse().map_err(|_| syntax(pos + k.len() + 1, "expected a nonnegative integer"))?;
        if params.insert(k.trim(), v).is_some() {
            return Err(syntax(pos, "repeated key"));
        }
        pos += item.len() + 1;
    }
    let expected: &[&str] = match kind.trim() {
        "full" | "final" => &["m"],
        "usetop" => &["m", "u", "l"],
        "capped" | "capquot" => &["m", "cap"],
        "kunneth" | "kunnethquot" => &["m", "split"],
        _ => return Err(syntax(0, "unknown complex kind")),
    };
    let mut keys: Vec<&str> = params.keys().copied().collect();
    let mut want = expected.to_vec();
    keys.sort_unstable();
    want.sort_unstable();
    if keys != want {
        return Err(syntax(kind.len() + 1, &format!("expected keys {}", expected.join(","))));
    }
    let p = |k: &str| params[k];
    let spec = match kind.trim() {
        "full" => ComplexSpec::Full { m: p("m") },
        "final" => ComplexSpec::Final { m: p("m") },
        "usetop" => ComplexSpec::UseTop { m: p("m"), u: p("u"), l: p("l") },
        "capped" => ComplexSpec::TopCapped { m: p("m"), cap: p("cap") },
        "capquot" => ComplexSpec::TopQuotient { m: p("m"), cap: p("cap") },
        "kunneth" => ComplexSpec::Kunneth { m: p("m"), split: p("split") },
        "kunnethquot" => ComplexSpec::KunnethQuotient { m: p("m"), split: p("split") },
        _ => unreachable!(),
    };
    spec.validate()?;
    Ok(spec)
}

impl FromStr for ComplexSpec {
    type Err = SpecParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            _ => Err(format!("unknown output format {s:?}")),
        }
    }
}

/// One homology job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub spec: ComplexSpec,
    pub n: usize,
    pub coeffs: Coefficients,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub threads: Option<usize>,
}

/// Cache directory from `YBH_CACHE_DIR`, if set.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os("YBH_CACHE_DIR").filter(|v| !v.is_empty()).map(PathBuf::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_spec("final:m=3").unwrap(), ComplexSpec::Final { m: 3 });
        let s = parse_spec("usetop:m=4,u=3,l=1").unwrap();
        assert_eq!(s, ComplexSpec::UseTop { m: 4, u: 3, l: 1 });
        assert_eq!(s.canonical(), ComplexSpec::Final { m: 4 });
        assert!(matches!(parse_spec("usetop:m=3,u=2,l=2"), Err(SpecParseError::Invalid(_))));
        assert!(matches!(parse_spec(""), Err(SpecParseError::Syntax { .. })));
        assert!(matches!(parse_spec("final"), Err(SpecParseError::Syntax { .. })));
        assert!(matches!(parse_spec("final:m=x"), Err(SpecParseError::Syntax { pos: 8, .. })));
        assert!(matches!(parse_spec("final:m=2,u=1"), Err(SpecParseError::Syntax { .. })));
        assert!(matches!(parse_spec("kunneth:m=3,split=3"), Err(SpecParseError::Invalid(_))));
    }

    fn any_spec() -> impl Strategy<Value = ComplexSpec> {
        prop_oneof![
            (1usize..9).prop_map(|m| ComplexSpec::Full { m }),
            (1usize..9).prop_map(|m| ComplexSpec::Final { m }),
            (1usize..9, 0usize..9, 0usize..9)
                .prop_filter("valid", |(m, u, l)| u + l <= *m && u + l >= 1)
                .prop_map(|(m, u, l)| ComplexSpec::UseTop { m, u, l }),
            (1usize..9, 1usize..5).prop_map(|(m, cap)| ComplexSpec::TopCapped { m, cap }),
            (1usize..9, 1usize..5).prop_map(|(m, cap)| ComplexSpec::TopQuotient { m, cap }),
            (2usize..9).prop_flat_map(|m| (Just(m), 1..m)).prop_map(|(m, split)| ComplexSpec::Kunneth { m, split }),
        ]
    }

    proptest! {
        #[test]
        fn spec_strings_round_trip(spec in any_spec()) {
            prop_assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
        }
    }
}
