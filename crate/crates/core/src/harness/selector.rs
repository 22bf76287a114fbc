use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Element, Field};
use crate::theory::CCondition;

/// Which multipliers `c` a case runs over.
///
/// Text forms: `all`, `all-except:<c>,<c>,...`, a single `<c>`, or
/// `cond:<condition>`. A `<c>` is a canonical index, or `-1` for minus one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CSelector {
    #[default]
    All,
    AllExcept(Vec<i64>),
    Single(i64),
    Condition(CCondition),
}

fn resolve_one(field: &Field, c: i64) -> Result<Element> {
    match c {
        -1 => Ok(field.minus_one()),
        c if c >= 0 => field.element(c as u64),
        _ => Err(Error::Parse(format!("c must be an index or -1, got {c}"))),
    }
}

impl CSelector {
    /// The selected elements in canonical order.
    pub fn resolve(&self, field: &Field) -> Result<Vec<Element>> {
        Ok(match self {
            CSelector::All => field.elements().collect(),
            CSelector::Single(c) => vec![resolve_one(field, *c)?],
            CSelector::AllExcept(list) => {
                let skip = list
                    .iter()
                    .map(|&c| resolve_one(field, c))
                    .collect::<Result<Vec<_>>>()?;
                field.elements().filter(|c| !skip.contains(c)).collect()
            }
            CSelector::Condition(cond) => {
                let mut out = Vec::new();
                for c in field.elements() {
                    if cond.eval(field, c)? {
                        out.push(c);
                    }
                }
                out
            }
        })
    }
}

fn parse_c(s: &str) -> Result<i64> {
    let v: i64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid c `{s}`")))?;
    if v < -1 {
        return Err(Error::Parse(format!("c must be an index or -1, got {v}")));
    }
    Ok(v)
}

impl FromStr for CSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "all" {
            Ok(CSelector::All)
        } else if let Some(rest) = s.strip_prefix("all-except:") {
            Ok(CSelector::AllExcept(rest.split(',').map(parse_c).collect::<Result<_>>()?))
        } else if let Some(rest) = s.strip_prefix("cond:") {
            Ok(CSelector::Condition(rest.parse()?))
        } else {
            Ok(CSelector::Single(parse_c(s)?))
        }
    }
}

impl fmt::Display for CSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CSelector::All => write!(f, "all"),
            CSelector::Single(c) => write!(f, "{c}"),
            CSelector::AllExcept(list) => {
                let items: Vec<String> = list.iter().map(i64::to_string).collect();
                write!(f, "all-except:{}", items.join(","))
            }
            CSelector::Condition(cond) => write!(f, "cond:{cond}"),
        }
    }
}

impl Serialize for CSelector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CSelector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => parse_c(&v.to_string()).map(CSelector::Single),
            Raw::Text(t) => t.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}
