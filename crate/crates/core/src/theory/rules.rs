//! Registered prediction rules: one per family of power exponents with a
//! known c-differential uniformity, plus the earlier results they extend.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::condition::{Atom, CCondition};
use super::gcd_pk1;
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{Element, Field, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Proved,
    Conjectured,
    /// An earlier result, encoded exactly as tabulated.
    PriorPrinted,
    /// An earlier result with a repaired hypothesis.
    PriorCorrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Gold,
    Pk1,
    Pk1HalfPcn,
    Pk1HalfApcn,
    TwoPnThird,
    Pn1Half,
    Pn3Half,
    PnMinus3Half,
    Conjecture47,
    PriorSquare,
    PriorInverseC0,
    PriorInverseChar2,
    PriorInverseOdd,
    Prior3kHalfPrinted,
    Prior3kHalf,
    PriorP2Half,
    PriorP2MinusP1,
}

impl RuleId {
    pub const ALL: [RuleId; 17] = [
        RuleId::Gold,
        RuleId::Pk1,
        RuleId::Pk1HalfPcn,
        RuleId::Pk1HalfApcn,
        RuleId::TwoPnThird,
        RuleId::Pn1Half,
        RuleId::Pn3Half,
        RuleId::PnMinus3Half,
        RuleId::Conjecture47,
        RuleId::PriorSquare,
        RuleId::PriorInverseC0,
        RuleId::PriorInverseChar2,
        RuleId::PriorInverseOdd,
        RuleId::Prior3kHalfPrinted,
        RuleId::Prior3kHalf,
        RuleId::PriorP2Half,
        RuleId::PriorP2MinusP1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Gold => "gold",
            RuleId::Pk1 => "pk1",
            RuleId::Pk1HalfPcn => "pk1_half_pcn",
            RuleId::Pk1HalfApcn => "pk1_half_apcn",
            RuleId::TwoPnThird => "two_pn_third",
            RuleId::Pn1Half => "pn1_half",
            RuleId::Pn3Half => "pn3_half",
            RuleId::PnMinus3Half => "pn_minus3_half",
            RuleId::Conjecture47 => "conjecture47",
            RuleId::PriorSquare => "prior_square",
            RuleId::PriorInverseC0 => "prior_inverse_c0",
            RuleId::PriorInverseChar2 => "prior_inverse_char2",
            RuleId::PriorInverseOdd => "prior_inverse_odd",
            RuleId::Prior3kHalfPrinted => "prior_3k_half_printed",
            RuleId::Prior3kHalf => "prior_3k_half",
            RuleId::PriorP2Half => "prior_p2_half",
            RuleId::PriorP2MinusP1 => "prior_p2_minus_p_plus_1",
        }
    }

    pub fn provenance(self) -> Provenance {
        match self {
            RuleId::Conjecture47 => Provenance::Conjectured,
            RuleId::PriorSquare
            | RuleId::PriorInverseC0
            | RuleId::PriorInverseChar2
            | RuleId::PriorInverseOdd
            | RuleId::Prior3kHalfPrinted
            | RuleId::PriorP2Half
            | RuleId::PriorP2MinusP1 => Provenance::PriorPrinted,
            RuleId::Prior3kHalf => Provenance::PriorCorrected,
            _ => Provenance::Proved,
        }
    }

    /// Whether the exponent is parameterised by `k`.
    pub fn uses_k(self) -> bool {
        matches!(
            self,
            RuleId::Gold
                | RuleId::Pk1
                | RuleId::Pk1HalfPcn
                | RuleId::Pk1HalfApcn
                | RuleId::Prior3kHalfPrinted
                | RuleId::Prior3kHalf
        )
    }

    /// The rule's exponent over GF(p^n), or the failed requirement.
    pub fn exponent(self, p: u64, n: u32, k: Option<u32>) -> std::result::Result<u64, &'static str> {
        let q = p.checked_pow(n).ok_or("field_too_large")?;
        let odd = || if p % 2 == 1 { Ok(()) } else { Err("p_not_odd") };
        let pk = || -> std::result::Result<u64, &'static str> {
            match k {
                None => Err("k_required"),
                Some(0) => Err("k_zero"),
                Some(k) => p.checked_pow(k).ok_or("exponent_overflow"),
            }
        };
        match self {
            RuleId::Gold | RuleId::Pk1 => Ok(pk()? + 1),
            RuleId::Pk1HalfPcn | RuleId::Pk1HalfApcn => {
                odd()?;
                Ok((pk()? + 1) / 2)
            }
            RuleId::Prior3kHalfPrinted | RuleId::Prior3kHalf => {
                if p != 3 {
                    return Err("p_not_3");
                }
                Ok((pk()? + 1) / 2)
            }
            RuleId::TwoPnThird => {
                if q % 3 != 2 {
                    return Err("q_not_2_mod_3");
                }
                Ok((2 * q - 1) / 3)
            }
            RuleId::Pn1Half => odd().map(|_| (q + 1) / 2),
            RuleId::Pn3Half => odd().map(|_| (q + 3) / 2),
            RuleId::PnMinus3Half => {
                odd()?;
                if q <= 3 {
                    return Err("q_le_3");
                }
                Ok((q - 3) / 2)
            }
            RuleId::Conjecture47 => {
                odd()?;
                if n % 2 == 0 {
                    return Err("n_even");
                }
                Ok((q + 1) / (p + 1))
            }
            RuleId::PriorSquare => Ok(2),
            RuleId::PriorInverseC0 | RuleId::PriorInverseChar2 | RuleId::PriorInverseOdd => {
                if q <= 2 {
                    return Err("q_le_2");
                }
                Ok(q - 2)
            }
            RuleId::PriorP2Half => odd().map(|_| (p * p + 1) / 2),
            RuleId::PriorP2MinusP1 => odd().map(|_| p * p - p + 1),
        }
    }

    fn hypotheses(self) -> &'static str {
        match self {
            RuleId::Gold => "p = 2, d = 2^k + 1, gcd(k, n) = 1, c != 0, 1 (c = 0 recorded as observation)",
            RuleId::Pk1 => "d = p^k + 1, c != 1, c in GF(p^gcd(k, n))",
            RuleId::Pk1HalfPcn => "p odd, d = (p^k + 1)/2, c = -1; PcN iff k/gcd(k, n) even",
            RuleId::Pk1HalfApcn => "p = 3, d = (3^k + 1)/2, k odd, gcd(k, n) = 1, c = -1",
            RuleId::TwoPnThird => "d = (2p^n - 1)/3, p^n = 2 mod 3, c != 1",
            RuleId::Pn1Half => {
                "p odd, d = (p^n + 1)/2, c != 1, -1; refined when p^n = 1 mod 4 and chi((1 - c)/(1 + c)) = 1"
            }
            RuleId::Pn3Half => "p > 3, d = (p^n + 3)/2, c = -1",
            RuleId::PnMinus3Half => "p odd, d = (p^n - 3)/2 >= 1, c = -1",
            RuleId::Conjecture47 => "p odd, n odd, d = (p^n + 1)/(p + 1), c = -1",
            RuleId::PriorSquare => "d = 2, c != 1 (p = 2 recorded as observation)",
            RuleId::PriorInverseC0 => "d = p^n - 2, c = 0",
            RuleId::PriorInverseChar2 => "p = 2, d = 2^n - 2, c != 0 (c = 1 recorded as observation); split on Tr(c), Tr(1/c)",
            RuleId::PriorInverseOdd => {
                "p odd, d = p^n - 2, c != 0 (c = 1 recorded as observation); split on c in {4, 1/4}, chi(c^2 - 4c), chi(1 - 4c)"
            }
            RuleId::Prior3kHalfPrinted => {
                "p = 3, d = (3^k + 1)/2, c = -1; PcN iff n/gcd(n, k) odd (as tabulated, recorded as observation)"
            }
            RuleId::Prior3kHalf => "p = 3, d = (3^k + 1)/2, c = -1; PcN iff k/gcd(k, n) even",
            RuleId::PriorP2Half => "p odd, n odd, d = (p^2 + 1)/2, c = -1",
            RuleId::PriorP2MinusP1 => "p odd, n = 3, d = p^2 - p + 1, c = -1",
        }
    }

    fn claim(self) -> &'static str {
        match self {
            RuleId::Gold => "exactly 3",
            RuleId::Pk1 => "exactly gcd(d, p^n - 1)",
            RuleId::Pk1HalfPcn | RuleId::Prior3kHalfPrinted | RuleId::Prior3kHalf => "PcN / not PcN",
            RuleId::Pk1HalfApcn => "APcN",
            RuleId::TwoPnThird => "at most 3",
            RuleId::Pn1Half => "at most 4; at most 2 when refined",
            RuleId::Pn3Half => "at most 3 if p^n = 3 mod 4, at most 4 if p^n = 1 mod 4",
            RuleId::PnMinus3Half => "at most 4",
            RuleId::Conjecture47 | RuleId::PriorInverseC0 | RuleId::PriorP2Half | RuleId::PriorP2MinusP1 => {
                "PcN"
            }
            RuleId::PriorSquare => "exactly 2",
            RuleId::PriorInverseChar2 => "exactly 2 if Tr(c) = Tr(1/c) = 1, else exactly 3",
            RuleId::PriorInverseOdd => {
                "exactly 2 if c in {4, 1/4} or chi(c^2 - 4c) = chi(1 - 4c) = -1, else exactly 3"
            }
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            RuleId::Gold => "Gold exponent",
            RuleId::Pk1 => "p^k + 1 exponent",
            RuleId::Pk1HalfPcn => "(p^k + 1)/2 exponent, PcN criterion",
            RuleId::Pk1HalfApcn => "(3^k + 1)/2 exponent, APcN",
            RuleId::TwoPnThird => "(2p^n - 1)/3 exponent",
            RuleId::Pn1Half => "(p^n + 1)/2 exponent",
            RuleId::Pn3Half => "(p^n + 3)/2 exponent",
            RuleId::PnMinus3Half => "(p^n - 3)/2 exponent",
            RuleId::Conjecture47 => "(p^n + 1)/(p + 1) exponent, quasi-planar conjecture",
            RuleId::PriorSquare => "square map",
            RuleId::PriorInverseC0 => "inverse map at c = 0",
            RuleId::PriorInverseChar2 => "inverse map, characteristic 2",
            RuleId::PriorInverseOdd => "inverse map, odd characteristic",
            RuleId::Prior3kHalfPrinted => "(3^k + 1)/2 exponent, tabulated condition",
            RuleId::Prior3kHalf => "(3^k + 1)/2 exponent, repaired condition",
            RuleId::PriorP2Half => "(p^2 + 1)/2 exponent",
            RuleId::PriorP2MinusP1 => "p^2 - p + 1 exponent",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

impl Serialize for RuleId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for RuleId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum PredictionKind {
    Exact(u32),
    UpperBound(u32),
    #[serde(rename = "pcn")]
    PcN,
    #[serde(rename = "apcn")]
    APcN,
    /// The negative direction of an "if and only if" PcN criterion.
    #[serde(rename = "not_pcn")]
    NotPcN,
    NotApplicable(String),
}

impl PredictionKind {
    pub fn is_applicable(&self) -> bool {
        !matches!(self, PredictionKind::NotApplicable(_))
    }

    /// Whether a computed uniformity agrees with the claim.
    pub fn holds_for(&self, u: u32) -> bool {
        match *self {
            PredictionKind::Exact(e) => u == e,
            PredictionKind::UpperBound(b) => u <= b,
            PredictionKind::PcN => u == 1,
            PredictionKind::APcN => u == 2,
            PredictionKind::NotPcN => u != 1,
            PredictionKind::NotApplicable(_) => true,
        }
    }
}

impl fmt::Display for PredictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictionKind::Exact(u) => write!(f, "={u}"),
            PredictionKind::UpperBound(u) => write!(f, "<={u}"),
            PredictionKind::PcN => write!(f, "PcN"),
            PredictionKind::APcN => write!(f, "APcN"),
            PredictionKind::NotPcN => write!(f, "not PcN"),
            PredictionKind::NotApplicable(r) => write!(f, "n/a ({r})"),
        }
    }
}

/// Accepts the [`Display`](fmt::Display) forms `=u`, `<=u`, `PcN`, `APcN`
/// and `not PcN` (case-insensitive).
impl FromStr for PredictionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let value = |v: &str| -> Result<u32> {
            match v.trim().parse::<u32>() {
                Ok(u) if u >= 1 => Ok(u),
                _ => Err(Error::Parse(format!("invalid claim `{s}`"))),
            }
        };
        if let Some(v) = t.strip_prefix("<=") {
            return Ok(PredictionKind::UpperBound(value(v)?));
        }
        if let Some(v) = t.strip_prefix('=') {
            return Ok(PredictionKind::Exact(value(v)?));
        }
        match t.to_ascii_lowercase().replace('_', " ").as_str() {
            "pcn" => Ok(PredictionKind::PcN),
            "apcn" => Ok(PredictionKind::APcN),
            "not pcn" => Ok(PredictionKind::NotPcN),
            _ => Err(Error::Parse(format!("invalid claim `{s}`"))),
        }
    }
}

/// The parameter tuple a prediction was made for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub p: u64,
    pub n: u32,
    pub k: Option<u32>,
    pub d: Option<u64>,
    pub c: u32,
    /// The c-condition branch that fired, in condition syntax.
    pub condition: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub kind: PredictionKind,
    pub source: RuleId,
    pub params: Params,
    /// Set for tabulated claims with a known caveat; these are recorded
    /// rather than judged.
    pub observational: bool,
}

struct Outcome {
    kind: PredictionKind,
    observational: bool,
    condition: Option<String>,
}

fn na(reason: &str) -> Outcome {
    Outcome { kind: PredictionKind::NotApplicable(reason.to_string()), observational: false, condition: None }
}

fn claim(kind: PredictionKind, condition: &str) -> Outcome {
    Outcome { kind, observational: false, condition: Some(condition.to_string()) }
}

fn observe(kind: PredictionKind, condition: &str) -> Outcome {
    Outcome { kind, observational: true, condition: Some(condition.to_string()) }
}

fn pcn_iff(pcn: bool, condition: &str) -> Outcome {
    claim(if pcn { PredictionKind::PcN } else { PredictionKind::NotPcN }, condition)
}

/// Evaluates a rule's hypotheses over `field` at `c` and returns its claim,
/// or `NotApplicable` naming the first failed hypothesis. Arithmetic
/// hypotheses are checked before conditions on `c`.
pub fn theorem_predict(rule: RuleId, field: &Field, k: Option<u32>, c: Element) -> Result<Prediction> {
    if !field.contains(c) {
        return Err(Error::FieldMismatch);
    }
    let p = field.characteristic();
    let n = field.degree();
    let d = rule.exponent(p, n, k);
    let out = match d {
        Err(reason) => na(reason),
        Ok(_) => evaluate(rule, field, k, c)?,
    };
    Ok(Prediction {
        kind: out.kind,
        source: rule,
        params: Params { p, n, k, d: d.ok(), c: c.index(), condition: out.condition },
        observational: out.observational,
    })
}

fn evaluate(rule: RuleId, field: &Field, k: Option<u32>, c: Element) -> Result<Outcome> {
    use PredictionKind::*;
    let p = field.characteristic();
    let n = field.degree();
    let q = field.order();
    let g = k.map(|k| gcd(k as u64, n as u64) as u32).unwrap_or(0);
    let is_one = c == Element::ONE;
    let is_zero = c.is_zero();
    let is_minus_one = c == field.minus_one();
    Ok(match rule {
        RuleId::Gold => {
            if p != 2 {
                na("p_not_2")
            } else if g != 1 {
                na("gcd_k_n_not_1")
            } else if is_one {
                na("c_is_one")
            } else if is_zero {
                observe(Exact(3), "zero")
            } else {
                claim(Exact(3), "ne1 & !zero")
            }
        }
        RuleId::Pk1 => {
            if is_one {
                na("c_is_one")
            } else if !field.in_subfield(c, g) {
                na("c_not_in_subfield")
            } else {
                let e = gcd_pk1(p, k.unwrap_or(1), n);
                claim(Exact(e as u32), &format!("ne1 & subfield:{g}"))
            }
        }
        RuleId::Pk1HalfPcn | RuleId::Prior3kHalf => {
            if !is_minus_one {
                na("c_not_minus_one")
            } else {
                pcn_iff((k.unwrap_or(0) / g) % 2 == 0, "minus1")
            }
        }
        RuleId::Prior3kHalfPrinted => {
            if !is_minus_one {
                na("c_not_minus_one")
            } else {
                let pcn = (n / g) % 2 == 1;
                observe(if pcn { PcN } else { NotPcN }, "minus1")
            }
        }
        RuleId::Pk1HalfApcn => {
            if p != 3 {
                na("p_not_3")
            } else if k.unwrap_or(0) % 2 == 0 {
                na("k_even")
            } else if g != 1 {
                na("gcd_k_n_not_1")
            } else if !is_minus_one {
                na("c_not_minus_one")
            } else {
                claim(APcN, "minus1")
            }
        }
        RuleId::TwoPnThird => {
            if is_one {
                na("c_is_one")
            } else {
                claim(UpperBound(3), "ne1")
            }
        }
        RuleId::Pn1Half => {
            if is_one || is_minus_one {
                na("c_is_plus_or_minus_one")
            } else if q % 4 == 1 && Atom::ChiRatioSquare.eval(field, c)? {
                claim(UpperBound(2), "ne1 & !minus1 & chi_ratio")
            } else {
                claim(UpperBound(4), "ne1 & !minus1")
            }
        }
        RuleId::Pn3Half => {
            if p <= 3 {
                na("p_le_3")
            } else if !is_minus_one {
                na("c_not_minus_one")
            } else if q % 4 == 3 {
                claim(UpperBound(3), "minus1")
            } else {
                claim(UpperBound(4), "minus1")
            }
        }
        RuleId::PnMinus3Half => {
            if !is_minus_one {
                na("c_not_minus_one")
            } else {
                claim(UpperBound(4), "minus1")
            }
        }
        RuleId::Conjecture47 | RuleId::PriorP2Half => {
            if rule == RuleId::PriorP2Half && n % 2 == 0 {
                na("n_even")
            } else if !is_minus_one {
                na("c_not_minus_one")
            } else {
                claim(PcN, "minus1")
            }
        }
        RuleId::PriorP2MinusP1 => {
            if n != 3 {
                na("n_not_3")
            } else if !is_minus_one {
                na("c_not_minus_one")
            } else {
                claim(PcN, "minus1")
            }
        }
        RuleId::PriorSquare => {
            if is_one {
                na("c_is_one")
            } else if p == 2 {
                observe(Exact(2), "ne1")
            } else {
                claim(Exact(2), "ne1")
            }
        }
        RuleId::PriorInverseC0 => {
            if !is_zero {
                na("c_not_zero")
            } else {
                claim(PcN, "zero")
            }
        }
        RuleId::PriorInverseChar2 => {
            if p != 2 {
                na("p_not_2")
            } else if is_zero {
                na("c_is_zero")
            } else {
                let (kind, cond) = if Atom::Traces(1, 1).eval(field, c)? {
                    (Exact(2), "tr:1,1")
                } else {
                    (Exact(3), "!tr:1,1")
                };
                // c = 1 is ordinary differential uniformity, outside the
                // source result but inside the tabulated condition
                if is_one {
                    observe(kind, cond)
                } else {
                    claim(kind, cond)
                }
            }
        }
        RuleId::PriorInverseOdd => {
            let apcn = CCondition::Any(vec![
                Atom::FourOrInverse.into(),
                Atom::Chis(Sign::Minus, Sign::Minus).into(),
            ]);
            if p == 2 {
                na("p_not_odd")
            } else if is_zero {
                na("c_is_zero")
            } else {
                let (kind, cond) = if apcn.eval(field, c)? {
                    (Exact(2), apcn.to_string())
                } else {
                    (Exact(3), format!("!{apcn}"))
                };
                if is_one {
                    observe(kind, &cond)
                } else {
                    claim(kind, &cond)
                }
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleInfo {
    pub rule_id: RuleId,
    pub hypotheses: &'static str,
    pub claim: &'static str,
    pub anchor: &'static str,
    pub provenance: Provenance,
}

/// Every registered rule with its human-readable hypotheses and claim.
pub fn catalogue() -> Vec<RuleInfo> {
    RuleId::ALL
        .into_iter()
        .map(|r| RuleInfo {
            rule_id: r,
            hypotheses: r.hypotheses(),
            claim: r.claim(),
            anchor: r.anchor(),
            provenance: r.provenance(),
        })
        .collect()
}
