//! Prediction-vs-computation grids, exponent search and report output.
//!
//! A [`TheoremCase`] instantiates one rule at one `(p, n, k)` and a set of
//! multipliers `c`. [`run_case`] predicts and computes each `c` and
//! assigns a [`Verdict`]; [`run_grid`] runs many cases in isolation and
//! aggregates a [`Report`].

mod grid;
mod report;
mod search;
mod selector;

pub use grid::{default_grid, parse_grid, Grid, DESK_GRID};
pub use report::{Report, RuleTally, Summary};
pub use search::{search, SearchHit};
pub use selector::CSelector;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Element, Field};
use crate::spectrum::{self, Mapping, PowerMap, SpectrumReport, Witness};
use crate::theory::{theorem_predict, PredictionKind, RuleId};

/// Largest `q` for which a case sweeps more than one `c`.
pub const SWEEP_BUDGET: u64 = 6561;
/// Largest `q` for a single-`c` case.
pub const SINGLE_BUDGET: u64 = 1 << 13;

/// One rule instantiated at one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremCase {
    pub rule: RuleId,
    pub p: u64,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    /// Explicit exponent; must agree with the rule's formula when that is
    /// defined.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default)]
    pub c: CSelector,
    /// Overrides the default `q` limit for this case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Replaces the rule's claim wherever the rule applies.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "claim_text"
    )]
    pub expect: Option<PredictionKind>,
}

mod claim_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::theory::PredictionKind;

    pub fn serialize<S: Serializer>(v: &Option<PredictionKind>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(k) => s.serialize_str(&k.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<PredictionKind>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

impl TheoremCase {
    pub fn new(rule: RuleId, p: u64, n: u32, k: Option<u32>, c: CSelector) -> Self {
        TheoremCase { rule, p, n, k, d: None, c, budget: None, expect: None }
    }

    /// The `q` limit this case runs under.
    pub fn limit(&self) -> u64 {
        self.budget.unwrap_or(match self.c {
            CSelector::Single(_) => SINGLE_BUDGET,
            _ => SWEEP_BUDGET,
        })
    }

    /// The exponent to test: the explicit one if given, else the rule's.
    pub fn exponent(&self) -> Result<Option<u64>> {
        match (self.d, self.rule.exponent(self.p, self.n, self.k)) {
            (Some(given), Ok(derived)) if given != derived => {
                Err(Error::ExponentMismatch { given, derived })
            }
            (Some(given), _) => Ok(Some(given)),
            (None, derived) => Ok(derived.ok()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    BoundSatisfied,
    Violated,
    Observation,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Confirmed => "confirmed",
            Verdict::BoundSatisfied => "bound-satisfied",
            Verdict::Violated => "violated",
            Verdict::Observation => "observation",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// Prediction and computation for one `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub c: u32,
    pub predicted: PredictionKind,
    /// The c-condition branch that fired.
    pub condition: Option<String>,
    /// `None` when the rule does not apply and nothing was computed.
    pub computed: Option<u32>,
    pub verdict: Verdict,
    /// For observations: whether the recorded claim agreed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    /// Every `(a, b)` cell at the maximum; filled for violations only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum CaseStatus {
    Ran,
    Skipped(String),
    Error(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub case: TheoremCase,
    pub d: Option<u64>,
    pub status: CaseStatus,
    pub outcomes: Vec<Outcome>,
    /// Not serialised, so that reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CaseResult {
    pub fn violations(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.verdict == Verdict::Violated)
    }
}

fn verdict_for(kind: &PredictionKind, u: u32) -> Verdict {
    match (kind, kind.holds_for(u)) {
        (PredictionKind::NotApplicable(_), _) => Verdict::NotApplicable,
        (_, false) => Verdict::Violated,
        (PredictionKind::UpperBound(_), true) => Verdict::BoundSatisfied,
        (_, true) => Verdict::Confirmed,
    }
}

fn evaluate_c(case: &TheoremCase, field: &Field, map: Option<&PowerMap>, c: Element) -> Result<Outcome> {
    let pred = theorem_predict(case.rule, field, case.k, c)?;
    let mut predicted = pred.kind;
    if predicted.is_applicable() && !pred.observational {
        if let Some(e) = &case.expect {
            predicted = e.clone();
        }
    }
    let mut out = Outcome {
        c: c.index(),
        predicted,
        condition: pred.params.condition,
        computed: None,
        verdict: Verdict::NotApplicable,
        holds: None,
        witnesses: Vec::new(),
    };
    let map = match map {
        Some(m) if out.predicted.is_applicable() => m,
        _ => return Ok(out),
    };
    let u = spectrum::uniformity_with(field, map, c, 0)?.uniformity;
    out.computed = Some(u);
    if pred.observational {
        out.verdict = Verdict::Observation;
        out.holds = Some(out.predicted.holds_for(u));
    } else {
        out.verdict = verdict_for(&out.predicted, u);
    }
    if out.verdict == Verdict::Violated {
        out.witnesses = spectrum::full_sweep(field, map, c, usize::MAX)?.witnesses;
    }
    Ok(out)
}

/// Predicts and computes every selected `c`, in canonical order of `c`.
pub fn run_case(case: &TheoremCase) -> Result<CaseResult> {
    let start = Instant::now();
    let q = case
        .p
        .checked_pow(case.n)
        .ok_or(Error::FieldTooLarge { p: case.p, n: case.n })?;
    if q > case.limit() {
        return Err(Error::BudgetExceeded { q, limit: case.limit() });
    }
    let field = Field::new(case.p, case.n, None)?;
    let d = case.exponent()?;
    let map = d.map(PowerMap::new).transpose()?;
    let cs = case.c.resolve(&field)?;
    let outcomes = cs
        .par_iter()
        .map(|&c| evaluate_c(case, &field, map.as_ref(), c))
        .collect::<Result<Vec<_>>>()?;
    Ok(CaseResult {
        case: case.clone(),
        d,
        status: CaseStatus::Ran,
        outcomes,
        wall_time: start.elapsed(),
    })
}

/// Runs every case independently. A case over budget is marked skipped,
/// any other failure is recorded on that case alone.
pub fn run_grid(cases: &[TheoremCase]) -> Report {
    let results = cases
        .par_iter()
        .map(|case| {
            run_case(case).unwrap_or_else(|e| CaseResult {
                case: case.clone(),
                d: case.exponent().ok().flatten(),
                status: match e {
                    Error::BudgetExceeded { .. } => CaseStatus::Skipped(e.to_string()),
                    _ => CaseStatus::Error(e.to_string()),
                },
                outcomes: Vec::new(),
                wall_time: Duration::ZERO,
            })
        })
        .collect();
    Report::new(results)
}

/// Uniformity of `f` at `c` as a serialisable spectrum report.
pub fn spectrum_report<M: Mapping + ?Sized>(field: &Field, f: &M, c: Element) -> Result<SpectrumReport> {
    Ok(spectrum::uniformity(field, f, c)?.report(field, f))
}
