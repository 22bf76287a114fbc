//! Aggregated grid results and their JSON-lines and text renderings.
//!
//! JSON lines: one object per `(case, c)` with keys `case, rule, p, n, k,
//! d, c, predicted, condition, computed, verdict, holds, witnesses` (the
//! last two only when present), one object per skipped or failed case with
//! keys `case, rule, p, n, k, d, status, reason`, and a final
//! `{"summary": ...}` line.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::Serialize;

use super::{CaseResult, CaseStatus, Outcome, Verdict};
use crate::spectrum::Witness;
use crate::theory::{PredictionKind, RuleId};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RuleTally {
    pub pass: u64,
    pub fail: u64,
    pub observations: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cases: u64,
    pub skipped: u64,
    pub errors: u64,
    pub outcomes: u64,
    pub confirmed: u64,
    pub bound_satisfied: u64,
    pub violated: u64,
    pub observation: u64,
    pub not_applicable: u64,
    pub per_rule: BTreeMap<String, RuleTally>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub results: Vec<CaseResult>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct OutcomeLine<'a> {
    case: usize,
    rule: RuleId,
    p: u64,
    n: u32,
    k: Option<u32>,
    d: Option<u64>,
    c: u32,
    predicted: &'a PredictionKind,
    condition: &'a Option<String>,
    computed: Option<u32>,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    holds: Option<bool>,
    #[serde(skip_serializing_if = "<[Witness]>::is_empty")]
    witnesses: &'a [Witness],
}

#[derive(Serialize)]
struct CaseLine<'a> {
    case: usize,
    rule: RuleId,
    p: u64,
    n: u32,
    k: Option<u32>,
    d: Option<u64>,
    status: &'static str,
    reason: &'a str,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a Summary,
}

impl Report {
    pub fn new(results: Vec<CaseResult>) -> Self {
        let mut s = Summary { cases: results.len() as u64, ..Summary::default() };
        for r in &results {
            match r.status {
                CaseStatus::Ran => {}
                CaseStatus::Skipped(_) => s.skipped += 1,
                CaseStatus::Error(_) => s.errors += 1,
            }
            let tally = s.per_rule.entry(r.case.rule.to_string()).or_default();
            for o in &r.outcomes {
                s.outcomes += 1;
                match o.verdict {
                    Verdict::Confirmed => {
                        s.confirmed += 1;
                        tally.pass += 1;
                    }
                    Verdict::BoundSatisfied => {
                        s.bound_satisfied += 1;
                        tally.pass += 1;
                    }
                    Verdict::Violated => {
                        s.violated += 1;
                        tally.fail += 1;
                    }
                    Verdict::Observation => {
                        s.observation += 1;
                        tally.observations += 1;
                    }
                    Verdict::NotApplicable => s.not_applicable += 1,
                }
            }
        }
        Report { results, summary: s }
    }

    pub fn has_violations(&self) -> bool {
        self.summary.violated > 0
    }

    pub fn violations(&self) -> impl Iterator<Item = (&CaseResult, &Outcome)> {
        self.results.iter().flat_map(|r| r.violations().map(move |o| (r, o)))
    }

    pub fn observations(&self) -> impl Iterator<Item = (&CaseResult, &Outcome)> {
        self.results.iter().flat_map(|r| {
            r.outcomes
                .iter()
                .filter(|o| o.verdict == Verdict::Observation)
                .map(move |o| (r, o))
        })
    }

    /// Writes the report as JSON lines. With `skip_not_applicable`, outcomes
    /// where the rule did not apply are left out.
    pub fn write_jsonl<W: Write>(&self, mut w: W, skip_not_applicable: bool) -> io::Result<()> {
        for (i, r) in self.results.iter().enumerate() {
            let case = &r.case;
            let (status, reason) = match &r.status {
                CaseStatus::Ran => ("ran", ""),
                CaseStatus::Skipped(m) => ("skipped", m.as_str()),
                CaseStatus::Error(m) => ("error", m.as_str()),
            };
            if status != "ran" {
                let line = CaseLine {
                    case: i,
                    rule: case.rule,
                    p: case.p,
                    n: case.n,
                    k: case.k,
                    d: r.d,
                    status,
                    reason,
                };
                serde_json::to_writer(&mut w, &line)?;
                writeln!(w)?;
                continue;
            }
            for o in &r.outcomes {
                if skip_not_applicable && o.verdict == Verdict::NotApplicable {
                    continue;
                }
                let line = OutcomeLine {
                    case: i,
                    rule: case.rule,
                    p: case.p,
                    n: case.n,
                    k: case.k,
                    d: r.d,
                    c: o.c,
                    predicted: &o.predicted,
                    condition: &o.condition,
                    computed: o.computed,
                    verdict: o.verdict,
                    holds: o.holds,
                    witnesses: &o.witnesses,
                };
                serde_json::to_writer(&mut w, &line)?;
                writeln!(w)?;
            }
        }
        serde_json::to_writer(&mut w, &SummaryLine { summary: &self.summary })?;
        writeln!(w)
    }

    /// Human-readable rendering: one line per case, then violations with
    /// witnesses, observations and totals.
    pub fn write_text<W: Write>(&self, mut w: W) -> io::Result<()> {
        for r in &self.results {
            let case = &r.case;
            let k = case.k.map(|k| format!(" k={k}")).unwrap_or_default();
            let d = r.d.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
            write!(w, "{:<24} GF({}^{}){k} d={d} c={}: ", case.rule, case.p, case.n, case.c)?;
            match &r.status {
                CaseStatus::Skipped(m) => writeln!(w, "skipped ({m})")?,
                CaseStatus::Error(m) => writeln!(w, "error ({m})")?,
                CaseStatus::Ran => {
                    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
                    for o in &r.outcomes {
                        *counts.entry(o.verdict.as_str()).or_default() += 1;
                    }
                    let parts: Vec<String> = counts.iter().map(|(v, n)| format!("{n} {v}")).collect();
                    writeln!(w, "{}", parts.join(", "))?;
                }
            }
        }
        for (r, o) in self.violations() {
            writeln!(
                w,
                "VIOLATED {} GF({}^{}) d={} c={}: predicted {}, computed {}",
                r.case.rule,
                r.case.p,
                r.case.n,
                r.d.unwrap_or(0),
                o.c,
                o.predicted,
                o.computed.unwrap_or(0)
            )?;
            for wit in &o.witnesses {
                writeln!(w, "  a={} b={} x={:?}", wit.a, wit.b, wit.solutions)?;
            }
        }
        for (r, o) in self.observations() {
            writeln!(
                w,
                "observation {} GF({}^{}) d={} c={}: recorded {}, computed {}{}",
                r.case.rule,
                r.case.p,
                r.case.n,
                r.d.unwrap_or(0),
                o.c,
                o.predicted,
                o.computed.unwrap_or(0),
                if o.holds == Some(true) { "" } else { " (differs)" }
            )?;
        }
        let s = &self.summary;
        writeln!(
            w,
            "{} cases ({} skipped, {} errors): {} confirmed, {} bound-satisfied, {} violated, {} observations, {} not applicable",
            s.cases, s.skipped, s.errors, s.confirmed, s.bound_satisfied, s.violated, s.observation, s.not_applicable
        )
    }
}
