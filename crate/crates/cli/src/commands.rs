use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use cdiff::harness::{self, CSelector, Report, TheoremCase, SWEEP_BUDGET};
use cdiff::spectrum::{self, Mapping, PowerMap, TableMap, DEFAULT_DDT_BUDGET};
use cdiff::theory::{self, PredictionKind, RuleId};
use cdiff::{Element, Error, Field, FieldSpec, Result};

use crate::args::{CliConfig, Command, Format, FunctionArg};

pub enum Status {
    Ok,
    Violated,
}

pub fn run(cmd: &Command, cfg: &CliConfig, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        Command::FieldInfo { field } => field_info(field, cfg, out),
        Command::Uniformity { field, function, c } => uniformity(field, function, c, cfg, out),
        Command::Spectrum { field, function, c } => spectrum_cmd(field, function, c, cfg, out),
        Command::Ddt { field, function, c } => ddt(field, function, c, cfg, out),
        Command::Verify { grid, rule, field, k, d, c, expect } => {
            verify(grid.as_deref(), rule.as_deref(), field.as_deref(), *k, *d, c, expect.as_deref(), cfg, out)
        }
        Command::Search { field, u_max, c, no_dedupe } => search(field, *u_max, c, !no_dedupe, cfg, out),
        Command::Conjecture { p, n } => conjecture(*p, *n, cfg, out),
        Command::Rules => rules(cfg, out),
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn load_function(field: &Field, f: &FunctionArg) -> Result<Box<dyn Mapping>> {
    match (&f.d, &f.table) {
        (Some(d), _) => Ok(Box::new(PowerMap::new(*d)?)),
        (None, Some(path)) => Ok(Box::new(TableMap::parse(field, &read(path)?)?)),
        (None, None) => Err(Error::Parse("one of --d or --table is required".into())),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn single_c(field: &Field, c: &str) -> Result<Element> {
    match c.parse::<CSelector>()? {
        sel @ CSelector::Single(_) => Ok(sel.resolve(field)?[0]),
        _ => Err(Error::Parse(format!("expected a single c, got `{c}`"))),
    }
}

#[derive(Serialize)]
struct FieldInfo {
    spec: String,
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: u32,
    generator_coeffs: Vec<u64>,
}

fn field_info(spec: &str, cfg: &CliConfig, out: &mut dyn Write) -> Result<Status> {
    let f = Field::parse(spec)?;
    let g = f.multiplicative_generator();
    let info = FieldInfo {
        spec: f.spec().to_string(),
        p: f.characteristic(),
        n: f.degree(),
        q: f.order(),
        modulus: f.modulus().to_vec(),
        generator: g.index(),
        generator_coeffs: f.coeffs(g),
    };
    match cfg.format {
        Format::Json => json_line(out, &info)?,
        Format::Csv => {
            writeln!(out, "spec,p,n,q,modulus,generator")?;
            let m: Vec<String> = info.modulus.iter().map(u64::to_string).collect();
            // the spec itself contains commas
            writeln!(out, "\"{}\",{},{},{},{},{}", info.spec, info.p, info.n, info.q, m.join(" "), info.generator)?;
        }
        Format::Text => {
            let m: Vec<String> = info.modulus.iter().map(u64::to_string).collect();
            let gc: Vec<String> = info.generator_coeffs.iter().map(u64::to_string).collect();
            writeln!(out, "field      GF({}^{}), q = {}", info.p, info.n, info.q)?;
            writeln!(out, "modulus    {} (constant term first)", m.join(","))?;
            writeln!(out, "generator  {} (coefficients {})", info.generator, gc.join(","))?;
            writeln!(out, "spec       {}", info.spec)?;
        }
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct UniformityRow {
    c: u32,
    uniformity: u32,
    class: String,
    note: &'static str,
}

fn uniformity(spec: &str, function: &FunctionArg, c: &str, cfg: &CliConfig, out: &mut dyn Write) -> Result<Status> {
    let field = Field::parse(spec)?;
    let f = load_function(&field, function)?;
    let cs = c.parse::<CSelector>()?.resolve(&field)?;
    let rows: Vec<UniformityRow> = spectrum::all_c_sweep(&field, f.as_ref(), Some(&cs))?
        .into_iter()
        .map(|e| UniformityRow {
            c: e.c,
            uniformity: e.uniformity,
            class: spectrum::classify(e.uniformity).to_string(),
            note: if e.is_classical() {
                "classical"
            } else if e.c == 0 {
                "c=0"
            } else {
                ""
            },
        })
        .collect();
    match cfg.format {
        Format::Json => json_line(out, &rows)?,
        Format::Csv => {
            writeln!(out, "c,uniformity,class,note")?;
            for r in &rows {
                writeln!(out, "{},{},{},{}", r.c, r.uniformity, r.class, r.note)?;
            }
        }
        Format::Text => {
            for r in &rows {
                writeln!(out, "c={:<6} {:>4}  {:<12} {}", r.c, r.uniformity, r.class, r.note)?;
            }
        }
    }
    Ok(Status::Ok)
}

fn spectrum_cmd(spec: &str, function: &FunctionArg, c: &str, cfg: &CliConfig, out: &mut dyn Write) -> Result<Status> {
    let field = Field::parse(spec)?;
    let f = load_function(&field, function)?;
    let c = single_c(&field, c)?;
    let rep = harness::spectrum_report(&field, f.as_ref(), c)?;
    match cfg.format {
        Format::Json => json_line(out, &rep)?,
        Format::Csv => {
            writeln!(out, "value,pairs")?;
            for (v, k) in &rep.spectrum {
                writeln!(out, "{v},{k}")?;
            }
        }
        Format::Text => {
            writeln!(out, "{} {} c={}: uniformity {} ({})", rep.field, rep.d_or_table_digest, rep.c, rep.uniformity, spectrum::classify(rep.uniformity))?;
            for (v, k) in &rep.spectrum {
                writeln!(out, "  {v}: {k}")?;
            }
            for w in &rep.witnesses {
                writeln!(out, "  witness a={} b={} x={:?}", w.a, w.b, w.solutions)?;
            }
        }
    }
    Ok(Status::Ok)
}

fn ddt(spec: &str, function: &FunctionArg, c: &str, cfg: &CliConfig, out: &mut dyn Write) -> Result<Status> {
    let field = Field::parse(spec)?;
    let f = load_function(&field, function)?;
    let c = single_c(&field, c)?;
    let table = spectrum::full_cddt(&field, f.as_ref(), c, cfg.budget.unwrap_or(DEFAULT_DDT_BUDGET))?;
    match cfg.format {
        Format::Json => {
            let rows: Vec<&[u32]> = field.elements().map(|a| table.row(a)).collect();
            json_line(out, &rows)?;
        }
        Format::Csv | Format::Text => table.write_csv(&mut *out)?,
    }
    Ok(Status::Ok)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    grid: Option<&Path>,
    rule: Option<&str>,
    field: Option<&str>,
    k: Option<u32>,
    d: Option<u64>,
    c: &str,
    expect: Option<&str>,
    cfg: &CliConfig,
    out: &mut dyn Write,
) -> Result<Status> {
    let report = match rule {
        Some(rule) => {
            let spec: FieldSpec = field.unwrap_or_default().parse()?;
            let case = TheoremCase {
                rule: rule.parse::<RuleId>()?,
                p: spec.p,
                n: spec.n,
                k,
                d,
                c: c.parse()?,
                budget: cfg.budget,
                expect: expect.map(str::parse::<PredictionKind>).transpose()?,
            };
            Report::new(vec![harness::run_case(&case)?])
        }
        None => {
            let mut g = match grid {
                Some(path) => harness::parse_grid(&read(path)?)?,
                None => harness::default_grid(),
            };
            for case in &mut g.cases {
                case.budget = case.budget.or(cfg.budget);
            }
            harness::run_grid(&g.cases)
        }
    };
    match cfg.format {
        Format::Json => report.write_jsonl(&mut *out, false)?,
        Format::Text => report.write_text(&mut *out)?,
        Format::Csv => {
            writeln!(out, "case,rule,p,n,k,d,c,predicted,computed,verdict")?;
            for (i, r) in report.results.iter().enumerate() {
                for o in &r.outcomes {
                    let opt = |v: Option<String>| v.unwrap_or_default();
                    writeln!(
                        out,
                        "{i},{},{},{},{},{},{},{},{},{}",
                        r.case.rule,
                        r.case.p,
                        r.case.n,
                        opt(r.case.k.map(|k| k.to_string())),
                        opt(r.d.map(|d| d.to_string())),
                        o.c,
                        o.predicted,
                        opt(o.computed.map(|u| u.to_string())),
                        o.verdict.as_str()
                    )?;
                }
            }
        }
    }
    if report.has_violations() {
        for (r, o) in report.violations() {
            eprintln!(
                "violated: {} GF({}^{}) c={}: predicted {}, computed {}",
                r.case.rule,
                r.case.p,
                r.case.n,
                o.c,
                o.predicted,
                o.computed.unwrap_or(0)
            );
        }
        return Ok(Status::Violated);
    }
    if report.summary.errors > 0 {
        return Err(Error::Parse(format!("{} case(s) could not be run", report.summary.errors)));
    }
    Ok(Status::Ok)
}

fn search(spec: &str, u_max: u32, c: &str, dedupe: bool, cfg: &CliConfig, out: &mut dyn Write) -> Result<Status> {
    let field = Field::parse(spec)?;
    let sel: CSelector = c.parse()?;
    let hits = harness::search(&field, u_max, &sel, dedupe, cfg.budget.unwrap_or(SWEEP_BUDGET))?;
    match cfg.format {
        Format::Json => json_line(out, &hits)?,
        Format::Csv => {
            writeln!(out, "uniformity,d,c")?;
            for h in &hits {
                writeln!(out, "{},{},{}", h.uniformity, h.d, h.c)?;
            }
        }
        Format::Text => {
            for h in &hits {
                writeln!(out, "d={:<8} c={:<6} uniformity {}", h.d, h.c, h.uniformity)?;
            }
            writeln!(out, "{} hits", hits.len())?;
        }
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct ConjectureCheck {
    p: u64,
    n: u32,
    d: u64,
    d_inv: u64,
    inverse_check: bool,
    uniformity: u32,
    class: String,
}

fn conjecture(p: u64, n: u32, cfg: &CliConfig, out: &mut dyn Write) -> Result<Status> {
    let id = theory::inverse_exponent_identity(p, n)?;
    let q = p.pow(n);
    let limit = cfg.budget.unwrap_or(DEFAULT_DDT_BUDGET);
    if q > limit {
        return Err(Error::BudgetExceeded { q, limit });
    }
    let field = Field::new(p, n, None)?;
    let u = spectrum::uniformity(&field, &PowerMap::new(id.d)?, field.minus_one())?.uniformity;
    let r = ConjectureCheck {
        p,
        n,
        d: id.d,
        d_inv: id.d_inv,
        inverse_check: id.check,
        uniformity: u,
        class: spectrum::classify(u).to_string(),
    };
    match cfg.format {
        Format::Json => json_line(out, &r)?,
        Format::Csv => {
            writeln!(out, "p,n,d,d_inv,inverse_check,uniformity,class")?;
            writeln!(out, "{},{},{},{},{},{},{}", r.p, r.n, r.d, r.d_inv, r.inverse_check, r.uniformity, r.class)?;
        }
        Format::Text => {
            writeln!(out, "GF({p}^{n}): d = {}, d^-1 = {} mod q-1 ({})", r.d, r.d_inv, if r.inverse_check { "ok" } else { "FAILED" })?;
            writeln!(out, "x^{} at c = -1: uniformity {} ({})", r.d, r.uniformity, r.class)?;
        }
    }
    Ok(if u == 1 && id.check { Status::Ok } else { Status::Violated })
}

fn rules(cfg: &CliConfig, out: &mut dyn Write) -> Result<Status> {
    let cat = theory::catalogue();
    match cfg.format {
        Format::Json | Format::Csv => json_line(out, &cat)?,
        Format::Text => {
            for r in &cat {
                writeln!(out, "{:<24} {}\n{:<24} claim: {}", r.rule_id, r.hypotheses, "", r.claim)?;
            }
        }
    }
    Ok(Status::Ok)
}
