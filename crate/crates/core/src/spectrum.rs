//! c-derivatives, c-DDT rows and tables, and c-differential uniformity.
//!
//! For `F: GF(q) -> GF(q)`, `a, b, c` in GF(q), the c-DDT entry is
//! `#{x : F(x + a) - c F(x) = b}`. The c-differential uniformity is the
//! largest entry, where the row `a = 0` is skipped exactly when `c = 1`.
//!
//! Power maps `x^d` with `c != 1` take a fast path: every row `a != 0` is a
//! permutation of row `a = 1` (`b -> b / a^d`), and row `a = 0` is known in
//! closed form (`1` at `b = 0`, `gcd(d, q-1)` on the `b` with `b/(1-c)` a
//! d-th power, `0` elsewhere). Everything else is a full sweep.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{Element, Field};

/// Default number of witnesses kept at the maximum.
pub const DEFAULT_WITNESSES: usize = 4;
/// Default largest `q` for which a full c-DDT is materialised.
pub const DEFAULT_DDT_BUDGET: u64 = 1 << 13;

/// A function GF(q) -> GF(q).
pub trait Mapping: Sync {
    /// `F(x)` for every `x`, in canonical order.
    fn value_table(&self, field: &Field) -> Result<Vec<Element>>;

    fn eval(&self, field: &Field, x: Element) -> Element;

    /// The exponent when the function is a monomial `x^d`.
    fn exponent(&self) -> Option<u64> {
        None
    }

    /// `d=<d>` for power maps, `sha256:<hex>` for tables.
    fn label(&self) -> String;
}

/// `F(x) = x^d`, `d >= 1`. The exponent is kept as given; reduction modulo
/// `q - 1` happens inside [`Field::pow`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerMap {
    d: u64,
}

impl PowerMap {
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidExponent);
        }
        Ok(PowerMap { d })
    }

    pub fn d(&self) -> u64 {
        self.d
    }
}

impl Mapping for PowerMap {
    fn value_table(&self, field: &Field) -> Result<Vec<Element>> {
        Ok(field.elements().map(|x| field.pow(x, self.d)).collect())
    }

    fn eval(&self, field: &Field, x: Element) -> Element {
        field.pow(x, self.d)
    }

    fn exponent(&self) -> Option<u64> {
        Some(self.d)
    }

    fn label(&self) -> String {
        format!("d={}", self.d)
    }
}

/// A function given by its lookup table: position `i` holds the canonical
/// index of `F(element i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMap {
    table: Vec<Element>,
}

impl TableMap {
    pub fn new(field: &Field, indices: &[u64]) -> Result<Self> {
        if indices.len() as u64 != field.order() {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                field.order(),
                indices.len()
            )));
        }
        let table = indices
            .iter()
            .map(|&i| {
                field
                    .element(i)
                    .map_err(|_| Error::InvalidTable(format!("entry {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TableMap { table })
    }

    /// Tabulates any mapping.
    pub fn from_mapping<M: Mapping + ?Sized>(field: &Field, f: &M) -> Result<Self> {
        Ok(TableMap { table: f.value_table(field)? })
    }

    /// One canonical index per line; blank lines and `#` comments are
    /// ignored.
    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let indices = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.parse::<u64>()
                    .map_err(|_| Error::InvalidTable(format!("`{l}` is not an index")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, &indices)
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    fn canonical_text(&self) -> String {
        let mut s = String::with_capacity(self.table.len() * 4);
        for e in &self.table {
            s.push_str(&e.index().to_string());
            s.push('\n');
        }
        s
    }
}

impl Mapping for TableMap {
    fn value_table(&self, field: &Field) -> Result<Vec<Element>> {
        if self.table.len() as u64 != field.order() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.table.clone())
    }

    fn eval(&self, _field: &Field, x: Element) -> Element {
        self.table[x.index() as usize]
    }

    fn label(&self) -> String {
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        format!("sha256:{}", hex::encode(digest))
    }
}

/// One `(a, b)` cell at the maximum, with every solution `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: u32,
    pub b: u32,
    pub solutions: Vec<u32>,
}

/// Outcome of a uniformity computation for one `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumResult {
    pub c: Element,
    /// Value `v` -> number of `(a, b)` pairs in the a-range with entry `v`.
    pub counts: BTreeMap<u32, u64>,
    pub uniformity: u32,
    pub witnesses: Vec<Witness>,
}

impl SpectrumResult {
    pub fn classify(&self) -> Classification {
        classify(self.uniformity)
    }

    /// Serializable view with a stable key order.
    pub fn report<M: Mapping + ?Sized>(&self, field: &Field, f: &M) -> SpectrumReport {
        SpectrumReport {
            field: field.spec().to_string(),
            d_or_table_digest: f.label(),
            c: self.c.index(),
            spectrum: self.counts.clone(),
            uniformity: self.uniformity,
            witnesses: self.witnesses.clone(),
        }
    }
}

/// JSON export of a [`SpectrumResult`]. Field order is part of the output
/// format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub field: String,
    pub d_or_table_digest: String,
    pub c: u32,
    pub spectrum: BTreeMap<u32, u64>,
    pub uniformity: u32,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    PcN,
    APcN,
    Other(u32),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::PcN => write!(f, "PcN"),
            Classification::APcN => write!(f, "APcN"),
            Classification::Other(u) => write!(f, "{u}-uniform"),
        }
    }
}

pub fn classify(uniformity: u32) -> Classification {
    match uniformity {
        1 => Classification::PcN,
        2 => Classification::APcN,
        u => Classification::Other(u),
    }
}

/// Whether row `a` belongs to the range the uniformity is taken over.
#[inline]
pub fn row_in_range(c: Element, a: Element) -> bool {
    !(c == Element::ONE && a.is_zero())
}

fn check_elements(field: &Field, elems: &[Element]) -> Result<()> {
    if elems.iter().all(|&e| field.contains(e)) {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

/// `#{x : F(x + a) - c F(x) = b}` by direct enumeration.
pub fn c_derivative_count<M: Mapping + ?Sized>(
    field: &Field,
    f: &M,
    c: Element,
    a: Element,
    b: Element,
) -> Result<u64> {
    check_elements(field, &[c, a, b])?;
    f.value_table(field)?;
    Ok(field
        .elements()
        .filter(|&x| {
            let lhs = field.sub(f.eval(field, field.add(x, a)), field.mul(c, f.eval(field, x)));
            lhs == b
        })
        .count() as u64)
}

/// `(x + 1)^d - c x^d`.
pub fn delta_at(field: &Field, f: &PowerMap, c: Element, x: Element) -> Element {
    let d = f.d();
    field.sub(
        field.pow(field.add(x, Element::ONE), d),
        field.mul(c, field.pow(x, d)),
    )
}

/// Precomputed `F(x)` and `-c F(x)` for repeated row sweeps.
struct Derivative<'a> {
    field: &'a Field,
    values: Vec<Element>,
    neg_c_values: Vec<Element>,
}

impl<'a> Derivative<'a> {
    fn new<M: Mapping + ?Sized>(field: &'a Field, f: &M, c: Element) -> Result<Self> {
        check_elements(field, &[c])?;
        let values = f.value_table(field)?;
        let neg_c_values = values
            .iter()
            .map(|&v| field.neg(field.mul(c, v)))
            .collect();
        Ok(Derivative { field, values, neg_c_values })
    }

    #[inline]
    fn at(&self, a: Element, x: Element) -> Element {
        let shifted = self.field.add(x, a);
        self.field.add(
            self.values[shifted.index() as usize],
            self.neg_c_values[x.index() as usize],
        )
    }

    fn row_into(&self, a: Element, counts: &mut [u32]) {
        counts.fill(0);
        for x in self.field.elements() {
            counts[self.at(a, x).index() as usize] += 1;
        }
    }

    fn solutions(&self, a: Element, b: Element) -> Vec<u32> {
        self.field
            .elements()
            .filter(|&x| self.at(a, x) == b)
            .map(Element::index)
            .collect()
    }
}

/// Counts of `F(x + a) - c F(x)` over all `x`, indexed by `b`. Sums to `q`.
pub fn row_spectrum<M: Mapping + ?Sized>(
    field: &Field,
    f: &M,
    c: Element,
    a: Element,
) -> Result<Vec<u32>> {
    check_elements(field, &[a])?;
    let der = Derivative::new(field, f, c)?;
    let mut counts = vec![0u32; field.order() as usize];
    der.row_into(a, &mut counts);
    Ok(counts)
}

/// Histogram of a row: value -> number of `b` with that count.
pub fn row_histogram(row: &[u32]) -> BTreeMap<u32, u64> {
    let mut h = BTreeMap::new();
    for &v in row {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}

/// c-differential uniformity with the default witness limit.
pub fn uniformity<M: Mapping + ?Sized>(field: &Field, f: &M, c: Element) -> Result<SpectrumResult> {
    uniformity_with(field, f, c, DEFAULT_WITNESSES)
}

/// Power maps with `c != 1` use the row-1 reduction; all other inputs are
/// swept in full.
pub fn uniformity_with<M: Mapping + ?Sized>(
    field: &Field,
    f: &M,
    c: Element,
    witness_limit: usize,
) -> Result<SpectrumResult> {
    match f.exponent() {
        Some(d) if c != Element::ONE => power_fast_path(field, f, d, c, witness_limit),
        _ => full_sweep(field, f, c, witness_limit),
    }
}

fn power_fast_path<M: Mapping + ?Sized>(
    field: &Field,
    f: &M,
    d: u64,
    c: Element,
    witness_limit: usize,
) -> Result<SpectrumResult> {
    let q = field.order();
    let der = Derivative::new(field, f, c)?;
    let mut row1 = vec![0u32; q as usize];
    der.row_into(Element::ONE, &mut row1);

    let g = gcd(d, q - 1);
    let dth_powers = (q - 1) / g;
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for (v, k) in row_histogram(&row1) {
        *counts.entry(v).or_insert(0) += k * (q - 1);
    }
    *counts.entry(1).or_insert(0) += 1;
    *counts.entry(g as u32).or_insert(0) += dth_powers;
    if q - 1 > dth_powers {
        *counts.entry(0).or_insert(0) += q - 1 - dth_powers;
    }

    let max1 = row1.iter().copied().max().unwrap_or(0);
    let uniformity = max1.max(g as u32);

    let mut witnesses = Vec::new();
    if witness_limit > 0 {
        // row a = 0: F(x)(1 - c) = b
        let one_minus_c = field.sub(Element::ONE, c);
        for b in field.elements() {
            if witnesses.len() >= witness_limit {
                break;
            }
            let entry = if b.is_zero() {
                1
            } else if field.is_dth_power(field.div(b, one_minus_c)?, d)? {
                g as u32
            } else {
                0
            };
            if entry == uniformity {
                witnesses.push(Witness {
                    a: 0,
                    b: b.index(),
                    solutions: der.solutions(Element::ZERO, b),
                });
            }
        }
        for (b, &v) in row1.iter().enumerate() {
            if witnesses.len() >= witness_limit {
                break;
            }
            if v == uniformity {
                let b = Element::from_index_unchecked(b as u32);
                witnesses.push(Witness {
                    a: 1,
                    b: b.index(),
                    solutions: der.solutions(Element::ONE, b),
                });
            }
        }
    }

    Ok(SpectrumResult { c, counts, uniformity, witnesses })
}

struct RowSummary {
    histogram: Vec<(u32, u32)>,
    max: u32,
    argmax: Vec<u32>,
}

fn summarize_row(der: &Derivative<'_>, a: Element, keep: usize, counts: &mut [u32]) -> RowSummary {
    der.row_into(a, counts);
    let max = counts.iter().copied().max().unwrap_or(0);
    let argmax = counts
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v == max)
        .take(keep)
        .map(|(b, _)| b as u32)
        .collect();
    let histogram = row_histogram(counts)
        .into_iter()
        .map(|(v, k)| (v, k as u32))
        .collect();
    RowSummary { histogram, max, argmax }
}

/// Sweeps every row in the a-range. Rows run in parallel; the reduction is
/// in canonical order of `a`.
pub fn full_sweep<M: Mapping + ?Sized>(
    field: &Field,
    f: &M,
    c: Element,
    witness_limit: usize,
) -> Result<SpectrumResult> {
    let q = field.order() as usize;
    let der = Derivative::new(field, f, c)?;
    let rows: Vec<(Element, RowSummary)> = field
        .elements()
        .filter(|&a| row_in_range(c, a))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map_init(
            || vec![0u32; q],
            |buf, a| (a, summarize_row(&der, a, witness_limit, buf)),
        )
        .collect();

    let uniformity = rows.iter().map(|(_, r)| r.max).max().unwrap_or(0);
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    let mut witnesses = Vec::new();
    for (a, row) in &rows {
        for &(v, k) in &row.histogram {
            *counts.entry(v).or_insert(0) += k as u64;
        }
        if row.max == uniformity {
            for &b in &row.argmax {
                if witnesses.len() >= witness_limit {
                    break;
                }
                let b = Element::from_index_unchecked(b);
                witnesses.push(Witness {
                    a: a.index(),
                    b: b.index(),
                    solutions: der.solutions(*a, b),
                });
            }
        }
    }
    Ok(SpectrumResult { c, counts, uniformity, witnesses })
}

/// A complete c-DDT, row-major with `entries[a * q + b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cddt {
    q: usize,
    c: Element,
    entries: Vec<u32>,
}

impl Cddt {
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn get(&self, a: Element, b: Element) -> u32 {
        self.entries[a.index() as usize * self.q + b.index() as usize]
    }

    pub fn row(&self, a: Element) -> &[u32] {
        let start = a.index() as usize * self.q;
        &self.entries[start..start + self.q]
    }

    /// Largest entry over the a-range (row 0 skipped when `c = 1`).
    pub fn max(&self) -> u32 {
        (0..self.q)
            .map(|a| Element::from_index_unchecked(a as u32))
            .filter(|&a| row_in_range(self.c, a))
            .flat_map(|a| self.row(a).iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Header `a,0,1,...,q-1` followed by one line per `a`: the row index
    /// then its counts.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        write!(w, "a")?;
        for b in 0..self.q {
            write!(w, ",{b}")?;
        }
        writeln!(w)?;
        for a in 0..self.q {
            write!(w, "{a}")?;
            for v in &self.entries[a * self.q..(a + 1) * self.q] {
                write!(w, ",{v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// The full table, computed row-parallel. Fails when `q` exceeds `budget`.
pub fn full_cddt<M: Mapping + ?Sized>(
    field: &Field,
    f: &M,
    c: Element,
    budget: u64,
) -> Result<Cddt> {
    let q = field.order();
    if q > budget {
        return Err(Error::BudgetExceeded { q, limit: budget });
    }
    let q = q as usize;
    let der = Derivative::new(field, f, c)?;
    let mut entries = vec![0u32; q * q];
    entries
        .par_chunks_mut(q)
        .enumerate()
        .for_each(|(a, row)| der.row_into(Element::from_index_unchecked(a as u32), row));
    Ok(Cddt { q, c, entries })
}

/// One `(c, uniformity)` pair of an all-c sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub c: u32,
    pub uniformity: u32,
}

impl SweepEntry {
    /// `c = 1` is ordinary differential uniformity.
    pub fn is_classical(&self) -> bool {
        self.c == 1
    }
}

/// Uniformity for every `c` in `c_set` (default: all of GF(q)), in
/// canonical order of `c`.
pub fn all_c_sweep<M: Mapping + ?Sized>(
    field: &Field,
    f: &M,
    c_set: Option<&[Element]>,
) -> Result<Vec<SweepEntry>> {
    let mut cs: Vec<Element> = match c_set {
        Some(s) => s.to_vec(),
        None => field.elements().collect(),
    };
    check_elements(field, &cs)?;
    cs.sort_unstable();
    cs.dedup();
    cs.into_par_iter()
        .map(|c| {
            uniformity_with(field, f, c, 0).map(|r| SweepEntry {
                c: c.index(),
                uniformity: r.uniformity,
            })
        })
        .collect()
}
