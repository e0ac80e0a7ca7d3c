//! Published table values and their reproduction from scratch.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::btp::btp_facet_audit;
use crate::ehrhart::{ehrhart, DilatePolytope, EhrhartFit, RationalPolynomial};
use crate::enumerate::{asms, boolean_triangles, count, magog_matrices, ObjectKind};
use crate::error::{Error, Result};
use crate::hull::vertex_dimension;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::stats::Statistic;
use crate::tables::distribution;

/// The bundled golden file.
pub const GOLDEN_TABLES: &str = include_str!("../golden/tables.golden");

const MAX_DEGREE: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GoldenValue {
    Sequence(Vec<u64>),
    Polynomial(RationalPolynomial),
    /// Left uncomputed by the source table.
    Unpublished,
}

impl fmt::Display for GoldenValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoldenValue::Sequence(v) => f.write_str(&join(v)),
            GoldenValue::Polynomial(p) => write!(f, "{p}"),
            GoldenValue::Unpublished => f.write_str("*"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenRecord {
    pub table: u8,
    pub family: String,
    pub n: usize,
    pub field: String,
    pub value: GoldenValue,
    /// The comment line directly above the record.
    pub provenance: String,
    /// 1-based line number in the source text.
    pub line: usize,
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Parses a polynomial in `t` written as a sum of terms such as
/// `(5/6)t^3`, `t^2`, `3t` or `1`.
pub fn parse_polynomial(text: &str) -> Result<RationalPolynomial> {
    let bad = |why: &str| Error::Parse(format!("{text:?}: {why}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(|| bad("unbalanced parentheses"))?,
            '+' | '-' if depth == 0 && k > start => {
                terms.push(&s[start..k]);
                start = k;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(bad("unbalanced parentheses"));
    }
    terms.push(&s[start..]);

    let mut coeffs: Vec<Rational> = Vec::new();
    for term in terms {
        let (negative, body) = match term.as_bytes().first() {
            Some(b'+') => (false, &term[1..]),
            Some(b'-') => (true, &term[1..]),
            _ => (false, term),
        };
        let (coeff, rest) = if let Some(inner) = body.strip_prefix('(') {
            let close = inner.find(')').ok_or_else(|| bad("unbalanced parentheses"))?;
            (Some(parse_rational(&inner[..close])?), &inner[close + 1..])
        } else {
            let end = body.find('t').unwrap_or(body.len());
            let c = &body[..end];
            (if c.is_empty() { None } else { Some(parse_rational(c)?) }, &body[end..])
        };
        let degree = match rest {
            "" => 0,
            "t" => 1,
            _ => {
                let k = rest.strip_prefix("t^").ok_or_else(|| bad("malformed term"))?;
                if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad("malformed exponent"));
                }
                k.parse::<usize>().ok().filter(|&k| k <= MAX_DEGREE).ok_or_else(|| bad("exponent too large"))?
            }
        };
        let coeff = match coeff {
            Some(c) => c,
            None if degree > 0 => Rational::from_integer(1.into()),
            None => return Err(bad("empty term")),
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, Rational::default());
        }
        coeffs[degree] += if negative { -coeff } else { coeff };
    }
    Ok(RationalPolynomial::new(coeffs))
}

fn parse_record(body: &str, provenance: &str, line: usize) -> Result<GoldenRecord> {
    let bad = |why: String| Error::Parse(format!("line {line}: {why}"));
    let (head, value) = body.split_once('=').ok_or_else(|| bad("missing '='".into()))?;
    let words: Vec<&str> = head.split_whitespace().collect();
    let [table, family, n, field] = words[..] else {
        return Err(bad("expected <table> <family> <n> <field>".into()));
    };
    let table = table
        .strip_prefix("table")
        .and_then(|t| t.parse::<u8>().ok())
        .filter(|t| (1..=9).contains(t))
        .ok_or_else(|| bad(format!("unknown table {table:?}")))?;
    let n = n.parse::<usize>().map_err(|_| bad(format!("bad order {n:?}")))?;
    let value = value.trim();
    let value = if value == "*" {
        GoldenValue::Unpublished
    } else if field == "ehrhart" {
        GoldenValue::Polynomial(parse_polynomial(value)?)
    } else {
        let seq = value
            .split(',')
            .map(|v| v.trim().parse::<u64>().map_err(|_| bad(format!("bad count {v:?}"))))
            .collect::<Result<Vec<_>>>()?;
        GoldenValue::Sequence(seq)
    };
    Ok(GoldenRecord {
        table,
        family: family.to_string(),
        n,
        field: field.to_string(),
        value,
        provenance: provenance.to_string(),
        line,
    })
}

/// Parses golden text. Every record must sit directly below a comment
/// naming its provenance.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenRecord>> {
    let mut records = Vec::new();
    let mut provenance: Option<&str> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            provenance = None;
        } else if let Some(comment) = line.strip_prefix('#') {
            provenance = Some(comment.trim());
        } else {
            let p = provenance
                .take()
                .ok_or_else(|| Error::Parse(format!("line {}: record without a provenance comment", k + 1)))?;
            records.push(parse_record(line, p, k + 1)?);
        }
    }
    Ok(records)
}

pub fn golden_records() -> Result<Vec<GoldenRecord>> {
    parse_golden(GOLDEN_TABLES)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableSelector {
    Table(u8),
    All,
}

impl TableSelector {
    fn includes(self, table: u8) -> bool {
        match self {
            TableSelector::Table(t) => t == table,
            TableSelector::All => true,
        }
    }
}

impl FromStr for TableSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(TableSelector::All);
        }
        s.strip_prefix("table")
            .and_then(|t| t.parse::<u8>().ok())
            .filter(|t| (1..=9).contains(t))
            .map(TableSelector::Table)
            .ok_or_else(|| Error::Parse(format!("unknown table selector {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Match,
    Mismatch,
    /// No independent computation exists for this column.
    NotComputed,
    /// The source leaves the entry blank; the computed value is reported only.
    Unpublished,
}

impl CellStatus {
    pub fn name(self) -> &'static str {
        match self {
            CellStatus::Match => "match",
            CellStatus::Mismatch => "MISMATCH",
            CellStatus::NotComputed => "not computed",
            CellStatus::Unpublished => "unpublished",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub record: GoldenRecord,
    pub computed: Option<String>,
    pub status: CellStatus,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCsv {
    pub table: u8,
    pub csv: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReproductionReport {
    pub tables: Vec<TableCsv>,
    pub cells: Vec<CellDiff>,
}

impl ReproductionReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.status != CellStatus::Mismatch)
    }

    pub fn count(&self, status: CellStatus) -> usize {
        self.cells.iter().filter(|c| c.status == status).count()
    }

    /// One line per golden cell followed by a summary line.
    pub fn diff_report(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let r = &c.record;
            out.push_str(&format!("table{} {} n={} {}: {}", r.table, r.family, r.n, r.field, c.status.name()));
            match c.status {
                CellStatus::Mismatch => {
                    out.push_str(&format!(" (published {}, computed {})", r.value, c.computed.as_deref().unwrap_or("-")))
                }
                CellStatus::Unpublished => {
                    if let Some(v) = &c.computed {
                        out.push_str(&format!(" (computed {v})"));
                    }
                }
                _ => {}
            }
            if let Some(note) = &c.note {
                out.push_str(&format!(" [{note}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} match, {} mismatch, {} not computed, {} unpublished\n",
            self.count(CellStatus::Match),
            self.count(CellStatus::Mismatch),
            self.count(CellStatus::NotComputed),
            self.count(CellStatus::Unpublished)
        ));
        out
    }
}

fn kind_of(family: &str) -> Result<ObjectKind> {
    match family {
        "magog-matrix" | "tsscpp" => Ok(ObjectKind::MagogMatrix),
        "asm" => Ok(ObjectKind::Asm),
        "btp" => Ok(ObjectKind::BooleanTriangle),
        other => Err(Error::Parse(format!("unknown family {other:?}"))),
    }
}

fn statistic_of(field: &str) -> Option<Statistic> {
    Statistic::ALL.into_iter().find(|s| s.name() == field)
}

fn dilate_polytope(family: &str, n: usize) -> Option<DilatePolytope> {
    match (family, n) {
        ("btp", 2..=5) => Some(DilatePolytope::Btp(n)),
        ("tsscpp", 3) => Some(DilatePolytope::Tsscpp3),
        _ => None,
    }
}

#[derive(Default)]
struct Cache {
    fits: HashMap<(String, usize), EhrhartFit>,
    dimensions: HashMap<(String, usize), Option<usize>>,
}

impl Cache {
    fn fit(&mut self, family: &str, n: usize) -> Result<Option<&EhrhartFit>> {
        let Some(p) = dilate_polytope(family, n) else { return Ok(None) };
        let key = (family.to_string(), n);
        if !self.fits.contains_key(&key) {
            // One sample past the degree checks the fit whenever the ceiling allows.
            let ceiling = match p {
                DilatePolytope::Btp(_) => crate::ehrhart::BTP_DILATION_CEILING,
                DilatePolytope::Tsscpp3 => crate::ehrhart::TSSCPP3_DILATION_CEILING,
            };
            let tmax = (p.dimension() as u64 + 1).min(ceiling);
            let (_, fit) = ehrhart(p, tmax)?;
            self.fits.insert(key.clone(), fit);
        }
        Ok(self.fits.get(&key))
    }

    fn dimension(&mut self, family: &str, n: usize) -> Result<Option<usize>> {
        let key = (family.to_string(), n);
        if let Some(d) = self.dimensions.get(&key) {
            return Ok(*d);
        }
        let d = match kind_of(family)? {
            ObjectKind::MagogMatrix => vertex_dimension(&magog_matrices(n)?.collect::<Vec<_>>()),
            ObjectKind::Asm => vertex_dimension(&asms(n)?.collect::<Vec<_>>()),
            _ => vertex_dimension(&boolean_triangles(n)?.collect::<Vec<_>>()),
        };
        self.dimensions.insert(key, d);
        Ok(d)
    }
}

fn compare(record: &GoldenRecord, computed: Option<String>, equal: bool, note: Option<String>) -> CellDiff {
    let status = match (&record.value, &computed) {
        (_, None) => CellStatus::NotComputed,
        (GoldenValue::Unpublished, Some(_)) => CellStatus::Unpublished,
        _ if equal => CellStatus::Match,
        _ => CellStatus::Mismatch,
    };
    CellDiff { record: record.clone(), computed, status, note }
}

fn reproduce_cell(record: &GoldenRecord, cache: &mut Cache) -> Result<CellDiff> {
    let (family, n) = (record.family.as_str(), record.n);
    if let Some(stat) = statistic_of(&record.field) {
        let table = distribution(kind_of(family)?, stat, n)?;
        let equal = record.value == GoldenValue::Sequence(table.counts.clone());
        return Ok(compare(record, Some(join(&table.counts)), equal, None));
    }
    match record.field.as_str() {
        "dimension" => {
            let d = cache.dimension(family, n)?;
            let equal = matches!((&record.value, d), (GoldenValue::Sequence(v), Some(d)) if v[..] == [d as u64]);
            Ok(compare(record, d.map(|d| d.to_string()), equal, None))
        }
        "volume" => {
            let fit = cache.fit(family, n)?;
            let computed = fit.map(|f| {
                let v = &f.normalized_volume;
                if v.is_integer() { v.numer().to_string() } else { format_rational(v) }
            });
            let equal = matches!((&record.value, &computed), (GoldenValue::Sequence(v), Some(c)) if v.len() == 1 && *c == v[0].to_string());
            Ok(compare(record, computed, equal, None))
        }
        "ehrhart" => {
            let fit = cache.fit(family, n)?;
            let equal = matches!((&record.value, fit), (GoldenValue::Polynomial(p), Some(f)) if *p == f.polynomial);
            Ok(compare(record, fit.map(|f| f.polynomial.to_string()), equal, None))
        }
        "f-vector" => {
            let vertices = count(kind_of(family)?, n)?;
            let facets = if family == "btp" {
                let audit = btp_facet_audit(n)?;
                audit.passed().then_some(audit.certified as u64)
            } else {
                None
            };
            let dim = cache.dimension(family, n)?;
            let GoldenValue::Sequence(v) = &record.value else {
                return Ok(compare(record, None, false, None));
            };
            let mut equal = v.len() >= 2 && v[1] == vertices && Some(v.len() - 2) == dim;
            let mut computed = format!("vertices {vertices}");
            if let Some(f) = facets {
                equal &= v[v.len() - 2] == f;
                computed.push_str(&format!(", facets {f}"));
            }
            let note = Some("only vertex and facet entries are computed".to_string());
            Ok(compare(record, Some(computed), equal, note))
        }
        _ => Ok(compare(record, None, false, None)),
    }
}

fn table_csv(table: u8, cells: &[&CellDiff]) -> String {
    let distribution_table = table <= 6;
    let mut out = String::from(if distribution_table { "n,family,statistic,value,count\n" } else { "n,family,field,published,computed,status\n" });
    for c in cells {
        let r = &c.record;
        if distribution_table {
            let Some(stat) = statistic_of(&r.field) else { continue };
            if let Some(computed) = &c.computed {
                for (k, v) in computed.split(',').enumerate() {
                    out.push_str(&format!("{},{},{},{},{}\n", r.n, r.family, r.field, stat.minimum() + k as i64, v));
                }
            }
        } else {
            out.push_str(&format!(
                "{},{},{},\"{}\",\"{}\",{}\n",
                r.n,
                r.family,
                r.field,
                r.value,
                c.computed.as_deref().unwrap_or("not computed"),
                c.status.name()
            ));
        }
    }
    out
}

/// Recomputes every golden cell of the selected tables with order at most
/// `n_max` and diffs it against the published value.
pub fn reproduce_tables(selector: TableSelector, n_max: usize) -> Result<ReproductionReport> {
    let records: Vec<GoldenRecord> =
        golden_records()?.into_iter().filter(|r| selector.includes(r.table) && r.n <= n_max).collect();
    let mut cache = Cache::default();
    let cells = records.iter().map(|r| reproduce_cell(r, &mut cache)).collect::<Result<Vec<_>>>()?;
    let mut tables = Vec::new();
    for table in 1..=9u8 {
        let in_table: Vec<&CellDiff> = cells.iter().filter(|c| c.record.table == table).collect();
        if !in_table.is_empty() {
            tables.push(TableCsv { table, csv: table_csv(table, &in_table) });
        }
    }
    Ok(ReproductionReport { tables, cells })
}
