//! Table reproduction: expected cells, the per-cell pipeline, reports in
//! text, JSON and CSV, and certificate replay.

pub mod cache;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{cache_key, Cache, CacheEntry, CACHE_DIR_ENV, CACHE_VERSION};

use crate::error::{Error, Result};
use crate::galois::groups::names_equivalent;
use crate::galois::{
    classify, revalidate, Certainty, Evidence, GaloisConfig, GaloisIdentification,
};
use crate::pade::pade_diagonal;
use crate::poly::IntPoly;
use crate::schur::theorem_expectation;
use crate::series::{scale_to_monic_integer, taylor, SeriesId};

const CELLS: &str = include_str!("../../data/expected_cells.txt");
/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;
/// Orders of the truncated-exponential spot checks.
pub const SCHUR_ORDERS: std::ops::RangeInclusive<usize> = 2..=25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableId {
    ExpPade,
    InvsqrtPade,
    InvsqrtTrunc,
    Atanh2Pade,
    SinSinh,
    SchurTrunc,
}

impl TableId {
    pub const ALL: [TableId; 6] = [
        TableId::ExpPade,
        TableId::InvsqrtPade,
        TableId::InvsqrtTrunc,
        TableId::Atanh2Pade,
        TableId::SinSinh,
        TableId::SchurTrunc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::ExpPade => "exp-pade",
            TableId::InvsqrtPade => "invsqrt-pade",
            TableId::InvsqrtTrunc => "invsqrt-trunc",
            TableId::Atanh2Pade => "atanh2-pade",
            TableId::SinSinh => "sin-sinh",
            TableId::SchurTrunc => "schur-trunc",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            TableId::ExpPade | TableId::InvsqrtPade | TableId::Atanh2Pade => &["P", "Q"],
            TableId::InvsqrtTrunc | TableId::SinSinh => &["T"],
            TableId::SchurTrunc => &["Q"],
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "table",
                name: s.to_string(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    Proven,
    Consistent,
    Evidence,
}

impl FromStr for Requirement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proven" => Ok(Requirement::Proven),
            "consistent" => Ok(Requirement::Consistent),
            "evidence" => Ok(Requirement::Evidence),
            _ => Err(Error::Unknown {
                kind: "requirement",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCell {
    pub table: TableId,
    pub order: usize,
    pub column: String,
    pub expected: String,
    pub requirement: Requirement,
    pub location: String,
}

/// Parses whitespace-separated lines
/// `table order column expected requirement location`; `#` starts a comment.
pub fn parse_expected_cells(text: &str) -> Result<Vec<ExpectedCell>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| Error::Parse(format!("line {}: {m}", i + 1));
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 6 {
            return Err(err("expected 6 fields"));
        }
        let table: TableId = f[0].parse()?;
        let order: usize = f[1].parse().map_err(|_| err("bad order"))?;
        if order == 0 || order > 1000 {
            return Err(err("order out of range"));
        }
        if !table.columns().contains(&f[2]) {
            return Err(err("unknown column"));
        }
        out.push(ExpectedCell {
            table,
            order,
            column: f[2].to_string(),
            expected: f[3].to_string(),
            requirement: f[4].parse()?,
            location: f[5].to_string(),
        });
    }
    Ok(out)
}

fn embedded_cells() -> &'static [ExpectedCell] {
    static C: OnceLock<Vec<ExpectedCell>> = OnceLock::new();
    C.get_or_init(|| parse_expected_cells(CELLS).expect("embedded cells parse"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub id: TableId,
    pub orders: Vec<usize>,
    pub cells: Vec<ExpectedCell>,
}

pub fn table_spec(id: TableId) -> TableSpec {
    let cells: Vec<ExpectedCell> = if id == TableId::SchurTrunc {
        SCHUR_ORDERS
            .map(|n| ExpectedCell {
                table: id,
                order: n,
                column: "Q".into(),
                expected: theorem_expectation(n),
                requirement: Requirement::Proven,
                location: format!("schur-trunc:Q:{n}"),
            })
            .collect()
    } else {
        embedded_cells()
            .iter()
            .filter(|c| c.table == id)
            .cloned()
            .collect()
    };
    let mut orders: Vec<usize> = cells.iter().map(|c| c.order).collect();
    orders.dedup();
    TableSpec { id, orders, cells }
}

/// The polynomial whose Galois group a cell reports.
pub fn cell_polynomial(id: TableId, order: usize, column: &str) -> Result<IntPoly> {
    let pade = |s: SeriesId| -> Result<IntPoly> {
        let p = pade_diagonal(s, order)?;
        match column {
            "P" => Ok(p.numerator),
            "Q" => Ok(p.denominator),
            _ => Err(Error::InvalidArgument(format!("column {column}"))),
        }
    };
    match id {
        TableId::ExpPade => pade(SeriesId::Exp),
        TableId::InvsqrtPade => pade(SeriesId::InvSqrtMinus),
        TableId::Atanh2Pade => pade(SeriesId::Atanh2),
        TableId::InvsqrtTrunc => Ok(taylor(SeriesId::InvSqrtPlus, order).primitive_int()),
        TableId::SinSinh => Ok(taylor(SeriesId::SinPlusSinh, order).primitive_int()),
        TableId::SchurTrunc => Ok(scale_to_monic_integer(order)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Proven,
    Consistent,
    Mismatch,
    Error,
}

impl CellStatus {
    pub fn label(self) -> &'static str {
        match self {
            CellStatus::Proven => "proven",
            CellStatus::Consistent => "consistent",
            CellStatus::Mismatch => "MISMATCH",
            CellStatus::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub column: String,
    pub location: String,
    pub expected: String,
    pub requirement: Requirement,
    pub polynomial: Option<IntPoly>,
    pub degree: Option<usize>,
    pub verdict: Option<GaloisIdentification>,
    pub status: CellStatus,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub order: usize,
    pub cells: Vec<CellReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cells: usize,
    pub proven: usize,
    pub consistent: usize,
    pub mismatch: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub schema: u32,
    pub table: TableId,
    pub prime_bound: u64,
    pub rows: Vec<RowReport>,
    pub summary: Summary,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.summary.mismatch == 0 && self.summary.error == 0
    }

    pub fn cell(&self, order: usize, column: &str) -> Option<&CellReport> {
        self.rows
            .iter()
            .find(|r| r.order == order)?
            .cells
            .iter()
            .find(|c| c.column == column)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ClassifyInput {
    polynomial: IntPoly,
    prime_bound: u64,
}

const CLASSIFY_OP: &str = "galois.classify";

/// `classify` through the cache.
pub fn classify_cached(
    f: &IntPoly,
    prime_bound: u64,
    cache: &Cache,
) -> Result<GaloisIdentification> {
    let input = serde_json::to_string(&ClassifyInput {
        polynomial: f.clone(),
        prime_bound,
    })?;
    let config = GaloisConfig {
        prime_bound,
        all_factors: false,
    };
    let v = cache.get_or_compute(CLASSIFY_OP, &input, || {
        Ok(serde_json::to_value(classify(f, &config)?)?)
    })?;
    match serde_json::from_value(v) {
        Ok(id) => Ok(id),
        Err(_) => classify(f, &config),
    }
}

fn resolve_expected(expected: &str, degree: usize) -> String {
    match expected {
        "B_t" | "B_s" => format!("B{}", degree / 2),
        other => other.to_string(),
    }
}

fn judge(cell: &ExpectedCell, id: &GaloisIdentification) -> (String, CellStatus) {
    let expected = resolve_expected(&cell.expected, id.degree);
    let named = names_equivalent(&expected, &id.group_name)
        || id.t_notation.as_deref() == Some(expected.as_str());
    let status = match (cell.requirement, &id.certainty) {
        (_, Certainty::Proven) if named => CellStatus::Proven,
        (Requirement::Consistent, Certainty::Heuristic { .. }) if named => CellStatus::Consistent,
        (Requirement::Consistent, Certainty::EliminatedToSet(s))
            if s.iter().any(|n| names_equivalent(n, &expected)) =>
        {
            CellStatus::Consistent
        }
        (Requirement::Evidence, Certainty::Heuristic { .. }) => {
            let fiber_ok = id.evidence.iter().any(|e| {
                matches!(
                    e,
                    Evidence::FiberModel {
                        consistent: true,
                        ..
                    }
                )
            });
            let block = id
                .evidence
                .iter()
                .any(|e| matches!(e, Evidence::Block { .. }));
            let degree_ok = expected
                .split_once('T')
                .and_then(|(d, _)| d.parse::<usize>().ok())
                .is_some_and(|d| d == id.degree);
            if fiber_ok && block && degree_ok {
                CellStatus::Consistent
            } else {
                CellStatus::Mismatch
            }
        }
        _ => CellStatus::Mismatch,
    };
    (expected, status)
}

fn run_cell(cell: &ExpectedCell, prime_bound: u64, cache: &Cache) -> CellReport {
    let mut report = CellReport {
        column: cell.column.clone(),
        location: cell.location.clone(),
        expected: cell.expected.clone(),
        requirement: cell.requirement,
        polynomial: None,
        degree: None,
        verdict: None,
        status: CellStatus::Error,
        note: None,
    };
    let fail = |stage: &'static str, e: Error| Error::Pipeline {
        table: cell.table.name().to_string(),
        order: cell.order,
        stage,
        message: e.to_string(),
    };
    let f = match cell_polynomial(cell.table, cell.order, &cell.column) {
        Ok(f) => f,
        Err(e) => {
            report.note = Some(fail("polynomial", e).to_string());
            return report;
        }
    };
    report.degree = f.degree();
    report.polynomial = Some(f.clone());
    match classify_cached(&f, prime_bound, cache) {
        Ok(id) => {
            let (expected, status) = judge(cell, &id);
            report.expected = expected;
            report.status = status;
            report.verdict = Some(id);
        }
        Err(e) => report.note = Some(fail("classify", e).to_string()),
    }
    report
}

/// Runs every cell of a table; rows are computed in parallel and reported
/// in the order of the table.
pub fn reproduce(id: TableId, prime_bound: u64, cache: &Cache) -> TableReport {
    let spec = table_spec(id);
    let rows: Vec<RowReport> = spec
        .orders
        .par_iter()
        .map(|&order| RowReport {
            order,
            cells: spec
                .cells
                .iter()
                .filter(|c| c.order == order)
                .map(|c| run_cell(c, prime_bound, cache))
                .collect(),
        })
        .collect();
    let mut summary = Summary::default();
    for c in rows.iter().flat_map(|r| &r.cells) {
        summary.cells += 1;
        match c.status {
            CellStatus::Proven => summary.proven += 1,
            CellStatus::Consistent => summary.consistent += 1,
            CellStatus::Mismatch => summary.mismatch += 1,
            CellStatus::Error => summary.error += 1,
        }
    }
    TableReport {
        schema: REPORT_SCHEMA,
        table: id,
        prime_bound,
        rows,
        summary,
    }
}

/// Replays every proven cell: the polynomial is rebuilt and the verdict's
/// certificate re-validated. Returns one message per failure.
pub fn verify_report(report: &TableReport) -> Vec<String> {
    let mut out = Vec::new();
    for row in &report.rows {
        for c in &row.cells {
            let (Some(f), Some(id)) = (&c.polynomial, &c.verdict) else {
                continue;
            };
            if !id.certainty.is_proven() {
                continue;
            }
            let tag = format!("{} n={} {}", report.table, row.order, c.column);
            match cell_polynomial(report.table, row.order, &c.column) {
                Ok(g) if &g == f => {}
                _ => out.push(format!("{tag}: polynomial does not rebuild")),
            }
            if let Err(e) = revalidate(f, id) {
                out.push(format!("{tag}: {e}"));
            }
        }
    }
    out
}

/// Recomputes one cached classification chosen by `pick` (an index reduced
/// modulo the number of entries) and compares it byte for byte. `None` when
/// the cache holds no classification.
pub fn verify_cache_entry(cache: &Cache, pick: usize) -> Result<Option<(String, bool)>> {
    let entries: Vec<CacheEntry> = cache
        .entries()
        .into_iter()
        .filter(|e| e.op == CLASSIFY_OP && e.version == CACHE_VERSION)
        .collect();
    if entries.is_empty() {
        return Ok(None);
    }
    let e = &entries[pick % entries.len()];
    let input: ClassifyInput = serde_json::from_str(&e.input)?;
    let config = GaloisConfig {
        prime_bound: input.prime_bound,
        all_factors: false,
    };
    let fresh = serde_json::to_vec(&serde_json::to_value(classify(
        &input.polynomial,
        &config,
    )?)?)?;
    let stored = serde_json::to_vec(&e.value)?;
    Ok(Some((e.key.clone(), fresh == stored)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Unknown {
                kind: "format",
                name: s.to_string(),
            }),
        }
    }
}

fn label(column: &str) -> String {
    format!("G({column}_n)")
}

fn shown(c: &CellReport) -> String {
    c.verdict
        .as_ref()
        .map(|v| v.group_name.clone())
        .unwrap_or_else(|| "-".into())
}

fn certainty(c: &CellReport) -> String {
    c.verdict
        .as_ref()
        .map(|v| v.certainty.label())
        .unwrap_or_else(|| "error".into())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit(report: &TableReport, format: Format) -> Result<String> {
    let columns = report.table.columns();
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let mut out = String::from("n");
            for c in columns {
                out.push_str(&format!(",{},certainty", label(c)));
            }
            out.push('\n');
            for row in &report.rows {
                out.push_str(&row.order.to_string());
                for col in columns {
                    match row.cells.iter().find(|c| c.column == *col) {
                        Some(c) => out.push_str(&format!(
                            ",{},{}",
                            csv_field(&shown(c)),
                            csv_field(&certainty(c))
                        )),
                        None => out.push_str(",,"),
                    }
                }
                out.push('\n');
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = format!("table {}\n", report.table);
            let mut grid = vec![vec!["n".to_string()]];
            for col in columns {
                grid.push(vec![label(col)]);
            }
            for row in &report.rows {
                grid[0].push(row.order.to_string());
                for (i, col) in columns.iter().enumerate() {
                    let cell = row.cells.iter().find(|c| c.column == *col);
                    grid[i + 1].push(cell.map(shown).unwrap_or_default());
                }
            }
            let widths: Vec<usize> = (0..grid[0].len())
                .map(|j| grid.iter().map(|r| r[j].len()).max().unwrap_or(0))
                .collect();
            for r in &grid {
                let cells: Vec<String> = r
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
            out.push('\n');
            for row in &report.rows {
                for c in &row.cells {
                    out.push_str(&format!(
                        "n={} {} = {} [{}] degree {} expected {}: {}",
                        row.order,
                        label(&c.column),
                        shown(c),
                        certainty(c),
                        c.degree
                            .map(|d| d.to_string())
                            .unwrap_or_else(|| "-".into()),
                        c.expected,
                        c.status.label(),
                    ));
                    if let Some(n) = &c.note {
                        out.push_str(&format!(" ({n})"));
                    }
                    out.push('\n');
                }
            }
            let s = &report.summary;
            out.push_str(&format!(
                "summary: {} cells, {} proven, {} consistent, {} mismatch, {} error\n",
                s.cells, s.proven, s.consistent, s.mismatch, s.error
            ));
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_cells_parse() {
        assert_eq!(table_spec(TableId::ExpPade).cells.len(), 20);
        assert_eq!(
            table_spec(TableId::InvsqrtTrunc).orders,
            vec![3, 4, 5, 12, 16, 20, 21, 24]
        );
        assert_eq!(table_spec(TableId::SchurTrunc).cells.len(), 24);
        assert!(TableId::ALL
            .iter()
            .all(|t| t.name().parse::<TableId>().unwrap() == *t));
    }

    #[test]
    fn cell_parser_rejects_garbage() {
        assert!(parse_expected_cells("exp-pade 10 P A4 proven").is_err());
        assert!(parse_expected_cells("exp-pade x P A4 proven here").is_err());
        assert!(parse_expected_cells("nope 10 P A4 proven here").is_err());
        assert!(parse_expected_cells("exp-pade 10 T A4 proven here").is_err());
        assert!(parse_expected_cells("exp-pade 10 P A4 maybe here").is_err());
        assert_eq!(parse_expected_cells("# only\n\n").unwrap(), vec![]);
    }

    #[test]
    fn small_table_round_trip() {
        let cache = Cache::disabled();
        let r = reproduce(TableId::InvsqrtTrunc, 10_000, &cache);
        assert!(r.passed(), "{}", emit(&r, Format::Text).unwrap());
        let js = emit(&r, Format::Json).unwrap();
        let back: TableReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        let csv = emit(&r, Format::Csv).unwrap();
        assert!(csv.starts_with("n,G(T_n),certainty\n3,S3,proven\n"));
        assert!(verify_report(&r).is_empty());
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn resolved_hyperoctahedral_names() {
        assert_eq!(resolve_expected("B_t", 8), "B4");
        assert_eq!(resolve_expected("S5", 5), "S5");
    }
}
