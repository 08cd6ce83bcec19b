//! Regeneration of the bound tables.
//!
//! Tables I-III hold intervals for `B(n,d,w)`, tables IV-VI hold ϑ′ upper
//! bounds on `L(n,d,w)`, marked exact when the low-weight part of a shipped
//! code reaches them.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use bwc_core::bounds::{BoundsEngine, BoundsOptions, ProblemSpec, RuleSet};
use bwc_core::enumerator::WeightEnumerator;
use bwc_core::exact::assets::load_enumerator;
use bwc_core::exact::expurgation::expurgation_exact;
use bwc_core::sdp::solver::{integer_bound, solve, SolverOptions};
use bwc_core::sdp::theta::build_theta_prime_sdp;
use bwc_core::tables::KnownTable;
use bwc_core::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "I" | "1" => TableId::I,
            "II" | "2" => TableId::II,
            "III" | "3" => TableId::III,
            "IV" | "4" => TableId::IV,
            "V" | "5" => TableId::V,
            "VI" | "6" => TableId::VI,
            _ => return Err(Error::InvalidParameters(format!("unknown table {s}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Md,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidParameters(format!("unknown format {s}"))),
        }
    }
}

/// Which `(n, w)` cells a table has: `(n, w_min, w_max)` per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub d: u32,
    pub rows: Vec<(u32, u32, u32)>,
}

pub fn layout(id: TableId) -> Layout {
    let uniform = |d, ns: std::ops::RangeInclusive<u32>| Layout { d, rows: ns.map(|n| (n, 2, 9.min(n))).collect() };
    match id {
        TableId::I => uniform(4, 6..=10),
        TableId::II => uniform(6, 9..=13),
        TableId::III => uniform(8, 12..=15),
        TableId::IV => Layout {
            d: 4,
            rows: vec![(10, 4, 5), (11, 4, 5), (12, 4, 6), (13, 4, 7), (14, 4, 9), (15, 4, 10), (16, 4, 11), (17, 4, 9), (18, 4, 11), (19, 4, 12), (20, 4, 13)],
        },
        TableId::V => Layout { d: 6, rows: vec![(14, 6, 8), (15, 6, 9), (16, 6, 11), (17, 6, 8), (18, 6, 10), (19, 6, 10), (20, 6, 11)] },
        TableId::VI => Layout { d: 8, rows: vec![(18, 8, 8), (19, 8, 10), (20, 8, 10), (21, 8, 10), (22, 8, 14), (23, 8, 16), (24, 8, 16)] },
    }
}

/// Codes whose low-weight words certify exact values, by `(n, d)`.
fn expurgation_source(n: u32, d: u32) -> Option<&'static str> {
    match (n, d) {
        (16, 4) => Some("rm-2-4"),
        (16, 6) => Some("nordstrom-robinson"),
        (23, 8) => Some("golay-23-dual"),
        (24, 8) => Some("golay-24"),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableOptions {
    pub rules: RuleSet,
    pub asymptotic_rules: bool,
    pub sdp_tol: f64,
    pub sdp_max_iterations: usize,
    /// Worker threads; 0 picks the available parallelism.
    pub threads: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        let s = SolverOptions::default();
        Self { rules: RuleSet::All, asymptotic_rules: false, sdp_tol: s.tol, sdp_max_iterations: s.max_iterations, threads: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub n: u32,
    pub w: u32,
    pub lower: Option<u128>,
    pub upper: Option<u128>,
    pub exact: bool,
    pub lower_rule: Option<String>,
    pub upper_rule: Option<String>,
    pub error: Option<String>,
}

impl TableCell {
    fn failed(n: u32, w: u32, e: &Error) -> Self {
        Self { n, w, lower: None, upper: None, exact: false, lower_rule: None, upper_rule: None, error: Some(e.to_string()) }
    }

    pub fn text(&self) -> String {
        if let Some(e) = &self.error {
            return format!("error: {e}");
        }
        let mut s = match (self.lower, self.upper) {
            (_, Some(u)) if self.exact => u.to_string(),
            (Some(l), Some(u)) if l == u => l.to_string(),
            (Some(l), Some(u)) => format!("{l}-{u}"),
            (None, Some(u)) => u.to_string(),
            (Some(l), None) => format!(">={l}"),
            (None, None) => "?".into(),
        };
        if self.exact {
            s.push_str(" (exact)");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u32,
    /// `A(n,d)` as stored in the known-values table.
    pub a_lower: u128,
    pub a_upper: u128,
    pub cells: Vec<TableCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub table: TableId,
    /// `B` for tables I-III, `L` for IV-VI.
    pub quantity: String,
    pub d: u32,
    pub weights: Vec<u32>,
    pub rows: Vec<TableRow>,
}

impl TableDocument {
    pub fn cell(&self, n: u32, w: u32) -> Option<&TableCell> {
        self.rows.iter().find(|r| r.n == n)?.cells.iter().find(|c| c.w == w)
    }
}

/// Runs `f` on every item with a pool of scoped threads; results keep the
/// input order.
fn par_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = if threads == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { threads };
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.min(items.len()).max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                out.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(|r| r.expect("every item is processed")).collect()
}

fn theta_cell(n: u32, d: u32, w: u32, solver: &SolverOptions, enumerator: Option<&WeightEnumerator>) -> TableCell {
    let run = || -> Result<TableCell> {
        let (p, _) = build_theta_prime_sdp(n, d, w)?;
        let report = solve(&p, solver)?;
        let upper = integer_bound(&report)?;
        let mut cell = TableCell {
            n,
            w,
            lower: None,
            upper: Some(upper),
            exact: false,
            lower_rule: None,
            upper_rule: Some(format!("theta-prime ({}, tol {:e})", report.certificate, solver.tol)),
            error: None,
        };
        if let Some(e) = enumerator {
            let out = expurgation_exact(e, w as usize, upper)?;
            cell.lower = Some(out.lower);
            cell.lower_rule = Some("expurgation".into());
            cell.exact = out.exact.is_some();
        }
        Ok(cell)
    };
    run().unwrap_or_else(|e| TableCell::failed(n, w, &e))
}

/// Regenerates one table. Cell failures are reported in the cell.
pub fn run_table(id: TableId, assets: &Path, table: &KnownTable, opts: &TableOptions) -> Result<TableDocument> {
    let lay = layout(id);
    let d = lay.d;
    let cells: Vec<(u32, u32)> = lay.rows.iter().flat_map(|&(n, a, b)| (a..=b).map(move |w| (n, w))).collect();
    let sdp_table = matches!(id, TableId::IV | TableId::V | TableId::VI);
    let results = if sdp_table {
        let solver = SolverOptions { tol: opts.sdp_tol, max_iterations: opts.sdp_max_iterations, progress: false };
        let mut enums = Vec::new();
        for &(n, _, _) in &lay.rows {
            if let Some(name) = expurgation_source(n, d) {
                enums.push((n, load_enumerator(assets, name)?));
            }
        }
        par_map(&cells, opts.threads, |&(n, w)| {
            let e = enums.iter().find(|(m, _)| *m == n).map(|(_, e)| e);
            theta_cell(n, d, w, &solver, e)
        })
    } else {
        let bopts = BoundsOptions { rules: opts.rules, asymptotic_rules: opts.asymptotic_rules, ..Default::default() };
        let max_n = lay.rows.iter().map(|r| r.0).max().unwrap_or(1).max(bwc_core::bounds::DEFAULT_GRID_N);
        let engine = BoundsEngine::new(table, bopts, max_n, &[])?;
        cells
            .iter()
            .map(|&(n, w)| {
                let run = || -> Result<TableCell> {
                    let i = engine.interval(&ProblemSpec::b(n, d, w)?)?;
                    Ok(TableCell {
                        n,
                        w,
                        lower: Some(i.lower),
                        upper: Some(i.upper),
                        exact: i.is_exact(),
                        lower_rule: Some(i.lower_provenance),
                        upper_rule: Some(i.upper_provenance),
                        error: None,
                    })
                };
                run().unwrap_or_else(|e| TableCell::failed(n, w, &e))
            })
            .collect()
    };
    let mut results = results.into_iter();
    let rows = lay
        .rows
        .iter()
        .map(|&(n, a, b)| {
            let (a_lower, a_upper) = table.a_bounds(n, d);
            TableRow { n, a_lower, a_upper, cells: (a..=b).map(|_| results.next().expect("one result per cell")).collect() }
        })
        .collect();
    let wmin = lay.rows.iter().map(|r| r.1).min().unwrap_or(0);
    let wmax = lay.rows.iter().map(|r| r.2).max().unwrap_or(0);
    Ok(TableDocument { table: id, quantity: if sdp_table { "L" } else { "B" }.into(), d, weights: (wmin..=wmax).collect(), rows })
}

fn a_text(r: &TableRow) -> String {
    if r.a_lower == r.a_upper {
        r.a_lower.to_string()
    } else {
        format!("{}-{}", r.a_lower, r.a_upper)
    }
}

pub fn render(doc: &TableDocument, format: Format) -> Result<String> {
    let mut s = String::new();
    let q = &doc.quantity;
    let cell_text = |r: &TableRow, w: u32| r.cells.iter().find(|c| c.w == w).map(|c| c.text()).unwrap_or_default();
    match format {
        Format::Json => s = serde_json::to_string_pretty(doc)? + "\n",
        Format::Md => {
            writeln!(s, "{q}(n,{},w)\n", doc.d).unwrap();
            let head: Vec<String> = doc.weights.iter().map(|w| format!("w={w}")).collect();
            writeln!(s, "| n | A(n,{}) | {} |", doc.d, head.join(" | ")).unwrap();
            writeln!(s, "|---|---|{}", "---|".repeat(head.len())).unwrap();
            for r in &doc.rows {
                let cells: Vec<String> = doc.weights.iter().map(|&w| cell_text(r, w)).collect();
                writeln!(s, "| {} | {} | {} |", r.n, a_text(r), cells.join(" | ")).unwrap();
            }
        }
        Format::Csv => {
            writeln!(s, "table,quantity,n,d,w,lower,upper,exact,lower_rule,upper_rule,error").unwrap();
            let opt = |v: Option<u128>| v.map(|x| x.to_string()).unwrap_or_default();
            let quote = |v: &Option<String>| v.as_ref().map(|x| format!("\"{}\"", x.replace('"', "\"\""))).unwrap_or_default();
            for r in &doc.rows {
                writeln!(s, "{:?},A,{},{},,{},{},{},,,", doc.table, r.n, doc.d, r.a_lower, r.a_upper, r.a_lower == r.a_upper).unwrap();
                for c in &r.cells {
                    writeln!(
                        s,
                        "{:?},{q},{},{},{},{},{},{},{},{},{}",
                        doc.table,
                        c.n,
                        doc.d,
                        c.w,
                        opt(c.lower),
                        opt(c.upper),
                        c.exact,
                        quote(&c.lower_rule),
                        quote(&c.upper_rule),
                        quote(&c.error)
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bwc_core::exact::assets::asset_dir;

    #[test]
    fn layouts_have_expected_sizes() {
        let count = |id| layout(id).rows.iter().map(|&(_, a, b)| (b - a + 1) as usize).sum::<usize>();
        assert_eq!(count(TableId::I), 5 + 6 + 7 + 8 + 8);
        assert_eq!(count(TableId::IV), 2 + 2 + 3 + 4 + 6 + 7 + 8 + 6 + 8 + 9 + 10);
        assert_eq!(count(TableId::VI), 1 + 3 + 3 + 3 + 7 + 9 + 9);
    }

    #[test]
    fn parallel_map_keeps_order() {
        let v: Vec<u32> = (0..100).collect();
        assert_eq!(par_map(&v, 7, |x| x * 2), (0..100).map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn table_one_small_cells() {
        let t = KnownTable::load_default().unwrap();
        let doc = run_table(TableId::I, &asset_dir(), &t, &TableOptions::default()).unwrap();
        assert_eq!(doc.cell(6, 2).unwrap().text(), "4 (exact)");
        assert_eq!(doc.rows[0].a_upper, 4);
        let md = render(&doc, Format::Md).unwrap();
        assert!(md.contains("| 6 | 4 | 4 (exact) |"));
        assert_eq!(render(&doc, Format::Csv).unwrap(), render(&doc, Format::Csv).unwrap());
    }

    #[test]
    fn table_five_marks_exact_cells() {
        let t = KnownTable::load_default().unwrap();
        let doc = run_table(TableId::V, &asset_dir(), &t, &TableOptions::default()).unwrap();
        let c = doc.cell(16, 6).unwrap();
        assert!(c.exact && c.upper == Some(113));
        assert!(doc.cell(16, 10).unwrap().exact);
        assert!(!doc.cell(16, 7).unwrap().exact);
        assert!(doc.rows.iter().flat_map(|r| &r.cells).all(|c| c.error.is_none()));
    }
}
