//! Tabular and graphical output: CSV, JSON, markdown and SVG.
//!
//! Every table type carries a fixed header. CSV output always starts with
//! that header (even for an empty table), JSON output is an array of objects
//! whose keys are exactly the header names, and markdown renders the same
//! cells. Exact rationals appear as separate numerator and denominator fields
//! plus an 8-place decimal; big integers are decimal strings.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::density::{DensityRecord, SeriesPoint, DECIMAL_PLACES};
use crate::error::{Error, Result};
use crate::weil::{CertificateReport, WeilQuadruple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::Argument(format!("unknown format `{other}` (csv, json, markdown)"))),
        }
    }
}

/// A row type with a fixed column order.
pub trait Table: Serialize {
    const HEADER: &'static [&'static str];
}

macro_rules! table {
    ($ty:ty, [$($col:literal),* $(,)?]) => {
        impl Table for $ty {
            const HEADER: &'static [&'static str] = &[$($col),*];
        }
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrupleRow {
    pub g: u64,
    pub p: u64,
    pub a: u64,
    pub s: u64,
}
table!(QuadrupleRow, ["g", "p", "a", "s"]);

impl From<&WeilQuadruple> for QuadrupleRow {
    fn from(w: &WeilQuadruple) -> Self {
        QuadrupleRow { g: w.g().get(), p: w.p(), a: w.a(), s: w.s() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRow {
    pub p: u64,
    pub a: u64,
    pub s: u64,
}
table!(TripleRow, ["p", "a", "s"]);

impl From<&WeilQuadruple> for TripleRow {
    fn from(w: &WeilQuadruple) -> Self {
        TripleRow { p: w.p(), a: w.a(), s: w.s() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityRow {
    pub x: u64,
    pub count_pg: u64,
    pub count_p: u64,
    pub f_num: String,
    pub f_den: String,
    pub f_decimal: String,
    pub diff_decimal: String,
}
table!(DensityRow, ["x", "count_pg", "count_p", "f_num", "f_den", "f_decimal", "diff_decimal"]);

impl From<&DensityRecord> for DensityRow {
    fn from(r: &DensityRecord) -> Self {
        DensityRow {
            x: r.x,
            count_pg: r.count_pg,
            count_p: r.count_p,
            f_num: r.f.numer().to_string(),
            f_den: r.f.denom().to_string(),
            f_decimal: r.f.to_decimal(DECIMAL_PLACES),
            diff_decimal: r.diff.to_decimal(DECIMAL_PLACES),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub p: u64,
    pub count_pg: u64,
    pub count_p: u64,
    pub f_num: String,
    pub f_den: String,
    pub f_decimal: String,
}
table!(SeriesRow, ["p", "count_pg", "count_p", "f_num", "f_den", "f_decimal"]);

impl From<&SeriesPoint> for SeriesRow {
    fn from(pt: &SeriesPoint) -> Self {
        let f = pt.f();
        SeriesRow {
            p: pt.p,
            count_pg: pt.count_pg,
            count_p: pt.index,
            f_num: f.numer().to_string(),
            f_den: f.denom().to_string(),
            f_decimal: f.to_decimal(DECIMAL_PLACES),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitRow {
    pub g: u64,
    pub discriminant: i64,
    pub class_number: u64,
    pub limit_num: String,
    pub limit_den: String,
    pub limit_decimal: String,
}
table!(LimitRow, ["g", "discriminant", "class_number", "limit_num", "limit_den", "limit_decimal"]);

impl LimitRow {
    pub fn new(g: u64, class_number: u64, limit: &Rational) -> Self {
        LimitRow {
            g,
            discriminant: -8 * g as i64 - 4,
            class_number,
            limit_num: limit.numer().to_string(),
            limit_den: limit.denom().to_string(),
            limit_decimal: limit.to_decimal(DECIMAL_PLACES),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassNumberRow {
    pub discriminant: i64,
    pub class_number: u64,
}
table!(ClassNumberRow, ["discriminant", "class_number"]);

/// Flattened certificate entries for CSV and markdown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRow {
    pub field: String,
    pub value: String,
}
table!(FieldRow, ["field", "value"]);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantEntry {
    pub sqrt_residue: u64,
    pub valuation: u64,
    pub num: String,
    pub den: String,
    pub decimal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The certificate as serialized by `certify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateDocument {
    pub g: u64,
    pub p: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<CertificateBody>,
    pub checks: Vec<CheckEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateBody {
    pub a: u64,
    pub s: u64,
    pub q: String,
    pub weil_b: String,
    pub weil_c: String,
    pub cm_discriminant: String,
    pub splitting_order: u64,
    pub invariants: Vec<InvariantEntry>,
    pub degree_d: u64,
    pub center_degree_e: u64,
    pub dimension: u64,
    pub aut_order: u64,
    pub small_dimension_case: bool,
}

impl From<&CertificateReport> for CertificateDocument {
    fn from(report: &CertificateReport) -> Self {
        let body = report.certificate.as_ref().map(|c| CertificateBody {
            a: c.quadruple.a(),
            s: c.quadruple.s(),
            q: c.polynomial.q.to_string(),
            weil_b: c.polynomial.b.to_string(),
            weil_c: c.polynomial.c.to_string(),
            cm_discriminant: c.cm_discriminant.to_string(),
            splitting_order: c.splitting_order,
            invariants: c
                .places
                .iter()
                .map(|pl| InvariantEntry {
                    sqrt_residue: pl.sqrt_residue,
                    valuation: pl.valuation,
                    num: pl.invariant.numer().to_string(),
                    den: pl.invariant.denom().to_string(),
                    decimal: pl.invariant.to_decimal(DECIMAL_PLACES),
                })
                .collect(),
            degree_d: c.degree_d,
            center_degree_e: c.center_degree_e,
            dimension: c.dimension,
            aut_order: c.aut_order,
            small_dimension_case: c.small_dimension_case,
        });
        CertificateDocument {
            g: report.g,
            p: report.p,
            passed: report.passed(),
            body,
            checks: report
                .checks
                .iter()
                .map(|c| CheckEntry { name: c.name.to_string(), passed: c.passed, detail: c.detail.clone() })
                .collect(),
        }
    }
}

impl CertificateDocument {
    pub fn field_rows(&self) -> Vec<FieldRow> {
        let mut rows = Vec::new();
        let mut push = |field: &str, value: String| rows.push(FieldRow { field: field.into(), value });
        push("g", self.g.to_string());
        push("p", self.p.to_string());
        push("passed", self.passed.to_string());
        if let Some(b) = &self.body {
            push("a", b.a.to_string());
            push("s", b.s.to_string());
            push("q", b.q.clone());
            push("weil_b", b.weil_b.clone());
            push("weil_c", b.weil_c.clone());
            push("cm_discriminant", b.cm_discriminant.clone());
            push("splitting_order", b.splitting_order.to_string());
            for (i, inv) in b.invariants.iter().enumerate() {
                push(
                    &format!("invariant_{}", i + 1),
                    format!("{}/{} (√−(2g+1) ≡ {}, valuation {})", inv.num, inv.den, inv.sqrt_residue, inv.valuation),
                );
            }
            push("degree_d", b.degree_d.to_string());
            push("center_degree_e", b.center_degree_e.to_string());
            push("dimension", b.dimension.to_string());
            push("aut_order", b.aut_order.to_string());
            push("small_dimension_case", b.small_dimension_case.to_string());
        }
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            push(&format!("check:{}", c.name), format!("{status}: {}", c.detail));
        }
        rows
    }
}

/// Write `rows` in the requested format.
pub fn emit<T: Table, W: Write>(format: Format, rows: &[T], mut out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(T::HEADER)?;
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
        Format::Markdown => {
            out.write_all(markdown(T::HEADER, rows)?.as_bytes())?;
        }
    }
    Ok(())
}

/// Write a certificate: a nested JSON document, or `field,value` rows.
pub fn emit_certificate<W: Write>(format: Format, doc: &CertificateDocument, mut out: W) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, doc)?;
            writeln!(out)?;
            Ok(())
        }
        _ => emit(format, &doc.field_rows(), out),
    }
}

fn cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.replace('|', "\\|"),
        other => other.to_string(),
    }
}

fn markdown<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String> {
    let mut s = String::new();
    let _ = writeln!(s, "| {} |", header.join(" | "));
    let _ = writeln!(s, "|{}|", header.iter().map(|_| "---").collect::<Vec<_>>().join("|"));
    for row in rows {
        let value = serde_json::to_value(row)?;
        let cells: Vec<String> = header.iter().map(|h| cell(&value[*h])).collect();
        let _ = writeln!(s, "| {} |", cells.join(" | "));
    }
    Ok(s)
}

/// Keep at most this many points in the scatter plot.
pub const MAX_PLOT_POINTS: usize = 5000;

/// Every `k`-th point (plus the last) so that at most [`MAX_PLOT_POINTS`]
/// remain. Returns the kept points and `k`.
pub fn decimate(points: &[SeriesPoint]) -> (Vec<SeriesPoint>, usize) {
    if points.len() <= MAX_PLOT_POINTS {
        return (points.to_vec(), 1);
    }
    let k = points.len().div_ceil(MAX_PLOT_POINTS - 1);
    let mut kept: Vec<SeriesPoint> = points.iter().step_by(k).copied().collect();
    if kept.last() != points.last() {
        kept.push(*points.last().expect("nonempty"));
    }
    (kept, k)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

/// Scatter of `(p, f_g(p))` with the dashed horizontal line `y = limit`.
pub fn emit_svg<W: Write>(g: u64, points: &[SeriesPoint], limit: &Rational, mut out: W) -> Result<()> {
    let to_f64 = |r: &Rational| {
        r.to_decimal(12).parse::<f64>().expect("decimal rendering parses")
    };
    let limit_y = to_f64(limit);
    let (kept, k) = decimate(points);
    let x_max = points.last().map_or(1, |pt| pt.p).max(1) as f64;
    let f_max = kept.iter().map(|pt| to_f64(&pt.f())).fold(limit_y, f64::max);
    let y_max = if f_max > 0.0 { f_max * 1.1 } else { 1.0 };

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + x / x_max * plot_w;
    let sy = |y: f64| TOP + plot_h - y / y_max * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        "<metadata>g={g}; points={}; plotted={}; decimation=every {k}-th point plus the last; limit={limit}</metadata>",
        points.len(),
        kept.len()
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let (x0, y0, x1, y1) = (LEFT, TOP + plot_h, LEFT + plot_w, TOP);
    let _ = writeln!(
        s,
        r#"<path class="axes" d="M{x0:.2} {y1:.2} L{x0:.2} {y0:.2} L{x1:.2} {y0:.2}" fill="none" stroke="black"/>"#
    );
    for i in 0..=5 {
        let xv = x_max * i as f64 / 5.0;
        let yv = y_max * i as f64 / 5.0;
        let (tx, ty) = (sx(xv), sy(yv));
        let _ = writeln!(
            s,
            r#"<path class="tick" d="M{tx:.2} {y0:.2} L{tx:.2} {:.2} M{x0:.2} {ty:.2} L{:.2} {ty:.2}" stroke="black"/>"#,
            y0 + 5.0,
            x0 - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{tx:.2}" y="{:.2}" font-size="11" text-anchor="middle">{xv:.0}</text>"#,
            y0 + 18.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{yv:.3}</text>"#,
            x0 - 8.0,
            ty + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="xlabel" x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">x</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text class="ylabel" x="16" y="{:.2}" font-size="14" text-anchor="middle" transform="rotate(-90 16 {:.2})">f_{g}(x)</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );
    let _ = writeln!(s, r#"<g class="points" fill="red">"#);
    for pt in &kept {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="1.5"/>"#,
            sx(pt.p as f64),
            sy(to_f64(&pt.f()))
        );
    }
    let _ = writeln!(s, "</g>");
    let ly = sy(limit_y);
    let _ = writeln!(
        s,
        r#"<line class="limit" x1="{x0:.2}" y1="{ly:.2}" x2="{x1:.2}" y2="{ly:.2}" stroke="blue" stroke-width="1.5" stroke-dasharray="6 4"/>"#
    );
    let _ = writeln!(s, "</svg>");
    out.write_all(s.as_bytes())?;
    Ok(())
}
