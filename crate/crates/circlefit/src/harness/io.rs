//! Edge-point file parsing (CSV and JSON) and benchmark table emission
//! (CSV, markdown, JSON). Emission is deterministic: fixed row/column
//! order, fixed 6-decimal formatting in CSV/markdown, `\n` newlines.

use super::BenchmarkTable;
use crate::error::{Error, Result};
use crate::filter::FilterConfig;
use crate::fit::FitConfig;
use crate::geom::{Point, PointSet};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

/// Input format of an edge-point file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointsFormat {
    Csv,
    Json,
}

impl FromStr for PointsFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(PointsFormat::Csv),
            "json" => Ok(PointsFormat::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown points format `{other}`"
            ))),
        }
    }
}

/// Output format of a benchmark table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Markdown,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "markdown" => Ok(TableFormat::Markdown),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown table format `{other}`"
            ))),
        }
    }
}

fn finite(v: f64, line: usize, column: usize) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse {
            line,
            column,
            message: "non-finite value".into(),
        })
    }
}

/// Parse CSV text: one `x,y` pair per line, decimal point, an optional
/// leading `x,y` header, blank lines ignored.
pub fn parse_points_csv(text: &str) -> Result<PointSet<f64>> {
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 && line.eq_ignore_ascii_case("x,y") {
            continue;
        }
        let mut fields = line.splitn(3, ',');
        let fx = fields.next().unwrap_or("");
        let fy = fields.next().ok_or_else(|| Error::Parse {
            line: lineno + 1,
            column: line.len(),
            message: "expected `x,y`".into(),
        })?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno + 1,
                column: fx.len() + fy.len() + 2,
                message: "expected exactly two fields".into(),
            });
        }
        let x: f64 = fx.trim().parse().map_err(|_| Error::Parse {
            line: lineno + 1,
            column: 1,
            message: format!("invalid number `{}`", fx.trim()),
        })?;
        let y: f64 = fy.trim().parse().map_err(|_| Error::Parse {
            line: lineno + 1,
            column: fx.len() + 2,
            message: format!("invalid number `{}`", fy.trim()),
        })?;
        points.push(Point::new(
            finite(x, lineno + 1, 1)?,
            finite(y, lineno + 1, fx.len() + 2)?,
        ));
    }
    PointSet::new(points)
}

/// Parse JSON text of the form `{"points": [[x, y], ...], "units": "px"}`.
/// `units`, when present, must be `"px"`.
pub fn parse_points_json(text: &str) -> Result<PointSet<f64>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "expected a JSON object".into(),
    })?;
    if let Some(units) = obj.get("units") {
        if units.as_str() != Some("px") {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("unsupported units {units}"),
            });
        }
    }
    let arr = obj
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "missing `points` array".into(),
        })?;
    let mut points = Vec::with_capacity(arr.len());
    for (i, entry) in arr.iter().enumerate() {
        let pair = entry.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            Error::Parse {
                line: 1,
                column: i + 1,
                message: format!("point {i} is not an [x, y] pair"),
            }
        })?;
        let x = pair[0].as_f64().ok_or_else(|| Error::Parse {
            line: 1,
            column: i + 1,
            message: format!("point {i} has a non-numeric x"),
        })?;
        let y = pair[1].as_f64().ok_or_else(|| Error::Parse {
            line: 1,
            column: i + 1,
            message: format!("point {i} has a non-numeric y"),
        })?;
        points.push(Point::new(finite(x, 1, i + 1)?, finite(y, 1, i + 1)?));
    }
    PointSet::new(points)
}

/// Read and parse an edge-point file.
pub fn parse_points_file(path: &Path, format: PointsFormat) -> Result<PointSet<f64>> {
    let text = std::fs::read_to_string(path)?;
    match format {
        PointsFormat::Csv => parse_points_csv(&text),
        PointsFormat::Json => parse_points_json(&text),
    }
}

/// Serialize a point set as `x,y` CSV with a header line.
pub fn points_to_csv(ps: &PointSet<f64>) -> String {
    let mut out = String::from("x,y\n");
    for p in ps {
        let _ = writeln!(out, "{},{}", p.x, p.y);
    }
    out
}

/// Serialize a point set as the JSON object format.
pub fn points_to_json(ps: &PointSet<f64>) -> String {
    let points: Vec<[f64; 2]> = ps.iter().map(|p| [p.x, p.y]).collect();
    let value = serde_json::json!({ "points": points, "units": "px" });
    serde_json::to_string_pretty(&value).expect("point json serializes")
}

fn cell(v: f64) -> String {
    if v.is_nan() {
        "FAIL".to_string()
    } else {
        format!("{v:.6}")
    }
}

fn render_csv(t: &BenchmarkTable) -> String {
    let mut out = String::from("metric,filter");
    for fitter in &t.fitters {
        let _ = write!(out, ",{fitter}");
    }
    out.push('\n');
    for (metric, grid) in [("mae", &t.mae_mm), ("sdae", &t.sdae_mm)] {
        for (fi, filter) in t.filters.iter().enumerate() {
            let _ = write!(out, "{metric},{filter}");
            for v in &grid[fi] {
                let _ = write!(out, ",{}", cell(*v));
            }
            out.push('\n');
        }
    }
    out
}

fn render_markdown(t: &BenchmarkTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Benchmark results");
    let _ = writeln!(out);
    let _ = writeln!(out, "parts: {}, seed: {}", t.num_parts, t.seed);
    for (title, grid) in [("MAE (mm)", &t.mae_mm), ("SDAE (mm)", &t.sdae_mm)] {
        let _ = writeln!(out);
        let _ = writeln!(out, "## {title}");
        let _ = writeln!(out);
        let mut header = String::from("| filter |");
        let mut rule = String::from("|---|");
        for fitter in &t.fitters {
            let _ = write!(header, " {fitter} |");
            rule.push_str("---:|");
        }
        let _ = writeln!(out, "{header}");
        let _ = writeln!(out, "{rule}");
        for (fi, filter) in t.filters.iter().enumerate() {
            let _ = write!(out, "| {filter} |");
            for v in &grid[fi] {
                let _ = write!(out, " {} |", cell(*v));
            }
            out.push('\n');
        }
    }
    out
}

#[derive(Serialize)]
struct TableJson<'a> {
    num_parts: usize,
    seed: u64,
    filters: Vec<String>,
    fitters: Vec<String>,
    /// Full-precision grids; failed cells serialize as null.
    mae_mm: &'a [Vec<f64>],
    sdae_mm: &'a [Vec<f64>],
    fit_config: &'a FitConfig,
    filter_config: &'a FilterConfig,
}

fn render_json(t: &BenchmarkTable, fcfg: &FilterConfig, ccfg: &FitConfig) -> String {
    let doc = TableJson {
        num_parts: t.num_parts,
        seed: t.seed,
        filters: t.filters.iter().map(|f| f.name().to_string()).collect(),
        fitters: t.fitters.iter().map(|f| f.name().to_string()).collect(),
        mae_mm: &t.mae_mm,
        sdae_mm: &t.sdae_mm,
        fit_config: ccfg,
        filter_config: fcfg,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("table json serializes");
    s.push('\n');
    s
}

/// Render a benchmark table to text in the requested format. The JSON form
/// carries the seed and both configs so plots can reproduce the run.
pub fn render_table(
    t: &BenchmarkTable,
    format: TableFormat,
    fcfg: &FilterConfig,
    ccfg: &FitConfig,
) -> String {
    match format {
        TableFormat::Csv => render_csv(t),
        TableFormat::Markdown => render_markdown(t),
        TableFormat::Json => render_json(t, fcfg, ccfg),
    }
}

/// Render and write a benchmark table to a file.
pub fn write_table(
    t: &BenchmarkTable,
    format: TableFormat,
    path: &Path,
    fcfg: &FilterConfig,
    ccfg: &FitConfig,
) -> Result<()> {
    std::fs::write(path, render_table(t, format, fcfg, ccfg))?;
    Ok(())
}
