//! Sweep grids as CSV and JSON, and readers for both.
//!
//! CSV rows are `r1,r2,value` with a trailing `flag` column for percentage
//! metrics, or `r,value` for one-dimensional grids. Numbers carry 12
//! significant digits. JSON is `{spec, axes, values}` with full-precision
//! numbers and sorted keys.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use hawking_core::{Metric, SweepGrid};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    Path(PathBuf),
}

impl Destination {
    /// `-` means standard output.
    pub fn parse(arg: &std::path::Path) -> Self {
        if arg.as_os_str() == "-" {
            Destination::Stdout
        } else {
            Destination::Path(arg.to_path_buf())
        }
    }
}

impl fmt::Display for Destination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Destination::Stdout => f.write_str("standard output"),
            Destination::Path(p) => write!(f, "{}", p.display()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot write sweep to {destination}: {source}")]
pub struct EmitError {
    pub destination: String,
    #[source]
    pub source: io::Error,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("{0}")]
    Json(String),
}

/// `x` with 12 significant digits, in the shorter of fixed or exponent form.
pub fn format_significant(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exponent}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_csv<W: Write>(grid: &SweepGrid, mut w: W) -> io::Result<()> {
    let two_d = grid.spec.metric.is_two_dimensional();
    let flag = grid.has_flag_column();
    let header = match (two_d, flag) {
        (true, true) => "r1,r2,value,flag",
        (true, false) => "r1,r2,value",
        (false, _) => "r,value",
    };
    writeln!(w, "{header}")?;
    for row in grid.rows() {
        let mut line = format_significant(row.r1);
        if let Some(r2) = row.r2 {
            line.push(',');
            line.push_str(&format_significant(r2));
        }
        line.push(',');
        line.push_str(&format_significant(row.value));
        if flag {
            line.push_str(if row.flagged { ",1" } else { ",0" });
        }
        writeln!(w, "{line}")?;
    }
    w.flush()
}

fn spec_json(grid: &SweepGrid) -> Value {
    let spec = &grid.spec;
    let mut out = Map::new();
    out.insert("metric".into(), json!(spec.metric.name()));
    out.insert("resolution".into(), json!(spec.resolution));
    out.insert("r1_range".into(), json!([spec.r1_range.0, spec.r1_range.1]));
    if spec.metric.is_two_dimensional() {
        out.insert("r2_range".into(), json!([spec.r2_range.0, spec.r2_range.1]));
    }
    if grid.has_flag_column() {
        let flagged: Vec<usize> = (0..grid.flags.len()).filter(|&k| grid.flags[k]).collect();
        out.insert("flagged_cells".into(), json!(flagged));
    }
    Value::Object(out)
}

/// The JSON document for a grid. Two-dimensional values are nested as rows
/// of constant `r1`.
pub fn grid_to_json(grid: &SweepGrid) -> Value {
    let (axes, values) = if grid.spec.metric.is_two_dimensional() {
        let rows: Vec<&[f64]> = grid.values.chunks(grid.resolution()).collect();
        (json!({"r1": grid.r1_axis, "r2": grid.r2_axis}), json!(rows))
    } else {
        (json!({"r": grid.r1_axis}), json!(grid.values))
    };
    json!({"spec": spec_json(grid), "axes": axes, "values": values})
}

pub fn write_json<W: Write>(grid: &SweepGrid, mut w: W) -> io::Result<()> {
    serde_json::to_writer(&mut w, &grid_to_json(grid))?;
    writeln!(w)?;
    w.flush()
}

pub fn write_grid<W: Write>(grid: &SweepGrid, format: SweepFormat, w: W) -> io::Result<()> {
    match format {
        SweepFormat::Csv => write_csv(grid, w),
        SweepFormat::Json => write_json(grid, w),
    }
}

/// Writes `grid` to a file (created or truncated) or to standard output.
pub fn emit(
    grid: &SweepGrid,
    format: SweepFormat,
    destination: &Destination,
) -> Result<(), EmitError> {
    let context = |source| EmitError {
        destination: destination.to_string(),
        source,
    };
    match destination {
        Destination::Stdout => write_grid(grid, format, io::stdout().lock()).map_err(context),
        Destination::Path(path) => {
            let file = File::create(path).map_err(context)?;
            write_grid(grid, format, BufWriter::new(file)).map_err(context)
        }
    }
}

/// A grid read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedGrid {
    pub r1_axis: Vec<f64>,
    /// Empty for one-dimensional grids.
    pub r2_axis: Vec<f64>,
    /// Row-major, `r1` outer.
    pub values: Vec<f64>,
    pub flags: Vec<bool>,
}

pub fn parse_csv(text: &str) -> Result<ParsedGrid, ParseError> {
    let mut lines = text.lines().enumerate();
    let err = |line: usize, message: String| ParseError::Csv {
        line: line + 1,
        message,
    };
    let (_, header) = lines
        .next()
        .ok_or_else(|| err(0, "empty document".into()))?;
    let columns: Vec<&str> = header.split(',').collect();
    let two_d = match columns.as_slice() {
        ["r1", "r2", "value", "flag"] | ["r1", "r2", "value"] => true,
        ["r", "value"] => false,
        _ => return Err(err(0, format!("unexpected header `{header}`"))),
    };
    let mut r1s = Vec::new();
    let mut r2s = Vec::new();
    let mut values = Vec::new();
    let mut flags = Vec::new();
    for (k, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(err(
                k,
                format!("expected {} fields, got {}", columns.len(), fields.len()),
            ));
        }
        let number = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| err(k, format!("bad number `{s}`: {e}")))
        };
        r1s.push(number(fields[0])?);
        let mut next = 1;
        if two_d {
            r2s.push(number(fields[1])?);
            next = 2;
        }
        values.push(number(fields[next])?);
        flags.push(match fields.get(next + 1) {
            None | Some(&"0") => false,
            Some(&"1") => true,
            Some(other) => return Err(err(k, format!("bad flag `{other}`"))),
        });
    }
    if !two_d {
        return Ok(ParsedGrid {
            r1_axis: r1s,
            r2_axis: Vec::new(),
            values,
            flags,
        });
    }
    let n = r1s.iter().take_while(|&&r| r == r1s[0]).count();
    if n == 0 || values.len() != n * n {
        return Err(err(
            0,
            format!("{} rows do not form a square grid", values.len()),
        ));
    }
    Ok(ParsedGrid {
        r1_axis: r1s.iter().step_by(n).copied().collect(),
        r2_axis: r2s[..n].to_vec(),
        values,
        flags,
    })
}

fn float_list(v: &Value, what: &str) -> Result<Vec<f64>, ParseError> {
    v.as_array()
        .ok_or_else(|| ParseError::Json(format!("{what} is not an array")))?
        .iter()
        .map(|x| {
            x.as_f64()
                .ok_or_else(|| ParseError::Json(format!("{what} holds a non-number")))
        })
        .collect()
}

pub fn parse_json(text: &str) -> Result<ParsedGrid, ParseError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| ParseError::Json("document is not an object".into()))?;
    let field = |key: &str| {
        obj.get(key)
            .ok_or_else(|| ParseError::Json(format!("missing key `{key}`")))
    };
    let spec = field("spec")?;
    let metric: Metric = spec["metric"]
        .as_str()
        .ok_or_else(|| ParseError::Json("spec.metric is not a string".into()))?
        .parse()
        .map_err(|e: hawking_core::Error| ParseError::Json(e.to_string()))?;
    let axes = field("axes")?;
    let values = field("values")?;
    let (r1_axis, r2_axis, values) = if metric.is_two_dimensional() {
        let rows = values
            .as_array()
            .ok_or_else(|| ParseError::Json("values is not an array".into()))?;
        let mut flat = Vec::new();
        for row in rows {
            flat.extend(float_list(row, "values row")?);
        }
        (
            float_list(&axes["r1"], "axes.r1")?,
            float_list(&axes["r2"], "axes.r2")?,
            flat,
        )
    } else {
        (
            float_list(&axes["r"], "axes.r")?,
            Vec::new(),
            float_list(values, "values")?,
        )
    };
    let mut flags = vec![false; values.len()];
    if let Some(flagged) = spec.get("flagged_cells") {
        for k in float_list(flagged, "spec.flagged_cells")? {
            let k = k as usize;
            *flags
                .get_mut(k)
                .ok_or_else(|| ParseError::Json(format!("flagged cell {k} out of range")))? = true;
        }
    }
    Ok(ParsedGrid {
        r1_axis,
        r2_axis,
        values,
        flags,
    })
}
