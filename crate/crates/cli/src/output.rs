use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::CliError;

/// Version of the summary.json layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Provenance of every `f64` in the output.
pub const FLOAT: &str = "float(53)";

/// An exactly known value, written as a string or integer.
pub fn exact(v: impl Into<Value>) -> Value {
    json!({ "value": v.into(), "provenance": "exact" })
}

pub fn float(x: f64) -> Value {
    let v = if x.is_finite() { json!(x) } else { json!(x.to_string()) };
    json!({ "value": v, "provenance": FLOAT })
}

pub fn float_opt(x: Option<f64>) -> Value {
    match x {
        Some(x) => float(x),
        None => json!({ "value": null, "provenance": FLOAT }),
    }
}

/// A CSV table.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

/// Results of a command before they are written out.
#[derive(Debug, Default)]
pub struct Report {
    pub results: Map<String, Value>,
    pub detail: Option<Table>,
    /// A failure found after the outputs were complete; they are still
    /// written and the run exits with its code.
    pub failure: Option<CliError>,
}

impl Report {
    pub fn put(&mut self, key: &str, v: Value) -> &mut Self {
        self.results.insert(key.to_string(), v);
        self
    }
}

/// Writes `summary.json` and, when present, `detail.csv` into `dir`.
/// Keys are sorted, so identical runs give identical bytes.
pub fn write(dir: &Path, command: &str, params: Value, report: &Report) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "results": Value::Object(report.results.clone()),
        "detail": report.detail.as_ref().map(|_| "detail.csv"),
        "failure": report.failure.as_ref().map(|e| e.to_string()),
    });
    let mut text = serde_json::to_string_pretty(&summary).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(dir.join("summary.json"), text)?;
    if let Some(t) = &report.detail {
        let mut w = csv::Writer::from_path(dir.join("detail.csv")).map_err(|e| CliError::Io(e.to_string()))?;
        w.write_record(&t.header).map_err(|e| CliError::Io(e.to_string()))?;
        for r in &t.rows {
            w.write_record(r).map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush()?;
    }
    Ok(())
}
