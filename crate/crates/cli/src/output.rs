//! Rendering reports as JSON, CSV or plain text.

use std::io::Write;

use serde_json::{Map, Value};
use ultranorm_core::{Error, Rational, Result};

use crate::Format;

/// A command's resolved configuration and results. `table`, when present,
/// is the CSV/text rendering of a row-oriented result.
pub struct Report {
    pub command: &'static str,
    pub config: Map<String, Value>,
    pub body: Map<String, Value>,
    pub table: Option<Table>,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, config: Map::new(), body: Map::new(), table: None }
    }

    pub fn config(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.config.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl serde::Serialize) -> Result<()> {
        let v = serde_json::to_value(value).map_err(|e| Error::Input(format!("cannot serialise {key}: {e}")))?;
        self.body.insert(key.to_string(), v);
        Ok(())
    }
}

/// Integers become JSON numbers; other rationals stay exact strings.
pub fn rational_value(r: &Rational) -> Value {
    match r.to_i64() {
        Some(n) if r.is_integer() => Value::from(n),
        _ => Value::from(r.to_string()),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Dotted keys for nested objects; arrays are kept as compact JSON.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

pub fn emit(report: &Report, format: Format) -> Result<()> {
    let mut doc = Map::new();
    doc.insert("command".into(), Value::from(report.command));
    doc.insert("config".into(), Value::Object(report.config.clone()));
    doc.extend(report.body.clone());
    let io = |e: std::io::Error| Error::Input(format!("cannot write output: {e}"));
    let mut out = std::io::stdout().lock();
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialise");
            writeln!(out, "{text}").map_err(io)?;
        }
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", &Value::Object(doc), &mut lines);
            for (k, v) in lines.iter().filter(|(k, _)| report.table.is_none() || !k.starts_with("rows")) {
                writeln!(out, "{k}: {v}").map_err(io)?;
            }
            if let Some(t) = &report.table {
                writeln!(out, "{}", t.header.join("\t")).map_err(io)?;
                for row in &t.rows {
                    writeln!(out, "{}", row.join("\t")).map_err(io)?;
                }
            }
        }
        Format::Csv => {
            // Keep stdout a single CSV table; the configuration goes to stderr.
            eprintln!("# config: {}", Value::Object(report.config.clone()));
            let mut w = csv::Writer::from_writer(&mut out);
            let csv_err = |e: csv::Error| Error::Input(format!("cannot write CSV: {e}"));
            match &report.table {
                Some(t) => {
                    w.write_record(&t.header).map_err(csv_err)?;
                    for row in &t.rows {
                        w.write_record(row).map_err(csv_err)?;
                    }
                }
                None => {
                    let mut cells = Vec::new();
                    flatten("", &Value::Object(report.body.clone()), &mut cells);
                    w.write_record(cells.iter().map(|(k, _)| k)).map_err(csv_err)?;
                    w.write_record(cells.iter().map(|(_, v)| v)).map_err(csv_err)?;
                }
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(())
}
