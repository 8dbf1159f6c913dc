use jumploci_core::Error;
use serde_json::{json, Value};

use crate::Format;

/// A command result in all three output formats.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    /// Set when some unit of work failed; the process exits nonzero.
    pub failed: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = self.header.join(",");
                s.push('\n');
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|c| csv_cell(c)).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Text => self.text.clone(),
        }
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

pub fn error_record(e: &anyhow::Error) -> String {
    let (kind, offset) = match e.downcast_ref::<Error>() {
        Some(Error::Parse { offset, .. }) => ("parse", Some(*offset)),
        Some(Error::Invariant(_)) => ("invariant", None),
        Some(Error::DegreeCap { .. }) => ("degree_cap", None),
        Some(_) => ("invalid_input", None),
        None if e.downcast_ref::<std::io::Error>().is_some() => ("io", None),
        None => ("invalid_input", None),
    };
    let mut err = json!({ "kind": kind, "message": format!("{e:#}") });
    if let Some(o) = offset {
        err["offset"] = json!(o);
    }
    serde_json::to_string(&json!({ "error": err })).expect("json value")
}
