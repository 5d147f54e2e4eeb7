use std::fmt::Write;

use mcap::Error;
use serde_json::{json, Value};

use crate::config::Format;

pub const EXIT_OTHER: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

pub struct Report {
    pub value: Value,
    pub status: u8,
}

impl Report {
    pub fn ok(value: Value) -> Self {
        Self { value, status: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.value).unwrap()),
            Format::Human => human(&self.value),
        }
    }
}

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::Instance(_) | Error::DimensionMismatch { .. } => EXIT_PARSE,
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        Error::GuardExceeded(_) => EXIT_GUARD,
        Error::Precondition(_) | Error::Internal(_) => EXIT_OTHER,
    }
}

fn kind(err: &Error) -> &'static str {
    match err {
        Error::Parse(_) => "parse",
        Error::Instance(_) => "invalid-instance",
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::Infeasible(_) => "infeasible",
        Error::GuardExceeded(_) => "guard-exceeded",
        Error::Precondition(_) => "precondition",
        Error::Internal(_) => "internal",
    }
}

pub fn error_object(err: &Error) -> String {
    json!({ "error": { "kind": kind(err), "message": err.to_string(), "exit_code": exit_code(err) } })
        .to_string()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn table(rows: &[Value], out: &mut String) {
    let Some(Value::Object(first)) = rows.first() else {
        return;
    };
    let columns: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| columns.iter().map(|c| scalar(&r[c.as_str()])).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap())
        .collect();
    let line = |values: Vec<&str>| {
        let padded: Vec<String> = values
            .iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}"))
            .collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(columns.iter().map(|c| c.as_str()).collect()));
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
}

/// `key: value` lines; arrays of objects become aligned tables.
fn human(value: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = value else {
        return format!("{}\n", scalar(value));
    };
    for (key, v) in map {
        match v {
            Value::Array(items) if items.iter().any(Value::is_object) => {
                let _ = writeln!(out, "{key}:");
                table(items, &mut out);
            }
            Value::Array(items) if items.iter().any(Value::is_array) => {
                let _ = writeln!(out, "{key}:");
                for item in items {
                    let _ = writeln!(out, "  {}", scalar(item));
                }
            }
            _ => {
                let _ = writeln!(out, "{key}: {}", scalar(v));
            }
        }
    }
    out
}
