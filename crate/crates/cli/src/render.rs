use std::fmt::Write as _;

use serde_json::Value;

use crate::commands::{Report, Table};
use crate::config::OutputFormat;

pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&report.document),
        OutputFormat::Csv => csv(report),
        OutputFormat::Text => text(&report.document),
    }
}

pub fn json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("a Value always serializes");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv(report: &Report) -> String {
    let fallback;
    let table = match &report.table {
        Some(t) => t,
        None => {
            // key,value over the top-level scalars
            let rows = match &report.document {
                Value::Object(m) => m
                    .iter()
                    .filter(|(_, v)| !v.is_object() && !v.is_array())
                    .map(|(k, v)| vec![k.clone(), scalar(v)])
                    .collect(),
                _ => Vec::new(),
            };
            fallback = Table { headers: vec!["key", "value"], rows };
            &fallback
        }
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.headers).expect("in-memory write");
    for r in &table.rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn text(doc: &Value) -> String {
    let mut out = String::new();
    walk(doc, 0, &mut out);
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn walk(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    let shown = if x.is_array() { x.to_string() } else { scalar(x) };
                    let _ = writeln!(out, "{pad}{k}: {shown}");
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    walk(x, depth + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}- {}", if x.is_array() { x.to_string() } else { scalar(x) });
                } else {
                    let _ = writeln!(out, "{pad}[{i}]");
                    walk(x, depth + 1, out);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}
