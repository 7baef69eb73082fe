use std::fmt::Write;

use serde_json::Value;

use crate::commands::{Report, SCHEMA};

/// Plain-text rendering: a header followed by the payload as an indented
/// outline. Long scalar arrays stay on one line.
pub fn text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {SCHEMA}");
    let _ = writeln!(out, "command: {}", report.command);
    let _ = writeln!(out, "status: {}", report.status.as_str());
    outline(&mut out, "inputs", &report.inputs, 0);
    outline(&mut out, "payload", &report.payload, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => {
            Some(format!("[{}]", items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn outline(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                outline(out, k, x, depth + 1);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                outline(out, &format!("- {i}"), x, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
