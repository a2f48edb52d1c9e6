//! Deterministic JSON: sorted keys, floats in fixed scientific format.

use serde::Serialize;
use serde_json::Value;

/// Digits after the point in every float.
const FLOAT_DIGITS: usize = 15;

pub fn fmt_float(x: f64) -> String {
    // -0.0 prints as 0.0
    format!("{:.*e}", FLOAT_DIGITS, if x == 0.0 { 0.0 } else { x })
}

fn write(v: &Value, out: &mut String, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&fmt_float(n.as_f64().unwrap_or(f64::NAN)));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) => {
            if a.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write(x, out, indent + 1);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) => {
            if m.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write(&m[*k], out, indent + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

/// Serializes through serde_json's value tree, so NaN becomes null.
pub fn to_string<T: Serialize>(x: &T) -> serde_json::Result<String> {
    let v = serde_json::to_value(x)?;
    let mut out = String::new();
    write(&v, &mut out, 0);
    out.push('\n');
    Ok(out)
}
