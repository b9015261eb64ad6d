//! Number formatting and the text, JSON and CSV renderers.

use serde_json::{Map, Number, Value};

/// Significant digits kept in every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits. Non-finite values and
/// zero pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal rendering of `round_sig(x)`.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        // no "-0"
        return "0".into();
    }
    if r.abs() < 1e-6 || r.abs() >= 1e15 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Rounds every floating-point number inside `v` in place.
pub fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_sig).and_then(Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Scalar rendering used by the text and CSV formats.
pub fn fmt_value(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => n.as_f64().map(fmt_num).unwrap_or_default(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Flattens nested objects and arrays into `a.b.0`-style keys.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn walk(v: &Value, prefix: &str, out: &mut Vec<(String, String)>) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(map) => map.iter().for_each(|(k, v)| walk(v, &key(k), out)),
            Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| walk(v, &key(&i.to_string()), out)),
            scalar => out.push((prefix.to_string(), fmt_value(scalar))),
        }
    }
    let mut out = Vec::new();
    walk(v, "", &mut out);
    out
}

/// Two-column `key value` table.
pub fn record_text(v: &Value) -> String {
    let rows = flatten(v);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, val)| format!("{k:<width$}  {val}\n")).collect()
}

pub fn record_csv(v: &Value) -> String {
    let mut out = String::from("field,value\n");
    for (k, val) in flatten(v) {
        out.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&val)));
    }
    out
}

/// Fixed-width table with right-aligned columns.
pub fn table_text(header: &[&str], rows: &[Vec<Value>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(fmt_value).collect()).collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| cells.iter().map(|r| r[c].chars().count()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |items: Vec<&str>| {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        padded.join("  ") + "\n"
    };
    let mut out = line(header.to_vec());
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn table_csv(header: &[&str], rows: &[Vec<Value>]) -> String {
    let mut out = header.join(",") + "\n";
    for r in rows {
        let fields: Vec<String> = r.iter().map(|v| csv_field(&fmt_value(v))).collect();
        out.push_str(&(fields.join(",") + "\n"));
    }
    out
}

pub fn table_json(header: &[&str], rows: &[Vec<Value>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect::<Map<_, _>>()))
            .collect(),
    )
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
