//! Aligned text rendering of a JSON payload.
//!
//! Scalars and short arrays become `key  value` rows; arrays of objects
//! become tables; nested objects are flattened with dotted keys.

use serde_json::{Map, Value};

pub fn text(payload: &Value) -> String {
    let Value::Object(map) = payload else {
        return format!("{}\n", cell(payload, true));
    };
    if map.len() == 1 {
        if let Some(v) = map.get("value") {
            return format!("{}\n", cell(v, true));
        }
    }
    let mut rows = Vec::new();
    let mut tables = Vec::new();
    flatten("", map, &mut rows, &mut tables);

    let mut out = String::new();
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    for (name, items) in tables {
        out.push_str(&format!("\n{name}\n"));
        out.push_str(&table(items));
    }
    out
}

fn flatten<'a>(
    prefix: &str,
    map: &'a Map<String, Value>,
    rows: &mut Vec<(String, String)>,
    tables: &mut Vec<(String, &'a [Value])>,
) {
    for (k, v) in map {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Object(inner) => flatten(&key, inner, rows, tables),
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                tables.push((key, items));
            }
            _ => rows.push((key, cell(v, true))),
        }
    }
}

fn table(items: &[Value]) -> String {
    let columns: Vec<&String> = match &items[0] {
        Value::Object(m) => m.keys().collect(),
        _ => Vec::new(),
    };
    let body: Vec<Vec<String>> = items
        .iter()
        .map(|item| {
            columns
                .iter()
                .map(|c| cell(&item[c.as_str()], true))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            body.iter()
                .map(|r| r[i].len())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(columns.iter().map(|c| c.as_str()).collect());
    for r in &body {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// Top-level integer lists print comma separated, matching the input syntax.
fn cell(v: &Value, top: bool) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) if top && !items.is_empty() && items.iter().all(Value::is_number) => {
            items
                .iter()
                .map(|x| cell(x, false))
                .collect::<Vec<_>>()
                .join(",")
        }
        Value::Array(items) => format!(
            "[{}]",
            items
                .iter()
                .map(|x| cell(x, false))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Value::Object(m) => {
            let parts: Vec<String> = m
                .iter()
                .map(|(k, x)| format!("{k}={}", cell(x, false)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}
