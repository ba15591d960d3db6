//! JSON, CSV and table renderings of one report.
//!
//! CSV and table output flatten the JSON into `key,value` rows with dotted
//! paths (`points[3].params.q`), so all three formats carry the same numbers.

use serde_json::Value;

use crate::Format;

pub fn render(report: &Value, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"])?;
            for (k, v) in flatten(report) {
                w.write_record([k, v])?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Table => {
            let rows = flatten(report);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            Ok(rows
                .into_iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect())
        }
    }
}

/// Leaf values with their paths, in key order.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                walk(child, p, out);
            }
        }
        // Short lists of scalars stay on one row.
        Value::Array(items) if items.len() <= 16 && items.iter().all(is_scalar) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((path, format!("[{}]", joined.join(" "))));
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                walk(child, format!("{path}[{i}]"), out);
            }
        }
        leaf => out.push((path, scalar(leaf))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattening() {
        let v = json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": true}], "f": null});
        assert_eq!(
            flatten(&v),
            vec![
                ("a".into(), "1".into()),
                ("b.c".into(), "[1 2]".into()),
                ("d[0].e".into(), "true".into()),
                ("f".into(), "null".into()),
            ]
        );
    }

    #[test]
    fn csv_has_header() {
        let out = render(&json!({"n": 21}), Format::Csv).unwrap();
        assert_eq!(out, "key,value\nn,21\n");
    }
}
