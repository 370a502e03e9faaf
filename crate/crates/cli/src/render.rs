//! Output formats. Every report is a serde value; CSV and text are flattened
//! views of the same value, so all three formats carry identical data.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A report either is a single record or carries a list of rows.
pub trait Report: Serialize {
    fn rows(&self) -> Option<Vec<Map<String, Value>>> {
        None
    }
}

fn as_object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(";")
        }
        Value::Array(_) | Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn csv_text(rows: &[Map<String, Value>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        w.write_record(first.keys()).unwrap();
    }
    for row in rows {
        w.write_record(row.values().map(cell)).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn table_text(rows: &[Map<String, Value>]) -> String {
    let Some(first) = rows.first() else { return String::new() };
    let header: Vec<String> = first.keys().cloned().collect();
    let body: Vec<Vec<String>> = rows.iter().map(|r| r.values().map(cell).collect()).collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|j| body.iter().map(|r| r[j].chars().count()).chain([header[j].chars().count()]).max().unwrap())
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&header);
    for r in &body {
        out += &line(r);
    }
    out
}

pub fn render<R: Report>(report: &R, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).unwrap() + "\n",
        Format::Csv => match report.rows() {
            Some(rows) => csv_text(&rows),
            None => csv_text(&[as_object(serde_json::to_value(report).unwrap())]),
        },
        Format::Text => {
            let mut out = String::new();
            let top = as_object(serde_json::to_value(report).unwrap());
            let rows = report.rows();
            for (key, value) in &top {
                if rows.is_none() || !value.is_array() {
                    out += &format!("{key}: {}\n", cell(value));
                }
            }
            if let Some(rows) = rows {
                out += &table_text(&rows);
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[derive(Serialize)]
    struct One {
        p: u64,
        betti: Vec<usize>,
        name: String,
    }
    impl Report for One {}

    #[test]
    fn single_record_formats() {
        let r = One { p: 7, betti: vec![0, 1, 1], name: "a,b".into() };
        assert_eq!(render(&r, Format::Csv), "p,betti,name\n7,0;1;1,\"a,b\"\n");
        assert_eq!(render(&r, Format::Text), "p: 7\nbetti: 0;1;1\nname: a,b\n");
        let back: Value = serde_json::from_str(&render(&r, Format::Json)).unwrap();
        assert_eq!(back, json!({"p": 7, "betti": [0, 1, 1], "name": "a,b"}));
    }

    #[test]
    fn table_alignment() {
        let rows = vec![as_object(json!({"a": 1, "bb": "x"})), as_object(json!({"a": 100, "bb": "y"}))];
        assert_eq!(table_text(&rows), "a    bb\n1    x\n100  y\n");
    }
}
