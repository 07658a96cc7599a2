//! Deterministic CSV and JSON rendering.

use serde::Serialize;
use serde_json::value::RawValue;

use crate::config::{ConfigError, Format};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    /// No value (an error row, or a column that does not apply).
    Missing,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }
}

/// Seventeen significant digits; identical on every platform.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of one column, `None` for missing cells.
    pub fn values(&self, name: &str) -> Vec<Option<f64>> {
        let Some(i) = self.column(name) else { return Vec::new() };
        self.rows.iter().map(|r| r[i].as_f64()).collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for note in &self.notes {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => format_float(*v),
                    Cell::Int(v) => v.to_string(),
                    Cell::Text(s) => csv_escape(s),
                    Cell::Missing => String::new(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            command: &'a str,
            notes: &'a [String],
            columns: &'a [String],
            rows: Vec<Vec<Box<RawValue>>>,
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(json_cell).collect())
            .collect();
        let doc = Doc {
            command: self.command,
            notes: &self.notes,
            columns: &self.columns,
            rows,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }
}

fn json_cell(c: &Cell) -> Box<RawValue> {
    let text = match c {
        Cell::Num(v) if v.is_finite() => format_float(*v),
        Cell::Num(_) | Cell::Missing => "null".into(),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) => serde_json::to_string(s).expect("string serializes"),
    };
    RawValue::from_string(text).expect("valid JSON literal")
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Machine-readable error document for JSON mode.
pub fn error_json(kind: &str, message: &str, details: &[String]) -> String {
    let doc = serde_json::json!({
        "error": {
            "kind": kind,
            "message": message,
            "details": details,
        }
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("error serializes");
    s.push('\n');
    s
}

pub fn config_error_json(err: &ConfigError) -> String {
    error_json(err.kind(), &err.to_string(), &err.violations())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        Table {
            command: "test",
            columns: vec!["t".into(), "x".into(), "error".into()],
            rows: vec![
                vec![Cell::Num(0.5), Cell::Num(-1.0 / 3.0), Cell::Missing],
                vec![Cell::Num(1.0), Cell::Missing, Cell::Text("Bad, \"quoted\"".into())],
            ],
            notes: vec!["note".into()],
        }
    }

    #[test]
    fn csv_layout() {
        let csv = table().to_csv();
        assert_eq!(
            csv,
            "# note\nt,x,error\n5.0000000000000000e-1,-3.3333333333333331e-1,\n1.0000000000000000e0,,\"Bad, \"\"quoted\"\"\"\n"
        );
    }

    #[test]
    fn json_round_trips() {
        let v: serde_json::Value = serde_json::from_str(&table().to_json()).unwrap();
        assert_eq!(v["rows"][0][1].as_f64().unwrap(), -1.0 / 3.0);
        assert!(v["rows"][1][1].is_null());
        assert_eq!(v["columns"][2], "error");
    }

    #[test]
    fn float_format_has_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(f64::NAN), "NaN");
    }
}
