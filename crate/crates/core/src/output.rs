//! Deterministic text, CSV and JSON-lines serialization of result rows.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::tables::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    JsonLines,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "csv" => Some(Format::Csv),
            "json-lines" | "jsonl" => Some(Format::JsonLines),
            _ => None,
        }
    }
}

/// Named columns of string cells, emitted in the order given.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Records {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Records {
    pub fn new<S: ToString>(columns: &[S]) -> Records {
        Records {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: &[S]) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row.iter().map(|c| c.to_string()).collect());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::JsonLines => self.json_lines(),
        }
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String]| {
            let n = cells.len();
            for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
                out.push_str(c);
                if i + 1 < n {
                    let pad = w - c.chars().count() + 2;
                    out.extend(std::iter::repeat_n(' ', pad));
                }
            }
            out.truncate(out.trim_end_matches(' ').len());
            out.push('\n');
        };
        line(&mut out, &self.columns);
        for r in &self.rows {
            line(&mut out, r);
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    fn json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let obj: Map<String, Value> = self
                .columns
                .iter()
                .zip(r)
                .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                .collect();
            let _ = writeln!(out, "{}", Value::Object(obj));
        }
        out
    }
}

/// The computed values of a table, key columns first.
pub fn table_records(t: &Table) -> Records {
    let mut cols = t.key_columns.clone();
    cols.extend(t.columns.iter().cloned());
    let mut rec = Records::new(&cols);
    for r in &t.rows {
        let mut row = r.key.clone();
        row.extend(r.cells.iter().map(|c| c.actual.clone()));
        rec.push(&row);
    }
    rec
}

/// One line per mismatching cell, then a summary line.
pub fn diff_report(t: &Table) -> String {
    let mut out = String::new();
    let diffs = t.diffs();
    for d in &diffs {
        let _ = writeln!(out, "diff {} [{}] {}: expected {}, got {}", t.id, d.row, d.column, d.expected, d.actual);
    }
    let status = if diffs.is_empty() { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "{status} {}: {} checked cells, {} mismatches",
        t.id,
        t.checked_cells(),
        diffs.len()
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;
    use crate::poly::Order;

    fn sample() -> Records {
        let mut r = Records::new(&["class", "cod", "mu", "ind"]);
        r.push(&["T7^0", "0", "2", "0"]);
        r.push(&["T7^7".to_string(), "7".into(), "7".into(), Order::Infinity.to_string()]);
        r
    }

    #[test]
    fn csv_rows() {
        let s = sample().render(Format::Csv);
        assert_eq!(s, "class,cod,mu,ind\nT7^0,0,2,0\nT7^7,7,7,inf\n");
    }

    #[test]
    fn json_lines_keep_column_order() {
        let s = sample().render(Format::JsonLines);
        assert_eq!(s.lines().next().unwrap(), r#"{"class":"T7^0","cod":"0","mu":"2","ind":"0"}"#);
    }

    #[test]
    fn text_is_aligned() {
        let s = sample().render(Format::Text);
        assert_eq!(s.lines().nth(1).unwrap(), "T7^0   0    2   0");
    }

    #[test]
    fn rationals_print_as_fractions() {
        assert_eq!(Scalar::new(3.into(), 2.into()).to_string(), "3/2");
        assert_eq!(Scalar::new(4.into(), 2.into()).to_string(), "2");
    }

    #[test]
    fn rendering_is_deterministic() {
        for f in [Format::Text, Format::Csv, Format::JsonLines] {
            assert_eq!(sample().render(f), sample().render(f));
        }
    }
}
