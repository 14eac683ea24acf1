//! Report rendering: JSON is canonical, CSV and the text table are flat
//! projections of the same rows.

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// A finished command result.
#[derive(Debug, Clone)]
pub struct Report {
    pub title: String,
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Something failed that the user should look at (exit code 1).
    pub findings: bool,
}

impl Report {
    pub fn new(title: impl Into<String>, payload: &impl Serialize, header: &[&str]) -> Self {
        Self {
            title: title.into(),
            json: serde_json::to_value(payload).expect("reports serialize"),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            findings: false,
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory csv");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory csv");
                }
                String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 cells")
            }
            Format::Table => self.text_table(),
        }
    }

    fn text_table(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            padded.join(" | ").trim_end().to_string()
        };
        let mut out = format!("{}\n", self.title);
        out.push_str(&line(&self.header));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&rule.join("-+-"));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn join_set<'a>(items: impl IntoIterator<Item = &'a u64>) -> String {
    items.into_iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("values", &serde_json::json!({"k": 1}), &["n", "value"]);
        r.row(vec!["1".into(), "10".into()]);
        r.row(vec!["200".into(), "3".into()]);
        r
    }

    #[test]
    fn csv_and_table() {
        let r = sample();
        assert_eq!(r.render(Format::Csv), "n,value\n1,10\n200,3\n");
        let t = r.render(Format::Table);
        assert!(t.starts_with("values\nn   | value\n----+------\n1   | 10\n"));
        assert_eq!(r.render(Format::Json), "{\n  \"k\": 1\n}\n");
    }
}
