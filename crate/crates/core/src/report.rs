//! Deterministic reports in Markdown, CSV or JSON.
//!
//! JSON reports carry a `schema` field, currently `loopalgebra.report/v1`:
//!
//! ```text
//! {
//!   "schema": "loopalgebra.report/v1",
//!   "tool_version": "0.1.0",
//!   "command": "table --max-degree 1 --format json",
//!   "parameters": { "max_degree": "1" },
//!   "summary": null,
//!   "records": [ { "degree": 1, "qh": 1, "h": 1, ... } ]
//! }
//! ```
//!
//! Object keys are emitted in sorted order and records in the order the
//! command produced them, so identical inputs give identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{Map, Value};

pub const SCHEMA: &str = "loopalgebra.report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    /// One-line result for commands whose answer is a single expression.
    pub summary: Option<String>,
    pub columns: Vec<String>,
    pub records: Vec<Vec<Value>>,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            summary: None,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            records: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, record: Vec<Value>) {
        assert_eq!(record.len(), self.columns.len(), "record width");
        self.records.push(record);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Md => self.to_markdown(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_json(&self) -> String {
        let records: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(r.iter().cloned())
                        .collect::<Map<_, _>>(),
                )
            })
            .collect();
        let mut root = Map::new();
        root.insert("schema".into(), SCHEMA.into());
        root.insert("tool_version".into(), env!("CARGO_PKG_VERSION").into());
        root.insert("command".into(), self.command.clone().into());
        root.insert(
            "parameters".into(),
            Value::Object(
                self.parameters
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::from(v.clone())))
                    .collect(),
            ),
        );
        root.insert(
            "summary".into(),
            self.summary.clone().map_or(Value::Null, Value::from),
        );
        root.insert("records".into(), Value::Array(records));
        let mut s =
            serde_json::to_string_pretty(&Value::Object(root)).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.records {
            w.write_record(r.iter().map(cell)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# loopalgebra {}", self.command);
        let _ = writeln!(s);
        let _ = writeln!(s, "tool version {}", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "- {k}: {v}");
        }
        if let Some(summary) = &self.summary {
            let _ = writeln!(s);
            let _ = writeln!(s, "{summary}");
        }
        if !self.columns.is_empty() && !self.records.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "| {} |", self.columns.join(" | "));
            let _ = writeln!(s, "|{}", "---|".repeat(self.columns.len()));
            for r in &self.records {
                let cells: Vec<String> = r.iter().map(|v| cell(v).replace('|', "\\|")).collect();
                let _ = writeln!(s, "| {} |", cells.join(" | "));
            }
        }
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::new("demo --x 1", &["a", "b"]).param("x", 1);
        r.push(vec![json!(1), json!("(3,2)")]);
        r.push(vec![json!(null), json!("p|q")]);
        r
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(sample().to_csv(), "a,b\n1,\"(3,2)\"\n,p|q\n");
    }

    #[test]
    fn json_has_schema_and_records() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["records"][0]["b"], "(3,2)");
        assert_eq!(v["parameters"]["x"], "1");
    }

    #[test]
    fn markdown_escapes_pipes() {
        let md = sample().to_markdown();
        assert!(md.contains("| a | b |"));
        assert!(md.contains("p\\|q"));
    }

    #[test]
    fn rendering_is_deterministic() {
        for f in [Format::Md, Format::Csv, Format::Json] {
            assert_eq!(sample().render(f), sample().render(f));
        }
    }
}
