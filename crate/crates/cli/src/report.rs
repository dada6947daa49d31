use std::collections::BTreeSet;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Output of one command: machine-readable results plus the text rendering.
pub struct Report {
    pub command: String,
    pub results: Vec<Value>,
    pub lines: Vec<String>,
    pub pass: bool,
    /// Some input was skipped because it exceeds the order cap.
    pub capped: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            results: Vec::new(),
            lines: Vec::new(),
            pass: true,
            capped: false,
        }
    }

    pub fn push<T: Serialize>(&mut self, value: &T) {
        self.results.push(to_value(value));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn json(&self) -> Value {
        json!({
            "command": self.command,
            "results": self.results,
            "pass": self.pass,
        })
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Text => {
                for l in &self.lines {
                    writeln!(out, "{l}")?;
                }
                Ok(())
            }
            Format::Json => writeln!(out, "{}", canonical_json(&self.json())),
            Format::Csv => self.write_csv(out),
        }
    }

    /// One row per result; nested values are written as compact JSON.
    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut columns = BTreeSet::new();
        for r in &self.results {
            match r {
                Value::Object(m) => columns.extend(m.keys().cloned()),
                _ => {
                    columns.insert("value".to_string());
                }
            }
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&columns)?;
        for r in &self.results {
            let row = columns.iter().map(|c| {
                let v = match r {
                    Value::Object(m) => m.get(c),
                    other if c == "value" => Some(other),
                    _ => None,
                };
                match v {
                    None | Some(Value::Null) => String::new(),
                    Some(Value::String(s)) => s.clone(),
                    Some(v) => v.to_string(),
                }
            });
            w.write_record(row)?;
        }
        w.flush()
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Pretty-printed with sorted keys, so parsing and re-serializing is
/// byte-identical.
pub fn canonical_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}
