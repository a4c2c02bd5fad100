//! The output envelope and its three renderings.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::args::Format;

pub const TOOL: &str = "tetra";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Digit strings are printed most-significant digit first.
pub const ORIENTATION: &str = "msd-first";

/// What every subcommand returns in JSON mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Value,
    pub orientation: String,
    pub payload: Value,
}

/// Rows for CSV output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows
            .push(row.into_iter().map(|c| c.to_string()).collect());
    }

    /// Two columns, one row per top-level payload field.
    fn from_payload(payload: &Value) -> Self {
        let mut table = Table::new(["field", "value"]);
        if let Value::Object(map) = payload {
            for (key, value) in map {
                table.push([key.clone(), scalar_text(value)]);
            }
        }
        table
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// A finished command: envelope, plain lines, optional table, and whether
/// a check it ran failed.
#[derive(Debug, Clone)]
pub struct Output {
    pub envelope: OutputEnvelope,
    pub plain: Vec<String>,
    pub table: Option<Table>,
    pub check_failed: bool,
}

impl Output {
    pub fn new(command: &str, input: &impl Serialize, payload: Value) -> Self {
        let input = serde_json::to_value(input).unwrap_or(Value::Object(Map::new()));
        Output {
            envelope: OutputEnvelope {
                tool: TOOL.into(),
                version: VERSION.into(),
                command: command.into(),
                input,
                orientation: ORIENTATION.into(),
                payload,
            },
            plain: Vec::new(),
            table: None,
            check_failed: false,
        }
    }

    pub fn plain(mut self, lines: impl IntoIterator<Item = String>) -> Self {
        self.plain = lines.into_iter().collect();
        self
    }

    pub fn table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        self.check_failed = failed;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => {
                let mut s = self.plain.join("\n");
                s.push('\n');
                s
            }
            Format::Json => render_json(&self.envelope),
            Format::Csv => {
                let fallback;
                let table = match &self.table {
                    Some(t) => t,
                    None => {
                        fallback = Table::from_payload(&self.envelope.payload);
                        &fallback
                    }
                };
                render_csv(table)
            }
        }
    }
}

pub fn render_json(envelope: &OutputEnvelope) -> String {
    let mut s = serde_json::to_string_pretty(envelope).expect("envelope serializes");
    s.push('\n');
    s
}

pub fn render_csv(table: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_round_trips() {
        let out = Output::new(
            "digits",
            &json!({"base": 3, "height": 4}),
            json!({"digits": "0387"}),
        );
        let text = out.render(Format::Json);
        let parsed: Value = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(text, again);
        let env: OutputEnvelope = serde_json::from_str(&text).unwrap();
        assert_eq!(env.orientation, "msd-first");
    }

    #[test]
    fn csv_falls_back_to_fields() {
        let out = Output::new("limit", &json!({}), json!({"base": 3, "digits": "387"}));
        assert_eq!(out.render(Format::Csv), "field,value\nbase,3\ndigits,387\n");
    }

    #[test]
    fn plain_is_line_oriented() {
        let out = Output::new("x", &json!({}), json!({})).plain(["a".to_string(), "b".to_string()]);
        assert_eq!(out.render(Format::Plain), "a\nb\n");
    }
}
