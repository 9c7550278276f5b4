//! Output records and their two renderings.
//!
//! JSON: one [`OutputRecord`] per invocation, every number an exact string.
//! TSV: a `#` header naming the columns, then one row per line. Table-shaped
//! commands print one row per entry; the others print `key<TAB>value` rows.
//! Status lines (such as the oracle verdict) also start with `#`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Value,
    pub provenance: String,
}

/// A finished command: the JSON record plus the TSV lines, and whether the
/// verification it performed succeeded.
#[derive(Debug)]
pub struct Report {
    pub record: OutputRecord,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    notes: Vec<String>,
    pub verified: bool,
}

impl Report {
    pub fn new(command: &str, provenance: &str, columns: Vec<&'static str>) -> Self {
        Report {
            record: OutputRecord {
                command: command.to_owned(),
                parameters: BTreeMap::new(),
                results: Value::Object(Map::new()),
                provenance: provenance.to_owned(),
            },
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
            verified: true,
        }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.record.parameters.insert(name.to_owned(), value.to_string());
        self
    }

    pub fn result(&mut self, name: &str, value: Value) -> &mut Self {
        if let Value::Object(m) = &mut self.record.results {
            m.insert(name.to_owned(), value);
        }
        self
    }

    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
        self
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.notes.push(line.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.record).expect("record serializes");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = format!("# {}\n", self.columns.join("\t"));
                for row in &self.rows {
                    let _ = writeln!(s, "{}", row.join("\t"));
                }
                for note in &self.notes {
                    let _ = writeln!(s, "# {note}");
                }
                s
            }
        }
    }
}

/// JSON string for any displayable value.
pub fn text(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

/// JSON object with string-valued fields.
pub fn object<'a>(fields: impl IntoIterator<Item = (&'a str, Value)>) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_owned(), v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trips_byte_for_byte() {
        let mut r = Report::new("bounds enriques", "test", vec!["key", "value"]);
        r.param("beta-sq", 4).param("d", 1);
        r.result("codim_bound", text("-2+2*sqrt(2)"))
            .result("cases", object([("1.2", text("1/2")), ("1.1", text("-2+2*sqrt(2)"))]))
            .result("pairs", Value::Array(vec![object([("theta1", text("(1,0)"))])]));
        let rendered = r.render(Format::Json);
        let back: OutputRecord = serde_json::from_str(&rendered).unwrap();
        assert_eq!(back, r.record);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap() + "\n", rendered);
    }

    #[test]
    fn tsv_has_header_rows_and_notes() {
        let mut r = Report::new("decompose", "test", vec!["theta1", "theta2"]);
        r.row(vec!["(1,0)".into(), "(0,1)".into()]).note("1 pairs");
        assert_eq!(r.render(Format::Tsv), "# theta1\ttheta2\n(1,0)\t(0,1)\n# 1 pairs\n");
    }
}
