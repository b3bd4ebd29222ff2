//! Tabular reports with CSV and JSON writers.
//!
//! Floats are rounded to 6 significant digits when a cell is created, so the
//! CSV text (`{:.5e}`) parses back to exactly the stored value.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::{Error, Result};

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::invalid(format!("unknown format {other:?} (csv or json)"))),
        }
    }
}

/// One report cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

/// Round to 6 significant digits through the CSV representation.
pub fn round_sig6(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}

impl Cell {
    pub fn float(x: f64) -> Self {
        Cell::Float(round_sig6(x))
    }

    pub fn opt_float(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::float)
    }

    pub fn int(x: usize) -> Self {
        Cell::Int(x as i64)
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn to_csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.5e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }

    fn parse_csv_field(s: &str) -> Cell {
        if s.is_empty() {
            return Cell::Empty;
        }
        if s == "true" || s == "false" {
            return Cell::Bool(s == "true");
        }
        if let Ok(v) = s.parse::<i64>() {
            return Cell::Int(v);
        }
        let numeric = s
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '-' | '+'));
        if numeric {
            if let Ok(v) = s.parse::<f64>() {
                return Cell::Float(v);
            }
        }
        Cell::Text(s.to_string())
    }
}

/// Rows of cells under named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// Column index by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Cell at `(row, column name)`.
    pub fn get(&self, row: usize, name: &str) -> Option<&Cell> {
        self.column(name).and_then(|c| self.rows.get(row).map(|r| &r[c]))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let fail = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(&self.columns).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv_field)).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let fail = |e: csv::Error| Error::Parse(e.to_string());
        let columns: Vec<String> = r.headers().map_err(fail)?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(fail)?;
            rows.push(rec.iter().map(Cell::parse_csv_field).collect());
        }
        Ok(Self { columns, rows })
    }

    /// Array of objects keyed by column name, in column order.
    pub fn to_json(&self) -> String {
        let array: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.clone(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(array)).expect("JSON encoding");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }

    /// Write to `path`, or to stdout when `path` is `None`.
    pub fn write(&self, format: Format, path: Option<&Path>) -> Result<()> {
        let text = self.render(format)?;
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::io("<stdout>", e)),
        }
    }
}
