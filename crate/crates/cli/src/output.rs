//! Deterministic CSV and JSON rendering.
//!
//! Reals are written with 17 significant digits, which round-trips every
//! `f64`. Non-finite reals become empty CSV cells and JSON `null`.

use std::str::FromStr;

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Bool(bool),
    Text(String),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) if v.is_finite() => real_text(*v),
            Cell::Real(_) | Cell::Missing => String::new(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Real(v) => real(*v),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Missing => Value::Null,
        }
    }
}

/// `d.dddddddddddddddde+x` with an explicitly signed exponent.
fn real_text(x: f64) -> String {
    let text = format!("{x:.16e}");
    match text.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => text,
    }
}

/// JSON number carrying exactly the 17-digit text.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&real_text(x)).expect("formatted float is a valid JSON number"))
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// A run's output: its resolved configuration, an optional summary and a table.
#[derive(Debug, Clone)]
pub struct Document {
    pub config: Map<String, Value>,
    pub report: Option<Map<String, Value>>,
    pub table: Table,
}

impl Document {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = format!("# config: {}\n", Value::Object(self.config.clone()));
        if let Some(report) = &self.report {
            out.push_str(&format!("# report: {}\n", Value::Object(report.clone())));
        }
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(&self.table.columns).expect("in-memory write");
        for row in &self.table.rows {
            writer.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        let body = writer.into_inner().expect("in-memory flush");
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        out
    }

    fn json(&self) -> String {
        let mut root = Map::new();
        root.insert("config".into(), Value::Object(self.config.clone()));
        if let Some(report) = &self.report {
            root.insert("report".into(), Value::Object(report.clone()));
        }
        let rows = self
            .table
            .rows
            .iter()
            .map(|row| {
                let record = self
                    .table
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect::<Map<_, _>>();
                Value::Object(record)
            })
            .collect();
        root.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("json values serialize");
        text.push('\n');
        text
    }
}
