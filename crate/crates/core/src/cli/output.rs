//! Plot-ready tables. CSV floats carry 17 significant digits so that
//! every value round-trips.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::params::Format;

pub const ARTIFACT_VERSION: &str = concat!("vacpol ", env!("CARGO_PKG_VERSION"), " artifact 1");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    I(i64),
    B(bool),
    S(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(x) => float(*x),
            Cell::I(i) => i.to_string(),
            Cell::B(b) => b.to_string(),
            Cell::S(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::F(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::I(i) => json!(i),
            Cell::B(b) => json!(b),
            Cell::S(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}
impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::I(x as i64)
    }
}
impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::B(x)
    }
}
impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::S(x.to_owned())
    }
}
impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::S(x)
    }
}
impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::F(f64::NAN), Into::into)
    }
}

pub fn float(x: f64) -> String {
    if x == 0.0 {
        // drop the sign of zero
        "0.0000000000000000e0".into()
    } else if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string().to_lowercase()
    }
}

#[derive(Debug, Clone)]
pub struct Artifact {
    pub command: &'static str,
    pub params: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Scalars that belong to the whole table, in insertion order.
    pub summary: Vec<(&'static str, Cell)>,
}

impl Artifact {
    pub fn new(command: &'static str, params: Value, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            params,
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        let params = serde_json::to_string(&self.params).expect("params serialize");
        writeln!(out, "# {ARTIFACT_VERSION}; command={}; params={params}", self.command).unwrap();
        for (key, value) in &self.summary {
            writeln!(out, "# {key}={}", value.csv()).unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }

    fn json(&self) -> String {
        let mut summary = Map::new();
        for (key, value) in &self.summary {
            summary.insert((*key).into(), value.json());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({
            "artifact": ARTIFACT_VERSION,
            "command": self.command,
            "params": self.params,
            "summary": summary,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json serialize");
        s.push('\n');
        s
    }
}
