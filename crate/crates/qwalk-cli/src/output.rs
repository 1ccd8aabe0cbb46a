use std::fmt::Write as _;

use serde_json::{Map, Value};

/// Formats a float with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub struct Table {
    /// file name suffix; empty for the main table
    pub suffix: String,
    header: Vec<String>,
    rows: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    I(i64),
    U(usize),
    F(f64),
    B(bool),
}

impl Table {
    pub fn new(suffix: &str, header: &[&str]) -> Self {
        Table { suffix: suffix.to_string(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: &[Cell]) {
        assert_eq!(cells.len(), self.header.len(), "row width differs from header");
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            match c {
                Cell::I(v) => write!(s, "{v}"),
                Cell::U(v) => write!(s, "{v}"),
                Cell::F(v) => write!(s, "{}", num(*v)),
                Cell::B(v) => write!(s, "{}", u8::from(*v)),
            }
            .expect("writing to a String");
        }
        self.rows.push(s);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }
}

/// Tables plus named scalar results.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub tables: Vec<Table>,
    pub summary: Map<String, Value>,
}

impl Output {
    pub fn table(mut self, t: Table) -> Self {
        self.tables.push(t);
        self
    }

    pub fn put(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.summary.insert(key.to_string(), v.into());
        self
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.summary.insert(key.to_string(), v.into());
    }
}
