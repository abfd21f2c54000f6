//! Integer tables rendered as CSV or JSON.

use std::str::FromStr;

use beatty_core::BigInt;
use serde_json::{Map, Number, Value};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Text(String),
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v.into())
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            // Exact digits; arbitrary_precision keeps big values intact.
            Cell::Int(v) => Value::Number(Number::from_str(&v.to_string()).expect("integer literal")),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.into());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is ascii"))
    }

    pub fn to_json(&self, config: &RunConfig) -> String {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| ((*c).to_owned(), v.to_json())).collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("config".into(), serde_json::to_value(config).expect("config serializes"));
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{FamilyArg, Format, UnitArgs};

    #[test]
    fn csv_and_json_shapes() {
        let mut t = Table::new(vec!["j", "k"]);
        t.push(vec![Cell::from(-3), Cell::Text("special".into())]);
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        t.push(vec![Cell::from(big), Cell::from(4)]);
        assert_eq!(t.to_csv().unwrap(), "j,k\n-3,special\n123456789012345678901234567890,4\n");
        let cfg = RunConfig::new("mismatch", &UnitArgs { family: FamilyArg::A, m: 1 }, Format::Json);
        let json = t.to_json(&cfg);
        assert!(json.contains("123456789012345678901234567890"));
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["config"]["family"], "a");
        assert_eq!(v["rows"][0]["k"], "special");
        assert_eq!(v["rows"][0]["j"].to_string(), "-3");
    }
}
