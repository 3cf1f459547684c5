//! CSV / JSON serialisation of result rows.
//!
//! Numbers are written with 9 significant digits; values that do not exist
//! (an infeasible optimisation, a non-finite result) are written as the
//! string `infeasible`. JSON numbers are parsed from the same text as the
//! CSV cells, so both formats carry identical values.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use super::config::OutputFormat;
use crate::error::{Error, Result};

pub const INFEASIBLE: &str = "infeasible";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Infeasible,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Infeasible, Cell::Num)
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_sig9(*v).unwrap_or_else(|| INFEASIBLE.to_string()),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Infeasible => INFEASIBLE.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(_) => {
                let s = self.render();
                s.parse::<f64>()
                    .ok()
                    .and_then(serde_json::Number::from_f64)
                    .map_or(Value::String(s), Value::Number)
            }
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Infeasible => Value::String(INFEASIBLE.to_string()),
        }
    }
}

/// `v` with 9 significant digits, trailing zeros trimmed; `None` if not finite.
pub fn format_sig9(v: f64) -> Option<String> {
    if !v.is_finite() {
        return None;
    }
    if v == 0.0 {
        return Some("0".to_string());
    }
    // Round first in scientific form so the exponent reflects the rounding.
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..=15).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, mantissa.parse::<f64>().unwrap() * 10f64.powi(exp));
        Some(trim_zeros(&fixed))
    } else {
        Some(format!("{}e{exp}", trim_zeros(mantissa)))
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Rows sharing one header.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let to_err = |e: csv::Error| Error::Output {
            path: "<memory>".into(),
            message: e.to_string(),
        };
        w.write_record(&self.header).map_err(to_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(to_err)?;
        }
        w.into_inner().map_err(|e| Error::Output {
            path: "<memory>".into(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        let arr: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), c.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut out = serde_json::to_vec_pretty(&arr).map_err(|e| Error::Output {
            path: "<memory>".into(),
            message: e.to_string(),
        })?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn render(&self, format: OutputFormat) -> Result<Vec<u8>> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Write `table` to `path`, or to stdout when `path` is `None`.
pub fn emit(table: &Table, format: OutputFormat, path: Option<&Path>) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::Output {
            path: path.map_or_else(|| "<stdout>".into(), Path::to_path_buf),
            message: "no rows to write".into(),
        });
    }
    let bytes = table.render(format)?;
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => std::io::stdout().write_all(&bytes).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig9(0.5).unwrap(), "0.5");
        assert_eq!(format_sig9(1.0 / 3.0).unwrap(), "0.333333333");
        assert_eq!(format_sig9(123456.7891234).unwrap(), "123456.789");
        assert_eq!(format_sig9(-2.0e-7).unwrap(), "-2e-7");
        assert_eq!(format_sig9(0.000123456789123).unwrap(), "0.000123456789");
        assert_eq!(format_sig9(9.9999999999).unwrap(), "10");
        assert_eq!(format_sig9(f64::NAN), None);
    }

    #[test]
    fn one_row_is_two_lines() {
        let mut t = Table::new(vec!["x", "label"]);
        t.push(vec![Cell::Num(1.5), Cell::Text("a,b".into())]);
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(s, "x,label\n1.5,\"a,b\"\n");
    }

    #[test]
    fn nan_becomes_sentinel() {
        let mut t = Table::new(vec!["v"]);
        t.push(vec![Cell::Num(f64::NAN)]);
        t.push(vec![Cell::Infeasible]);
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(s, "v\ninfeasible\ninfeasible\n");
        let j: Value = serde_json::from_slice(&t.to_json().unwrap()).unwrap();
        assert_eq!(j[0]["v"], "infeasible");
    }
}
