//! Rendering of command results as JSON or CSV.
//!
//! Numbers go through [`fmt_sig`]: 17 significant digits in JSON (enough to
//! round-trip an f64) and 12 in CSV.

use std::str::FromStr;

use serde_json::{Map, Number, Value};

pub const JSON_DIGITS: usize = 17;
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `%g`-style formatting with `sig` significant digits and trailing zeros
/// removed.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// JSON number with 17 significant digits; non-finite values become null.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&fmt_sig(x, JSON_DIGITS)).expect("valid JSON number"))
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map(num).unwrap_or(Value::Null)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => num(*x),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_sig(*x, CSV_DIGITS),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// A command's result before rendering.
pub enum Report {
    /// A JSON object; in CSV it is flattened to `key,value` rows.
    Object(Map<String, Value>),
    /// Tabular data with an object of metadata. The JSON form nests the rows
    /// under `rows`; the CSV form is the bare table.
    Table(Map<String, Value>, Table),
    /// Pre-serialized text, identical in both formats' CSV form; JSON uses
    /// the attached object.
    Text(Map<String, Value>, String),
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Report::Object(obj), Format::Json) | (Report::Text(obj, _), Format::Json) => {
                json_text(obj.clone())
            }
            (Report::Object(obj), Format::Csv) => {
                let mut rows = Vec::new();
                flatten("", &Value::Object(obj.clone()), &mut rows);
                let mut out = String::from("key,value\n");
                for (k, v) in rows {
                    out.push_str(&csv_line(&[k, v]));
                }
                out
            }
            (Report::Table(meta, table), Format::Json) => {
                let mut obj = meta.clone();
                let rows = table
                    .rows
                    .iter()
                    .map(|r| {
                        let row: Map<String, Value> = table
                            .columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.to_string(), v.json()))
                            .collect();
                        Value::Object(row)
                    })
                    .collect();
                obj.insert("rows".into(), Value::Array(rows));
                json_text(obj)
            }
            (Report::Table(_, table), Format::Csv) => {
                let header: Vec<String> = table.columns.iter().map(|c| c.to_string()).collect();
                let mut out = csv_line(&header);
                for r in &table.rows {
                    let cells: Vec<String> = r.iter().map(Cell::csv).collect();
                    out.push_str(&csv_line(&cells));
                }
                out
            }
            (Report::Text(_, text), Format::Csv) => text.clone(),
        }
    }
}

fn json_text(obj: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
    s.push('\n');
    s
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Number(n) => {
            let x: f64 = n.to_string().parse().expect("finite number");
            out.push((prefix.to_string(), fmt_sig(x, CSV_DIGITS)));
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Null => out.push((prefix.to_string(), String::new())),
    }
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect();
    let mut line = quoted.join(",");
    line.push('\n');
    line
}
