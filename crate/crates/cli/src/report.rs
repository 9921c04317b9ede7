//! Tabular results and their CSV / JSON renderings.

use serde_json::{json, Map, Value};

use crate::config::RunConfig;

pub const TOOL: &str = "wqed-eit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const CONFIG_BEGIN: &str = "# --- config ---";
const RESULTS_BEGIN: &str = "# --- results ---";

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

#[derive(Debug, Clone)]
pub struct Report {
    pub config: RunConfig,
    /// Scalar results, rendered as `# key = value` lines in CSV.
    pub summary: Vec<(String, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(config: &RunConfig, columns: Vec<&'static str>) -> Self {
        Self {
            config: config.clone(),
            summary: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_summary(&mut self, key: &str, value: Value) {
        self.summary.push((key.to_string(), value));
    }

    /// Index of a named column.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn render(&self, format: crate::config::Format) -> String {
        match format {
            crate::config::Format::Csv => self.to_csv(),
            crate::config::Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# {TOOL} {VERSION}\n{CONFIG_BEGIN}\n");
        for line in self.config.to_toml().lines() {
            if line.is_empty() {
                out.push_str("#\n");
            } else {
                out.push_str("# ");
                out.push_str(line);
                out.push('\n');
            }
        }
        out.push_str(RESULTS_BEGIN);
        out.push('\n');
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k} = {}\n", round_value(v)));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => format_number(*x),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|c| match c {
                            Cell::Num(x) => num(*x),
                            Cell::Text(s) => Value::String(s.clone()),
                        })
                        .collect(),
                )
            })
            .collect();
        let mut summary = Map::new();
        for (k, v) in &self.summary {
            summary.insert(k.clone(), round_value(v));
        }
        let doc = json!({
            "tool": TOOL,
            "version": VERSION,
            "config": self.config,
            "summary": summary,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report is serializable");
        s.push('\n');
        s
    }
}

/// Round to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Shortest decimal that round-trips the value rounded to 12 significant
/// digits.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let y = round12(x);
    if y == 0.0 {
        return "0".into();
    }
    let a = y.abs();
    if (1e-5..1e15).contains(&a) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}

/// JSON number rounded to 12 significant digits; `null` when not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round12(x)).map_or(Value::Null, Value::Number)
}

fn round_value(v: &Value) -> Value {
    match v {
        Value::Number(n) => n.as_f64().filter(|_| n.is_f64()).map_or(v.clone(), num),
        Value::Array(a) => Value::Array(a.iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, v)| (k.clone(), round_value(v))).collect()),
        _ => v.clone(),
    }
}

/// The TOML config echoed in a CSV header.
pub fn extract_config_echo(csv: &str) -> Option<String> {
    let mut lines = csv.lines().skip_while(|l| *l != CONFIG_BEGIN);
    lines.next()?;
    let mut out = String::new();
    for line in lines {
        if line == RESULTS_BEGIN {
            return Some(out);
        }
        let body = line.strip_prefix('#')?;
        out.push_str(body.strip_prefix(' ').unwrap_or(body));
        out.push('\n');
    }
    None
}

/// Header and numeric rows of a CSV report. Text cells read as NaN.
pub fn parse_csv_table(csv: &str) -> Option<(Vec<String>, Vec<Vec<f64>>)> {
    let mut body = csv.lines().filter(|l| !l.starts_with('#'));
    let header = body.next()?.split(',').map(str::to_string).collect();
    let rows = body
        .map(|l| l.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    Some((header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(2.0f64.sqrt() * 1e20), "1.41421356237e20");
        assert_eq!(format_number(-1.5e-9), "-1.5e-9");
        assert_eq!(format_number(f64::NAN), "nan");
        assert_eq!(format_number(12.0), "12");
    }

    proptest! {
        #[test]
        fn formatting_is_stable(x in -1e30f64..1e30) {
            let s = format_number(x);
            let back: f64 = s.parse().unwrap();
            prop_assert_eq!(back, round12(x));
            prop_assert_eq!(format_number(back), s);
            if x != 0.0 {
                prop_assert!(((back - x) / x).abs() < 1e-11);
            }
        }
    }
}
