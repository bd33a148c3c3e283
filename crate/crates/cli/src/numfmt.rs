//! Number rendering shared by the CSV and JSON writers.
//!
//! CSV cells print the shortest decimal string that parses back to the same
//! bits, in exponent form for very small or very large magnitudes.

use num_complex::Complex64;
use serde_json::{json, Number, Value};

pub fn num(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// JSON number, or `null` for NaN and infinities.
pub fn json_num(v: f64) -> Value {
    Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn json_complex(z: Complex64) -> Value {
    json!({ "re": json_num(z.re), "im": json_num(z.im) })
}

/// An exact integer from its decimal representation.
pub fn json_integer(decimal: &str) -> Value {
    serde_json::from_str(decimal).unwrap_or_else(|_| Value::String(decimal.to_string()))
}

pub fn csv_line(cells: &[String]) -> String {
    let mut line = cells.join(",");
    line.push('\n');
    line
}

pub fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}
