//! Result rendering with fixed numeric precision.

use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::CliError;

/// Significant digits kept for every real number written out.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    s.parse().expect("formatted float parses")
}

/// Rounds every non-integer number in `v` to [`SIGNIFICANT_DIGITS`].
pub fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            *n = Number::from_f64(x).expect("finite");
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn to_json(doc: &impl Serialize) -> Result<String, CliError> {
    let mut v = serde_json::to_value(doc).map_err(|e| CliError::data(format!("cannot encode output: {e}")))?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    Ok(s)
}

pub fn real(x: f64) -> String {
    round_sig(x).to_string()
}

/// CSV text from a header and rows of already formatted cells.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(round_sig(0.7199999999999998), 0.72);
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(123456789.12345679), 123456789.123);
        assert_eq!(real(1.0), "1");
        assert_eq!(real(2.0 / 3.0), "0.666666666667");
    }

    #[test]
    fn nested_values() {
        let doc = serde_json::json!({"a": [0.1 + 0.2, 3], "b": {"c": 1.0 / 3.0}, "t": -4});
        let s = to_json(&doc).unwrap();
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"][0], 0.3);
        assert_eq!(back["a"][1], 3);
        assert_eq!(back["b"]["c"], 0.333333333333);
        assert_eq!(back["t"], -4);
    }

    #[test]
    fn csv_quoting() {
        let s = to_csv(&["q", "d"], &[vec!["a few".into(), "0.5".into()], vec!["x,y".into(), "1".into()]]);
        assert_eq!(s, "q,d\na few,0.5\n\"x,y\",1\n");
    }
}
