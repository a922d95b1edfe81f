//! File formats and deterministic serialization.
//!
//! Every float is written with 17 significant digits (`{:.16e}`), which
//! round-trips `f64` exactly and keeps outputs byte-stable.

use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::hilbert::QVector;
use crate::matrix::QMatrix;
use crate::spectrum::Scan;

pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn is_float_literal(s: &str) -> bool {
    s.contains(['.', 'e', 'E'])
}

fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            if !is_float_literal(&s) {
                return Value::Number(n);
            }
            match n.as_f64().map(|x| fmt_f64(x).parse::<Number>()) {
                Some(Ok(m)) => Value::Number(m),
                _ => Value::Number(n),
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with 17-significant-digit floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Numerical(format!("serialization: {e}")))?;
    let mut s = serde_json::to_string_pretty(&normalize(v)).map_err(|e| Error::Numerical(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn matrix_from_json(text: &str) -> Result<QMatrix> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("matrix: {e}")))
}

pub fn vector_from_json(text: &str) -> Result<QVector> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("vector: {e}")))
}

/// `re,rad,mu` rows, `re` outermost.
pub fn scan_csv(scan: &Scan) -> String {
    let mut out = String::from("re,rad,mu\n");
    for (i, &re) in scan.re.iter().enumerate() {
        for (j, &rad) in scan.rad.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", fmt_f64(re), fmt_f64(rad), fmt_f64(scan.mu[i][j])));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        b: f64,
        a: usize,
        c: Vec<f64>,
    }

    #[test]
    fn floats_use_seventeen_digits() {
        let s = to_json(&Sample { b: 0.1, a: 3, c: vec![1.0, -2.5e-300] }).unwrap();
        assert!(s.contains("\"b\": 1.0000000000000001e-1"), "{s}");
        assert!(s.contains("\"a\": 3"));
        assert!(s.contains("-2.5000000000000000e-300"));
        assert!(s.find("\"b\"").unwrap() < s.find("\"a\"").unwrap());
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"].as_f64(), Some(0.1));
    }

    #[test]
    fn matrix_errors_are_input_errors() {
        assert!(matches!(matrix_from_json("{\"n\": 2, \"entries\": ["), Err(Error::Input(_))));
    }
}
