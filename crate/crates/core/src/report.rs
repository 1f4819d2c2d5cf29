//! Small helpers for the JSON and CSV outputs.

use std::fmt::Write as _;

/// Serializes non-finite floats as JSON `null` and reads `null` back as `+∞`.
pub mod nonfinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

/// Plain comma-separated table with a header row.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { buf: format!("{}\n", header.join(",")) }
    }

    pub fn row<T: std::fmt::Display>(&mut self, cells: &[T]) -> &mut Self {
        let mut first = true;
        for c in cells {
            if !first {
                self.buf.push(',');
            }
            first = false;
            let _ = write!(self.buf, "{c}");
        }
        self.buf.push('\n');
        self
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(serde::Serialize, serde::Deserialize)]
    struct Holder {
        #[serde(with = "nonfinite_as_null")]
        v: f64,
    }

    #[test]
    fn infinity_round_trips_through_null() {
        let s = serde_json::to_string(&Holder { v: f64::INFINITY }).unwrap();
        assert_eq!(s, r#"{"v":null}"#);
        let h: Holder = serde_json::from_str(&s).unwrap();
        assert_eq!(h.v, f64::INFINITY);
    }

    #[test]
    fn csv_rows() {
        let mut c = Csv::new(&["a", "b"]);
        c.row(&[1.5, 2.0]);
        assert_eq!(c.finish(), "a,b\n1.5,2\n");
    }
}
