use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Horizontal strip `lower < Im z < upper`. Either bound may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    lower: f64,
    upper: f64,
}

impl Strip {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower >= upper || lower == f64::INFINITY || upper == f64::NEG_INFINITY {
            return Err(Error::InvalidStrip { lower, upper });
        }
        Ok(Strip { lower, upper })
    }

    /// The whole plane.
    pub fn plane() -> Self {
        Strip { lower: f64::NEG_INFINITY, upper: f64::INFINITY }
    }

    /// `|Im z| <= half_width`, as used for the closed sampling strips.
    pub fn symmetric(half_width: f64) -> Result<Self> {
        Strip::new(-half_width, half_width)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }

    /// Open-strip membership.
    pub fn contains(&self, z: Complex64) -> bool {
        self.lower < z.im && z.im < self.upper
    }

    /// Closed-strip membership; sampling strips are treated as closed.
    pub fn contains_closed(&self, z: Complex64) -> bool {
        self.lower <= z.im && z.im <= self.upper
    }

    /// `self ⊂⊂ outer` with the closure of `self` inside the open `outer`.
    pub fn is_compactly_inside(&self, outer: &Strip) -> bool {
        outer.lower < self.lower && self.upper < outer.upper
    }

    /// Intersection of two strips, if nonempty.
    pub fn intersect(&self, other: &Strip) -> Option<Strip> {
        let lower = self.lower.max(other.lower);
        let upper = self.upper.min(other.upper);
        Strip::new(lower, upper).ok()
    }
}

fn bound_to_json(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl Serialize for Strip {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [bound_to_json(self.lower), bound_to_json(self.upper)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Strip {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[Option<f64>; 2]>::deserialize(d)?;
        Strip::new(lo.unwrap_or(f64::NEG_INFINITY), hi.unwrap_or(f64::INFINITY)).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inverted_bounds() {
        assert!(Strip::new(1.0, -1.0).is_err());
        assert!(Strip::new(0.0, 0.0).is_err());
        assert!(Strip::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn substrip_relation_is_strict() {
        let outer = Strip::new(-2.0, 2.0).unwrap();
        assert!(Strip::new(-1.0, 1.0).unwrap().is_compactly_inside(&outer));
        assert!(!Strip::new(-2.0, 1.0).unwrap().is_compactly_inside(&outer));
        assert!(Strip::new(-5.0, 5.0).unwrap().is_compactly_inside(&Strip::plane()));
    }

    #[test]
    fn json_uses_null_for_infinite_bounds() {
        let s = serde_json::to_string(&Strip::plane()).unwrap();
        assert_eq!(s, "[null,null]");
        let back: Strip = serde_json::from_str("[-1.0,null]").unwrap();
        assert_eq!(back.lower(), -1.0);
        assert_eq!(back.upper(), f64::INFINITY);
    }
}
