//! Points of the Riemann sphere and the chordal metric.
//!
//! The metric is normalized to diameter 1:
//! `ρ(p, q) = |p − q| / √((1 + |p|²)(1 + |q|²))` and `ρ(p, ∞) = 1 / √(1 + |p|²)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            ExtendedComplex::Finite(z) => Some(z),
            ExtendedComplex::Infinity => None,
        }
    }

    /// `1/p` on the sphere, with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        match *self {
            ExtendedComplex::Infinity => ExtendedComplex::Finite(Complex64::new(0.0, 0.0)),
            ExtendedComplex::Finite(z) if z.re == 0.0 && z.im == 0.0 => ExtendedComplex::Infinity,
            ExtendedComplex::Finite(z) => {
                let w = z.inv();
                if w.re.is_finite() && w.im.is_finite() {
                    ExtendedComplex::Finite(w)
                } else {
                    ExtendedComplex::Infinity
                }
            }
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            ExtendedComplex::Finite(z)
        } else {
            ExtendedComplex::Infinity
        }
    }
}

/// Chordal distance on the Riemann sphere, with values in `[0, 1]`.
pub fn spherical_distance(p: ExtendedComplex, q: ExtendedComplex) -> f64 {
    match (p, q) {
        (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => 0.0,
        (ExtendedComplex::Finite(z), ExtendedComplex::Infinity)
        | (ExtendedComplex::Infinity, ExtendedComplex::Finite(z)) => 1.0 / 1.0f64.hypot(z.norm()),
        (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => {
            let (na, nb) = (a.norm(), b.norm());
            let d = if na > 1.0 && nb > 1.0 {
                // Both in the outer hemisphere: the formula is inversion invariant,
                // and the inverted points keep |a − b| from overflowing.
                let (ia, ib) = (a.inv(), b.inv());
                (ia - ib).norm() / (1.0f64.hypot(ia.norm()) * 1.0f64.hypot(ib.norm()))
            } else {
                (a - b).norm() / (1.0f64.hypot(na) * 1.0f64.hypot(nb))
            };
            d.min(1.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_infinity_are_antipodal() {
        let d = spherical_distance(ExtendedComplex::finite(0.0, 0.0), ExtendedComplex::Infinity);
        assert_eq!(d, 1.0);
    }

    #[test]
    fn one_to_infinity() {
        let d = spherical_distance(ExtendedComplex::finite(1.0, 0.0), ExtendedComplex::Infinity);
        // Stereographic images: 1 ↦ equator point, ∞ ↦ north pole on a sphere of
        // diameter 1, so the chord is the hypotenuse of two legs of length 1/2.
        let chord = (0.5f64 * 0.5 + 0.5 * 0.5).sqrt();
        assert!((d - chord).abs() < 1e-15);
        assert!((d - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn identity_gives_zero() {
        let w = ExtendedComplex::finite(3.5, -2.0);
        assert_eq!(spherical_distance(w, w), 0.0);
        assert_eq!(spherical_distance(ExtendedComplex::Infinity, ExtendedComplex::Infinity), 0.0);
    }

    #[test]
    fn huge_values_approach_infinity() {
        let big = ExtendedComplex::finite(1e200, 1e200);
        assert!(spherical_distance(big, ExtendedComplex::Infinity) < 1e-199);
        let d = spherical_distance(big, ExtendedComplex::finite(0.0, 0.0));
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recip_swaps_zero_and_infinity() {
        assert_eq!(ExtendedComplex::finite(0.0, 0.0).recip(), ExtendedComplex::Infinity);
        assert_eq!(ExtendedComplex::Infinity.recip(), ExtendedComplex::finite(0.0, 0.0));
    }
}
