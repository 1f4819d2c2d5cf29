use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::Divisor;
use crate::cohomology::{Exponent, ExponentBasis};
use crate::error::{Error, Result};
use crate::zeros::Rectangle;

/// Generator of the lattice divisor with unit multiplicities on
/// `(λ + iμ)^{-1}(ℤ + iℤ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeDivisorSpec {
    lambda: Exponent,
    mu: Exponent,
}

impl LatticeDivisorSpec {
    pub fn new(lambda: Exponent, mu: Exponent) -> Result<Self> {
        if lambda.exact.dim() != mu.exact.dim() {
            return Err(Error::BasisMismatch { left: lambda.exact.dim(), right: mu.exact.dim() });
        }
        if lambda.exact.is_zero() && mu.exact.is_zero() {
            return Err(Error::InvalidArgument("lattice spec needs (λ, μ) ≠ (0, 0)".into()));
        }
        Ok(LatticeDivisorSpec { lambda, mu })
    }

    /// Both exponents given as expressions over `basis`, e.g. `("1", "sqrt2")`.
    pub fn parse(lambda: &str, mu: &str, basis: &ExponentBasis) -> Result<Self> {
        Self::new(Exponent::parse(lambda, basis)?, Exponent::parse(mu, basis)?)
    }

    pub fn lambda(&self) -> &Exponent {
        &self.lambda
    }

    pub fn mu(&self) -> &Exponent {
        &self.mu
    }

    /// `(λ + iμ)^{-1}`, the generator of the point lattice.
    pub fn generator(&self) -> Complex64 {
        Complex64::new(self.lambda.value, self.mu.value).inv()
    }
}

impl Serialize for LatticeDivisorSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            lambda: String,
            mu: String,
            lambda_value: f64,
            mu_value: f64,
        }
        Doc {
            lambda: self.lambda.exact.to_string(),
            mu: self.mu.exact.to_string(),
            lambda_value: self.lambda.value,
            mu_value: self.mu.value,
        }
        .serialize(s)
    }
}

/// All lattice points `(λ + iμ)^{-1}(n₁ + in₂)` in the window, multiplicity 1.
pub fn lattice_divisor(spec: &LatticeDivisorSpec, window: Rectangle) -> Result<Divisor> {
    let scale = Complex64::new(spec.lambda.value, spec.mu.value);
    if scale.norm() == 0.0 || !scale.is_finite() {
        return Err(Error::InvalidArgument("λ + iμ evaluates to zero".into()));
    }
    let w = scale.inv();
    // |n₁ + in₂| = |z|·|λ + iμ| for a point z of the window
    let reach = window.corners().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let bound = (reach * scale.norm()).ceil() as i64 + 1;
    let mut entries = Vec::new();
    for n1 in -bound..=bound {
        for n2 in -bound..=bound {
            let z = w * Complex64::new(n1 as f64, n2 as f64);
            if window.contains(z) {
                entries.push((z, 1));
            }
        }
    }
    Divisor::new(entries, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(l: &str, m: &str) -> LatticeDivisorSpec {
        LatticeDivisorSpec::parse(l, m, &ExponentBasis::standard()).unwrap()
    }

    fn sq(h: f64) -> Rectangle {
        Rectangle::new(-h, h, -h, h).unwrap()
    }

    #[test]
    fn gaussian_integers() {
        let d = lattice_divisor(&spec("1", "0"), sq(1.5)).unwrap();
        assert_eq!(d.len(), 9);
        let rotated = lattice_divisor(&spec("0", "1"), sq(1.5)).unwrap();
        assert_eq!(rotated.len(), 9);
        for ((a, _), (b, _)) in d.entries().iter().zip(rotated.entries()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn diagonal_lattice() {
        assert_eq!(lattice_divisor(&spec("1", "1"), sq(1.0)).unwrap().len(), 13);
    }

    #[test]
    fn zero_spec_rejected() {
        assert!(LatticeDivisorSpec::parse("0", "0", &ExponentBasis::standard()).is_err());
    }

    #[test]
    fn off_origin_window() {
        let w = Rectangle::new(10.2, 12.7, -0.1, 0.1).unwrap();
        let d = lattice_divisor(&spec("sqrt2", "0"), w).unwrap();
        // n/√2 for n = 15, 16, 17
        assert_eq!(d.len(), 3);
    }
}
