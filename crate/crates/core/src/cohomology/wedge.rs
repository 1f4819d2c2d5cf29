use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::basis::{check_dims, ExponentBasis, RationalVector};
use crate::error::Result;

/// Element of `ℝ ∧_ℤ ℝ` restricted to the ℚ-span of a basis: exact rational
/// coefficients `w_{ij}` of `bᵢ ∧ bⱼ` for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeElement {
    dim: usize,
    /// Strictly upper triangle in row-major order.
    coeffs: Vec<BigRational>,
}

fn pair_count(dim: usize) -> usize {
    dim * dim.saturating_sub(1) / 2
}

impl WedgeElement {
    pub fn zero(dim: usize) -> Self {
        WedgeElement { dim, coeffs: vec![BigRational::zero(); pair_count(dim)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim);
        // rows 0..i hold (dim-1) + (dim-2) + ... + (dim-i) entries
        i * (2 * self.dim - i - 1) / 2 + (j - i - 1)
    }

    /// Coefficient of `bᵢ ∧ bⱼ`, antisymmetric in `(i, j)`.
    pub fn coefficient(&self, i: usize, j: usize) -> BigRational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs[self.index(i, j)].clone(),
            std::cmp::Ordering::Greater => -self.coeffs[self.index(j, i)].clone(),
            std::cmp::Ordering::Equal => BigRational::zero(),
        }
    }

    /// Nonzero `(i, j, w_{ij})` with `i < j`.
    pub fn nonzero_terms(&self) -> Vec<(usize, usize, BigRational)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let w = &self.coeffs[self.index(i, j)];
                if !w.is_zero() {
                    out.push((i, j, w.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &WedgeElement) -> Result<WedgeElement> {
        check_dims(self.dim, other.dim)?;
        Ok(WedgeElement { dim: self.dim, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn negate(&self) -> WedgeElement {
        WedgeElement { dim: self.dim, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> WedgeElement {
        WedgeElement { dim: self.dim, coeffs: self.coeffs.iter().map(|a| a * q).collect() }
    }

    /// Formal sum `Σ w_{ij}·(bᵢ∧bⱼ)` with basis names.
    pub fn format_with(&self, basis: &ExponentBasis) -> String {
        let terms = self.nonzero_terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .iter()
            .map(|(i, j, w)| format!("{w}·({}∧{})", basis.name(*i), basis.name(*j)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `x ∧ y` with `w_{ij} = xᵢyⱼ − xⱼyᵢ`.
pub fn wedge(x: &RationalVector, y: &RationalVector) -> Result<WedgeElement> {
    check_dims(x.dim(), y.dim())?;
    let mut out = WedgeElement::zero(x.dim());
    let (xs, ys) = (x.coeffs(), y.coeffs());
    for i in 0..x.dim() {
        for j in i + 1..x.dim() {
            let idx = out.index(i, j);
            out.coeffs[idx] = &xs[i] * &ys[j] - &xs[j] * &ys[i];
        }
    }
    Ok(out)
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.nonzero_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms.iter().map(|(i, j, w)| format!("{w}·(b{i}∧b{j})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for WedgeElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(usize, usize, String)> =
            self.nonzero_terms().into_iter().map(|(i, j, w)| (i, j, w.to_string())).collect();
        #[derive(Serialize)]
        struct Doc {
            dim: usize,
            terms: Vec<(usize, usize, String)>,
        }
        Doc { dim: self.dim, terms }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_bigint::BigInt;

    #[test]
    fn index_layout_covers_upper_triangle() {
        let w = WedgeElement::zero(4);
        let mut seen: Vec<usize> =
            (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).map(|(i, j)| w.index(i, j)).collect();
        seen.sort();
        assert_eq!(seen, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn one_wedge_sqrt2_is_unit() {
        let basis = ExponentBasis::standard();
        let w = wedge(&RationalVector::unit(3, 0), &RationalVector::unit(3, 1)).unwrap();
        let one = BigRational::from_integer(BigInt::from(1));
        assert_eq!(w.coefficient(0, 1), one);
        assert_eq!(w.coefficient(1, 0), -one);
        assert_eq!(w.format_with(&basis), "1·(1∧sqrt2)");
    }

    #[test]
    fn dimension_mismatch() {
        let r = wedge(&RationalVector::zero(2), &RationalVector::zero(3));
        assert_eq!(r, Err(Error::BasisMismatch { left: 2, right: 3 }));
    }
}
