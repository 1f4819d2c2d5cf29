use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Named reals declared ℚ-linearly independent for the session; the first is `1`.
///
/// Independence is an axiom here, not something the code checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentBasis {
    elements: Vec<(String, f64)>,
}

impl ExponentBasis {
    pub fn new(elements: Vec<(String, f64)>) -> Result<Self> {
        match elements.first() {
            Some((name, v)) if name == "1" && *v == 1.0 => {}
            _ => return Err(Error::InvalidArgument("the first basis element must be `1` with value 1".into())),
        }
        for (i, (name, v)) in elements.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("basis element `{name}` is not finite")));
            }
            if !name.chars().next().is_some_and(|c| c.is_ascii_alphanumeric())
                || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::InvalidArgument(format!("bad basis name `{name}`")));
            }
            if elements[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::InvalidArgument(format!("duplicate basis name `{name}`")));
            }
        }
        Ok(ExponentBasis { elements })
    }

    /// `{1, sqrt2, sqrt3}`.
    pub fn standard() -> Self {
        ExponentBasis {
            elements: vec![
                ("1".into(), 1.0),
                ("sqrt2".into(), std::f64::consts::SQRT_2),
                ("sqrt3".into(), 3f64.sqrt()),
            ],
        }
    }

    /// Parses `1=1, sqrt2=1.41421356237, pi=3.14159...`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut elements = Vec::new();
        for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) =
                item.split_once('=').ok_or_else(|| Error::Parse(format!("basis entry `{item}` needs name=value")))?;
            let v: f64 = value.trim().parse().map_err(|_| Error::Parse(format!("bad basis value in `{item}`")))?;
            elements.push((name.trim().to_string(), v));
        }
        ExponentBasis::new(elements)
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(|(n, _)| n.as_str())
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|(n, _)| n == name)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.elements.iter().map(|(_, v)| *v)
    }

    /// Human-readable statement of the independence axiom, for reports.
    pub fn declaration(&self) -> String {
        let names: Vec<&str> = self.names().collect();
        format!("declared Q-linearly independent: {{{}}}", names.join(", "))
    }
}

/// Exact rational coordinates over an [`ExponentBasis`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    coeffs: Vec<BigRational>,
}

impl RationalVector {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        RationalVector { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector { coeffs: vec![BigRational::zero(); dim] }
    }

    /// The `i`-th basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coeffs[i] = BigRational::from_integer(BigInt::from(1));
        v
    }

    pub fn from_integers(values: &[i64]) -> Self {
        RationalVector { coeffs: values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &RationalVector) -> Result<RationalVector> {
        check_dims(self.dim(), other.dim())?;
        Ok(RationalVector { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, q: &BigRational) -> RationalVector {
        RationalVector { coeffs: self.coeffs.iter().map(|a| a * q).collect() }
    }

    /// Float value `Σ qᵢ bᵢ` under the basis approximations.
    pub fn approximate(&self, basis: &ExponentBasis) -> Result<f64> {
        check_dims(self.dim(), basis.dim())?;
        Ok(self.coeffs.iter().zip(basis.values()).map(|(q, b)| q.to_f64().unwrap_or(f64::NAN) * b).sum())
    }
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::BasisMismatch { left, right })
    }
}

/// A real exponent known exactly over the basis, with its float value.
#[derive(Debug, Clone, PartialEq)]
pub struct Exponent {
    pub exact: RationalVector,
    pub value: f64,
}

impl Exponent {
    pub fn new(exact: RationalVector, basis: &ExponentBasis) -> Result<Self> {
        let value = exact.approximate(basis)?;
        Ok(Exponent { exact, value })
    }

    /// Parses a ℚ-linear combination of basis names, e.g. `sqrt2`, `3/2`,
    /// `-1/3*sqrt2 + 2`, `0.25*sqrt3`.
    pub fn parse(src: &str, basis: &ExponentBasis) -> Result<Self> {
        let mut exact = RationalVector::zero(basis.dim());
        let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty exponent".into()));
        }
        for (sign, term) in split_signed_terms(&compact)? {
            let (coeff, name) = match term.split_once('*') {
                Some((c, n)) => (parse_rational(c)?, n),
                None if basis.index_of(term).is_some() && term != "1" => (one(), term),
                None => (parse_rational(term)?, "1"),
            };
            let idx = basis
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("`{name}` is not a declared basis element")))?;
            let signed = if sign { coeff } else { -coeff };
            exact.coeffs[idx] = &exact.coeffs[idx] + signed;
        }
        Exponent::new(exact, basis)
    }
}

fn one() -> BigRational {
    BigRational::from_integer(BigInt::from(1))
}

fn split_signed_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut positive = true;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        positive = bytes[0] == b'+';
        start = 1;
    }
    let mut k = start;
    while k <= bytes.len() {
        // a sign directly after `e`/`E` of a decimal exponent or `*`/`/` is not a separator
        let at_sep = k == bytes.len()
            || ((bytes[k] == b'+' || bytes[k] == b'-')
                && k > start
                && !matches!(bytes[k - 1], b'*' | b'/' | b'e' | b'E'));
        if at_sep {
            let term = &s[start..k];
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            out.push((positive, term));
            if k < bytes.len() {
                positive = bytes[k] == b'+';
            }
            start = k + 1;
        }
        k += 1;
    }
    Ok(out)
}

/// Parses `p`, `p/q`, or a finite decimal such as `1.25` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|q| q.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(r))
    }

    #[test]
    fn basis_requires_leading_one() {
        assert!(ExponentBasis::new(vec![("sqrt2".into(), 1.4)]).is_err());
        assert!(ExponentBasis::new(vec![("1".into(), 1.0), ("a".into(), 2.0), ("a".into(), 3.0)]).is_err());
        let b = ExponentBasis::parse("1=1, sqrt2=1.4142135623730951").unwrap();
        assert_eq!(b.dim(), 2);
    }

    #[test]
    fn parses_combinations() {
        let b = ExponentBasis::standard();
        let e = Exponent::parse("-1/3*sqrt2 + 2", &b).unwrap();
        assert_eq!(e.exact.coeffs(), &[q(2, 1), q(-1, 3), q(0, 1)]);
        assert!((e.value - (2.0 - std::f64::consts::SQRT_2 / 3.0)).abs() < 1e-15);
        let s = Exponent::parse("sqrt2", &b).unwrap();
        assert_eq!(s.exact, RationalVector::unit(3, 1));
        let d = Exponent::parse("1.25*sqrt3", &b).unwrap();
        assert_eq!(d.exact.coeffs()[2], q(5, 4));
        assert!(Exponent::parse("pi", &b).is_err());
        assert!(Exponent::parse("1/0", &b).is_err());
    }

    #[test]
    fn decimal_rationals_are_exact() {
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-2.50").unwrap(), q(-5, 2));
        assert!(parse_rational("1e3").is_err());
    }
}
