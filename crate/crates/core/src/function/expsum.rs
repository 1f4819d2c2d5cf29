use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Frequencies closer than this (relative to `max(1, |λ|)`) are merged into one term.
pub const FREQUENCY_MERGE_TOL: f64 = 1e-12;

/// Coefficients below this fraction of the largest one are treated as cancelled.
const COEFFICIENT_DROP_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub frequency: f64,
    pub coefficient: Complex64,
}

/// Finite exponential sum `Σ cₖ e^{iλₖ z}` with real frequencies.
///
/// Terms are kept sorted by strictly increasing frequency with nonzero
/// coefficients; the empty sum is the zero function.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExponentialSum {
    terms: Vec<Term>,
}

fn total_key(a: &Term, b: &Term) -> Ordering {
    a.frequency
        .total_cmp(&b.frequency)
        .then(a.coefficient.re.total_cmp(&b.coefficient.re))
        .then(a.coefficient.im.total_cmp(&b.coefficient.im))
}

impl ExponentialSum {
    pub fn zero() -> Self {
        ExponentialSum { terms: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_terms(vec![Term { frequency: 0.0, coefficient: c }])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// `e^{iλz}`.
    pub fn exp_i(lambda: f64) -> Self {
        Self::from_terms(vec![Term { frequency: lambda, coefficient: Complex64::new(1.0, 0.0) }])
    }

    /// `sin(a z + b)` for real `a` and complex phase `b`.
    pub fn sin(a: f64, b: Complex64) -> Self {
        let i = Complex64::i();
        let plus = (i * b).exp() / (2.0 * i);
        let minus = -(-i * b).exp() / (2.0 * i);
        Self::from_terms(vec![Term { frequency: a, coefficient: plus }, Term { frequency: -a, coefficient: minus }])
    }

    /// `cos(a z + b)` for real `a` and complex phase `b`.
    pub fn cos(a: f64, b: Complex64) -> Self {
        let i = Complex64::i();
        Self::from_terms(vec![
            Term { frequency: a, coefficient: (i * b).exp() * 0.5 },
            Term { frequency: -a, coefficient: (-i * b).exp() * 0.5 },
        ])
    }

    /// Builds a normalized sum: sorted, equal frequencies merged, cancelled terms dropped.
    ///
    /// Merging sorts by a total key first, so the result depends only on the
    /// multiset of input terms and not on their order.
    pub fn from_terms(mut raw: Vec<Term>) -> Self {
        raw.retain(|t| t.frequency.is_finite() && t.coefficient.re.is_finite() && t.coefficient.im.is_finite());
        raw.sort_by(total_key);
        let mut merged: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match merged.last_mut() {
                Some(last)
                    if (t.frequency - last.frequency).abs() <= FREQUENCY_MERGE_TOL * last.frequency.abs().max(1.0) =>
                {
                    last.coefficient += t.coefficient;
                }
                _ => merged.push(t),
            }
        }
        let scale = merged.iter().map(|t| t.coefficient.norm()).fold(0.0, f64::max);
        merged.retain(|t| t.coefficient.norm() > COEFFICIENT_DROP_TOL * scale);
        ExponentialSum { terms: merged }
    }

    /// Parses `[[λ, re, im], ...]` triples.
    pub fn from_triples(triples: &[[f64; 3]]) -> Result<Self> {
        let mut terms = Vec::with_capacity(triples.len());
        for &[lambda, re, im] in triples {
            if !(lambda.is_finite() && re.is_finite() && im.is_finite()) {
                return Err(Error::Parse("non-finite exponential-sum term".into()));
            }
            terms.push(Term { frequency: lambda, coefficient: Complex64::new(re, im) });
        }
        Ok(Self::from_terms(terms))
    }

    pub fn to_triples(&self) -> Vec<[f64; 3]> {
        self.terms.iter().map(|t| [t.frequency, t.coefficient.re, t.coefficient.im]).collect()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        self.terms.iter().map(|t| t.frequency)
    }

    pub fn max_abs_frequency(&self) -> f64 {
        self.frequencies().map(f64::abs).fold(0.0, f64::max)
    }

    /// Sum of `|cₖ|`; bounds `|g(x)|` on the real axis.
    pub fn coefficient_l1(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.norm()).sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_derivative(z, 0)
    }

    /// `g^{(order)}(z)` without materializing the derivative.
    pub fn eval_derivative(&self, z: Complex64, order: u32) -> Complex64 {
        let i = Complex64::i();
        self.terms
            .iter()
            .map(|t| {
                let factor = if order == 0 { Complex64::new(1.0, 0.0) } else { (i * t.frequency).powu(order) };
                t.coefficient * factor * (i * t.frequency * z).exp()
            })
            .sum()
    }

    /// `Σ |cₖ| |λₖ|^order |e^{iλₖz}|`, the natural size of `g^{(order)}` near `z`.
    pub fn magnitude_bound(&self, z: Complex64, order: u32) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let weight = if order == 0 { 1.0 } else { t.frequency.abs().powi(order as i32) };
                t.coefficient.norm() * weight * (-t.frequency * z.im).exp()
            })
            .sum()
    }

    pub fn derivative(&self) -> Self {
        let i = Complex64::i();
        Self::from_terms(
            self.terms
                .iter()
                .filter(|t| t.frequency != 0.0)
                .map(|t| Term { frequency: t.frequency, coefficient: i * t.frequency * t.coefficient })
                .collect(),
        )
    }

    /// `z ↦ g(z + τ)` for complex `τ`.
    pub fn shift(&self, tau: Complex64) -> Self {
        let i = Complex64::i();
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term { frequency: t.frequency, coefficient: t.coefficient * (i * t.frequency * tau).exp() })
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(
            self.terms.iter().map(|t| Term { frequency: t.frequency, coefficient: t.coefficient * c }).collect(),
        )
    }

    pub fn powu(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &ExponentialSum {
    type Output = ExponentialSum;
    fn add(self, rhs: &ExponentialSum) -> ExponentialSum {
        ExponentialSum::from_terms(self.terms.iter().chain(rhs.terms.iter()).copied().collect())
    }
}

impl Sub for &ExponentialSum {
    type Output = ExponentialSum;
    fn sub(self, rhs: &ExponentialSum) -> ExponentialSum {
        self + &(-rhs)
    }
}

impl Neg for &ExponentialSum {
    type Output = ExponentialSum;
    fn neg(self) -> ExponentialSum {
        ExponentialSum {
            terms: self.terms.iter().map(|t| Term { frequency: t.frequency, coefficient: -t.coefficient }).collect(),
        }
    }
}

impl Mul for &ExponentialSum {
    type Output = ExponentialSum;
    fn mul(self, rhs: &ExponentialSum) -> ExponentialSum {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(Term { frequency: a.frequency + b.frequency, coefficient: a.coefficient * b.coefficient });
            }
        }
        ExponentialSum::from_terms(out)
    }
}

impl Serialize for ExponentialSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentialSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<[f64; 3]>::deserialize(d)?;
        ExponentialSum::from_triples(&triples).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sin_matches_libm() {
        let g = ExponentialSum::sin(PI, c(0.0, 0.0));
        for &z in &[c(0.5, 0.0), c(0.3, 0.7), c(-1.2, -0.4)] {
            assert!((g.eval(z) - (z * PI).sin()).norm() < 1e-13);
        }
        assert!((g.eval(c(0.5, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_of_sin_is_pi_cos() {
        let d = ExponentialSum::sin(PI, c(0.0, 0.0)).derivative();
        let expected = ExponentialSum::cos(PI, c(0.0, 0.0)).scale(c(PI, 0.0));
        assert_eq!(d.terms().len(), 2);
        for (a, b) in d.terms().iter().zip(expected.terms()) {
            assert_eq!(a.frequency, b.frequency);
            assert!((a.coefficient - b.coefficient).norm() < 1e-15);
        }
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert!(ExponentialSum::constant(c(3.0, -1.0)).derivative().is_zero());
    }

    #[test]
    fn derivative_of_pure_exponential() {
        let d = ExponentialSum::exp_i(SQRT_2).derivative();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[0].frequency, SQRT_2);
        assert!((d.terms()[0].coefficient - c(0.0, SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn sin_times_cos_cancels_constant_term() {
        let s = ExponentialSum::sin(PI, c(0.0, 0.0));
        let co = ExponentialSum::cos(PI, c(0.0, 0.0));
        let p = &s * &co;
        assert!(p.frequencies().all(|f| f != 0.0));
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn product_is_order_independent() {
        let a = &ExponentialSum::sin(SQRT_2 * PI, c(0.0, 0.0)) + &ExponentialSum::constant(c(0.3, 0.1));
        let b = &ExponentialSum::cos(PI, c(0.2, 0.0)) + &ExponentialSum::exp_i(1.7);
        assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn shift_by_period_is_identity() {
        let g = ExponentialSum::sin(PI, c(0.0, 0.0));
        let h = g.shift(c(2.0, 0.0));
        let z = c(0.37, 0.2);
        assert!((g.eval(z) - h.eval(z)).norm() < 1e-14);
    }

    #[test]
    fn triples_reject_non_finite() {
        assert!(ExponentialSum::from_triples(&[[f64::NAN, 1.0, 0.0]]).is_err());
    }
}
