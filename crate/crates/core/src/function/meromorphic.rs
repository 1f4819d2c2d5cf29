use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ExponentialSum, ExtendedComplex, Strip};
use crate::error::{Error, Result};

/// Highest derivative order used to cancel a common zero of numerator and denominator.
pub const MAX_CANCEL_ORDER: u32 = 8;

/// Relative size below which a value counts as vanishing during evaluation.
pub const VANISHING_TOL: f64 = 1e-13;

/// Quotient of two exponential sums on a horizontal strip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuotientDoc", into = "QuotientDoc")]
pub struct MeromorphicAP {
    numerator: ExponentialSum,
    denominator: ExponentialSum,
    domain: Strip,
}

/// JSON layout `{numerator: [[λ, re, im], ...], denominator: [...], strip: [a, b]}`.
#[derive(Serialize, Deserialize)]
struct QuotientDoc {
    numerator: ExponentialSum,
    denominator: ExponentialSum,
    strip: Strip,
}

impl TryFrom<QuotientDoc> for MeromorphicAP {
    type Error = Error;
    fn try_from(doc: QuotientDoc) -> Result<Self> {
        MeromorphicAP::new(doc.numerator, doc.denominator, doc.strip)
    }
}

impl From<MeromorphicAP> for QuotientDoc {
    fn from(f: MeromorphicAP) -> Self {
        QuotientDoc { numerator: f.numerator, denominator: f.denominator, strip: f.domain }
    }
}

impl MeromorphicAP {
    pub fn new(numerator: ExponentialSum, denominator: ExponentialSum, domain: Strip) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(MeromorphicAP { numerator, denominator, domain })
    }

    /// An analytic a.p. function viewed as a quotient with denominator 1.
    pub fn entire(numerator: ExponentialSum) -> Self {
        MeromorphicAP { numerator, denominator: ExponentialSum::one(), domain: Strip::plane() }
    }

    pub fn numerator(&self) -> &ExponentialSum {
        &self.numerator
    }

    pub fn denominator(&self) -> &ExponentialSum {
        &self.denominator
    }

    pub fn domain(&self) -> Strip {
        self.domain
    }

    pub fn with_domain(mut self, domain: Strip) -> Self {
        self.domain = domain;
        self
    }

    /// Value on the Riemann sphere.
    ///
    /// A common zero of numerator and denominator is cancelled by comparing
    /// successive derivatives, up to order [`MAX_CANCEL_ORDER`].
    pub fn eval(&self, z: Complex64) -> Result<ExtendedComplex> {
        if !self.domain.contains(z) {
            return Err(Error::OutsideDomain(z));
        }
        self.eval_unchecked(z)
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Result<ExtendedComplex> {
        for order in 0..=MAX_CANCEL_ORDER {
            let n = self.numerator.eval_derivative(z, order);
            let d = self.denominator.eval_derivative(z, order);
            let n_vanishes = n.norm() <= VANISHING_TOL * self.numerator.magnitude_bound(z, order);
            let d_vanishes = d.norm() <= VANISHING_TOL * self.denominator.magnitude_bound(z, order);
            match (n_vanishes, d_vanishes) {
                (_, false) => return Ok(ExtendedComplex::from(n / d)),
                (false, true) => return Ok(ExtendedComplex::Infinity),
                (true, true) => continue,
            }
        }
        Err(Error::IndeterminatePoint(z))
    }

    /// Pointwise product, represented as (n₁n₂)/(d₁d₂) on the common strip.
    pub fn mul(&self, other: &MeromorphicAP) -> Result<Self> {
        let domain = self.domain.intersect(&other.domain).ok_or(Error::InvalidStrip {
            lower: self.domain.lower().max(other.domain.lower()),
            upper: self.domain.upper().min(other.domain.upper()),
        })?;
        MeromorphicAP::new(&self.numerator * &other.numerator, &self.denominator * &other.denominator, domain)
    }

    /// Pointwise sum, represented as (n₁d₂ + n₂d₁)/(d₁d₂).
    pub fn add(&self, other: &MeromorphicAP) -> Result<Self> {
        let domain = self.domain.intersect(&other.domain).ok_or(Error::InvalidStrip {
            lower: self.domain.lower().max(other.domain.lower()),
            upper: self.domain.upper().min(other.domain.upper()),
        })?;
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        MeromorphicAP::new(num, &self.denominator * &other.denominator, domain)
    }

    /// `1/f`.
    pub fn recip(&self) -> Result<Self> {
        MeromorphicAP::new(self.denominator.clone(), self.numerator.clone(), self.domain)
    }

    /// `z ↦ f(z + τ)` for real `τ`; the strip is translation invariant.
    pub fn shift(&self, tau: f64) -> Self {
        let t = Complex64::new(tau, 0.0);
        MeromorphicAP {
            numerator: self.numerator.shift(t),
            denominator: self.denominator.shift(t),
            domain: self.domain,
        }
    }
}
