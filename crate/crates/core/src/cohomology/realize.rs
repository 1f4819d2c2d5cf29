use serde::Serialize;

use super::basis::ExponentBasis;
use super::wedge::{wedge, WedgeElement};
use crate::divisor::LatticeDivisorSpec;
use crate::error::{Error, Result};
use crate::report::nonfinite_as_null;

/// `c(d^{λμ}) = λ ∧ μ`.
pub fn lattice_class(spec: &LatticeDivisorSpec) -> Result<WedgeElement> {
    wedge(&spec.lambda().exact, &spec.mu().exact)
}

/// A component of `d⁺` or `d⁻` together with what is known about its origin.
#[derive(Debug, Clone, PartialEq)]
pub enum ComponentSpec {
    Lattice(LatticeDivisorSpec),
    /// Zero set of an explicit exponential sum, an analytic a.p. function; class 0.
    ExponentialSumZeros {
        label: String,
    },
    /// No class-bearing description is available.
    Unclassified {
        label: String,
    },
}

impl ComponentSpec {
    pub fn class(&self, basis: &ExponentBasis) -> Result<WedgeElement> {
        match self {
            ComponentSpec::Lattice(spec) => {
                let c = lattice_class(spec)?;
                if c.dim() != basis.dim() {
                    return Err(Error::BasisMismatch { left: c.dim(), right: basis.dim() });
                }
                Ok(c)
            }
            ComponentSpec::ExponentialSumZeros { .. } => Ok(WedgeElement::zero(basis.dim())),
            ComponentSpec::Unclassified { label } => Err(Error::UnclassifiableComponent(label.clone())),
        }
    }
}

/// Measured zero–pole separation and the threshold it is judged against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparationReport {
    #[serde(with = "nonfinite_as_null")]
    pub min_separation: f64,
    pub threshold: f64,
}

impl SeparationReport {
    pub fn separated(&self) -> bool {
        self.min_separation >= self.threshold
    }
}

/// The three conditions for `d = d⁺ − d⁻` to be the divisor of a meromorphic a.p. function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizabilityVerdict {
    pub basis: String,
    pub separated: bool,
    #[serde(with = "nonfinite_as_null")]
    pub min_separation: f64,
    pub threshold: f64,
    /// Holds by construction: every component comes from an a.p. generator.
    pub ap: bool,
    pub class_plus: String,
    pub class_minus: String,
    pub class_equal: bool,
    pub realizable: bool,
}

fn total_class(parts: &[ComponentSpec], basis: &ExponentBasis) -> Result<WedgeElement> {
    parts.iter().try_fold(WedgeElement::zero(basis.dim()), |acc, p| acc.add(&p.class(basis)?))
}

pub fn realizability_check(
    dplus: &[ComponentSpec],
    dminus: &[ComponentSpec],
    geometry: &SeparationReport,
    basis: &ExponentBasis,
) -> Result<RealizabilityVerdict> {
    let cp = total_class(dplus, basis)?;
    let cm = total_class(dminus, basis)?;
    let class_equal = cp.add(&cm.negate())?.is_zero();
    let separated = geometry.separated();
    let ap = true;
    Ok(RealizabilityVerdict {
        basis: basis.declaration(),
        separated,
        min_separation: geometry.min_separation,
        threshold: geometry.threshold,
        ap,
        class_plus: cp.format_with(basis),
        class_minus: cm.format_with(basis),
        class_equal,
        realizable: separated && ap && class_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(l: &str, m: &str) -> ComponentSpec {
        ComponentSpec::Lattice(LatticeDivisorSpec::parse(l, m, &ExponentBasis::standard()).unwrap())
    }

    fn zeros(label: &str) -> ComponentSpec {
        ComponentSpec::ExponentialSumZeros { label: label.into() }
    }

    #[test]
    fn rational_ratio_has_zero_class() {
        let b = ExponentBasis::standard();
        assert!(lattice_class(&LatticeDivisorSpec::parse("2", "3", &b).unwrap()).unwrap().is_zero());
        assert!(!lattice_class(&LatticeDivisorSpec::parse("1", "sqrt2", &b).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn verdict_matrix() {
        let b = ExponentBasis::standard();
        let geometry = SeparationReport { min_separation: 0.6526, threshold: 0.01 };
        let yes = realizability_check(&[zeros("sin(pi*z)")], &[zeros("2+sin(pi*z)")], &geometry, &b).unwrap();
        assert!(yes.realizable && yes.class_equal);
        let no = realizability_check(&[lattice("1", "sqrt2")], &[zeros("sin(pi*z)")], &geometry, &b).unwrap();
        assert!(!no.class_equal && !no.realizable && no.separated);
        assert_eq!(no.class_plus, "1·(1∧sqrt2)");
        let same = realizability_check(&[lattice("1", "sqrt2")], &[lattice("1", "sqrt2")], &geometry, &b).unwrap();
        assert!(same.class_equal && same.realizable);
    }

    #[test]
    fn geometry_flips_only_separation() {
        let b = ExponentBasis::standard();
        let near = SeparationReport { min_separation: 0.001, threshold: 0.01 };
        let v = realizability_check(&[zeros("a")], &[zeros("b")], &near, &b).unwrap();
        assert!(!v.separated && v.class_equal && !v.realizable);
    }

    #[test]
    fn unclassified_component_refused() {
        let b = ExponentBasis::standard();
        let g = SeparationReport { min_separation: f64::INFINITY, threshold: 0.01 };
        let r = realizability_check(&[ComponentSpec::Unclassified { label: "mystery".into() }], &[], &g, &b);
        assert_eq!(r, Err(Error::UnclassifiableComponent("mystery".into())));
    }
}
