use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Rectangle;
use crate::error::{Error, Result};
use crate::function::ExponentialSum;

/// A boundary point with `|g| / |g'|` below this is treated as a zero on the contour.
pub const BOUNDARY_ZERO_TOL: f64 = 1e-9;

/// Outward shift applied once when the contour passes through a zero.
pub const BOUNDARY_PERTURBATION: f64 = 1e-6;

/// Allowed mismatch between the principal argument step and the trapezoid
/// estimate of `∫ Im(g'/g)` on an accepted segment.
const TRAPEZOID_AGREEMENT: f64 = PI / 8.0;

const MAX_DEPTH: u32 = 60;

/// Outcome of a zero count: the count and the rectangle actually used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCount {
    pub count: i64,
    pub rect: Rectangle,
    pub perturbed: bool,
}

/// `g` together with its derivative, evaluated in one pass.
pub(crate) struct Analytic<'a> {
    pub g: &'a ExponentialSum,
}

impl<'a> Analytic<'a> {
    pub fn new(g: &'a ExponentialSum) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidArgument("the zero function has no isolated zeros".into()));
        }
        Ok(Analytic { g })
    }

    pub fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let i = Complex64::i();
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for t in self.g.terms() {
            let e = t.coefficient * (i * t.frequency * z).exp();
            v += e;
            dv += i * t.frequency * e;
        }
        (v, dv)
    }

    /// Number of zeros inside `rect`, with no perturbation.
    pub fn count(&self, rect: &Rectangle) -> Result<i64> {
        let c = rect.corners();
        let total: f64 = (0..4)
            .into_par_iter()
            .map(|k| self.edge_increment(c[k], c[(k + 1) % 4]))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .sum();
        let winding = total / TAU;
        let rounded = winding.round();
        if (winding - rounded).abs() > 0.25 {
            return Err(Error::NonIntegerWinding(winding));
        }
        Ok(rounded as i64)
    }

    fn sample(&self, z: Complex64) -> Result<Sample> {
        let (v, dv) = self.eval(z);
        if v.norm() <= BOUNDARY_ZERO_TOL * dv.norm() || v == Complex64::new(0.0, 0.0) {
            return Err(Error::BoundaryZero(z));
        }
        Ok(Sample { z, log_deriv: dv / v, v })
    }

    /// Change of `arg g` along the segment `[a, b]`.
    fn edge_increment(&self, a: Complex64, b: Complex64) -> Result<f64> {
        // Start from a spacing on which the fastest term turns by about π/4.
        let omega = self.g.max_abs_frequency().max(1.0);
        let pieces = (((b - a).norm() * omega) / (PI / 4.0)).ceil().max(4.0) as usize;
        let mut prev = self.sample(a)?;
        let mut total = 0.0;
        for k in 1..=pieces {
            let z = if k == pieces { b } else { a + (b - a) * (k as f64 / pieces as f64) };
            let next = self.sample(z)?;
            total += self.segment(&prev, &next, 0)?;
            prev = next;
        }
        Ok(total)
    }

    fn segment(&self, a: &Sample, b: &Sample, depth: u32) -> Result<f64> {
        let step = (b.v * a.v.conj()).arg();
        let trapezoid = (0.5 * (a.log_deriv + b.log_deriv) * (b.z - a.z)).im;
        if step.abs() < FRAC_PI_2 && (trapezoid - step).abs() < TRAPEZOID_AGREEMENT {
            return Ok(step);
        }
        let mid = 0.5 * (a.z + b.z);
        if depth >= MAX_DEPTH || (b.z - a.z).norm() <= 1e-14 * (1.0 + mid.norm()) {
            return Err(Error::BoundaryZero(mid));
        }
        let m = self.sample(mid)?;
        Ok(self.segment(a, &m, depth + 1)? + self.segment(&m, b, depth + 1)?)
    }
}

struct Sample {
    z: Complex64,
    v: Complex64,
    log_deriv: Complex64,
}

/// Counts zeros of `g` inside `rect` by the argument principle.
///
/// If the contour passes within [`BOUNDARY_ZERO_TOL`] of a zero, the rectangle
/// is grown outward by [`BOUNDARY_PERTURBATION`] once; a second hit is an error.
pub fn count_zeros(g: &ExponentialSum, rect: &Rectangle) -> Result<i64> {
    Ok(count_zeros_detailed(g, rect)?.count)
}

pub fn count_zeros_detailed(g: &ExponentialSum, rect: &Rectangle) -> Result<ZeroCount> {
    count_with_policy(&Analytic::new(g)?, rect, true)
}

pub(crate) fn count_with_policy(a: &Analytic, rect: &Rectangle, allow_perturb: bool) -> Result<ZeroCount> {
    match a.count(rect) {
        Ok(count) => Ok(ZeroCount { count, rect: *rect, perturbed: false }),
        Err(Error::BoundaryZero(_)) if allow_perturb => {
            let grown = rect.expand(BOUNDARY_PERTURBATION)?;
            let count = a.count(&grown)?;
            Ok(ZeroCount { count, rect: grown, perturbed: true })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn sin_pi(a: f64) -> ExponentialSum {
        ExponentialSum::sin(a * PI, Complex64::new(0.0, 0.0))
    }

    fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Rectangle {
        Rectangle::new(x0, x1, y0, y1).unwrap()
    }

    #[test]
    fn sine_zeros() {
        assert_eq!(count_zeros(&sin_pi(1.0), &rect(-0.5, 2.5, -1.0, 1.0)).unwrap(), 3);
        assert_eq!(count_zeros(&sin_pi(1.0), &rect(-100.5, 100.5, -1.0, 1.0)).unwrap(), 201);
    }

    #[test]
    fn exponential_has_no_zeros() {
        assert_eq!(count_zeros(&ExponentialSum::exp_i(3.7), &rect(-20.0, 20.0, -3.0, 3.0)).unwrap(), 0);
    }

    #[test]
    fn product_of_incommensurable_sines() {
        // 0 is a zero of both factors, so it counts twice; then 1/√2 and 1
        let g = &sin_pi(SQRT_2) * &sin_pi(1.0);
        assert_eq!(count_zeros(&g, &rect(-0.3, 1.1, -1.0, 1.0)).unwrap(), 4);
        assert_eq!(count_zeros(&g, &rect(0.3, 1.1, -1.0, 1.0)).unwrap(), 2);
    }

    #[test]
    fn boundary_zero_is_perturbed_once() {
        let c = count_zeros_detailed(&sin_pi(1.0), &rect(0.0, 1.5, -1.0, 1.0)).unwrap();
        assert!(c.perturbed);
        assert_eq!(c.count, 2);
    }

    #[test]
    fn double_zero_counts_twice() {
        let g = sin_pi(1.0).powu(2);
        assert_eq!(count_zeros(&g, &rect(0.4, 1.6, -1.0, 1.0)).unwrap(), 2);
    }

    #[test]
    fn zero_function_rejected() {
        assert!(count_zeros(&ExponentialSum::zero(), &rect(0.0, 1.0, 0.0, 1.0)).is_err());
    }
}
