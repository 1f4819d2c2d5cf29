//! Sampled sup-estimates over bounded substrips.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{spherical_distance, MeromorphicAP, Strip};
use crate::error::{Error, Result};

/// Sampling lattice for a substrip: steps in both directions, an inset from
/// the strip edges, and the real window `[re_span.0, re_span.1]` that stands
/// in for the whole real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub real_step: f64,
    pub imag_step: f64,
    pub margin: f64,
    pub re_span: (f64, f64),
}

impl GridSpec {
    pub fn new(real_step: f64, imag_step: f64, margin: f64, re_span: (f64, f64)) -> Result<Self> {
        if !(real_step > 0.0 && imag_step > 0.0) {
            return Err(Error::InvalidGrid("steps must be positive".into()));
        }
        if !(margin >= 0.0) || !margin.is_finite() {
            return Err(Error::InvalidGrid("margin must be finite and non-negative".into()));
        }
        if !(re_span.0.is_finite() && re_span.1.is_finite() && re_span.0 <= re_span.1) {
            return Err(Error::InvalidGrid("real span must be a finite interval".into()));
        }
        Ok(GridSpec { real_step, imag_step, margin, re_span })
    }

    pub fn with_span(self, re_span: (f64, f64)) -> Self {
        GridSpec { re_span, ..self }
    }
}

/// Inclusive arithmetic progression `start, start + step, ...` up to `end`.
pub(crate) fn progression(start: f64, end: f64, step: f64) -> Vec<f64> {
    if end < start {
        return Vec::new();
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| start + k as f64 * step).collect()
}

/// Sample rows and columns of the closed substrip `[lower + margin, upper − margin]`.
pub(crate) fn grid_axes(strip: &Strip, grid: &GridSpec) -> Result<(Vec<f64>, Vec<f64>)> {
    if !strip.is_bounded() {
        return Err(Error::UnboundedStrip);
    }
    let xs = progression(grid.re_span.0, grid.re_span.1, grid.real_step);
    let ys = progression(strip.lower() + grid.margin, strip.upper() - grid.margin, grid.imag_step);
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok((xs, ys))
}

/// Closed Im-range actually sampled.
pub(crate) fn sampled_band(strip: &Strip, grid: &GridSpec) -> (f64, f64) {
    (strip.lower() + grid.margin, strip.upper() - grid.margin)
}

pub(crate) fn check_inside(strip: &Strip, grid: &GridSpec, domain: &Strip) -> Result<()> {
    let (lo, hi) = sampled_band(strip, grid);
    if domain.lower() < lo && hi < domain.upper() {
        Ok(())
    } else {
        Err(Error::OutsideDomain(Complex64::new(grid.re_span.0, if domain.lower() >= lo { lo } else { hi })))
    }
}

/// Result of a sampled supremum: the value, how many points were dropped as
/// indeterminate, and how many were used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    pub value: f64,
    pub skipped: usize,
    pub samples: usize,
}

/// Max of `probe(z)` over the grid; `None` from the probe marks a skipped point.
/// The reduction is a max, so the parallel order does not affect the result.
pub(crate) fn sup_over_grid<F>(xs: &[f64], ys: &[f64], probe: F) -> SupEstimate
where
    F: Fn(Complex64) -> Option<f64> + Sync,
{
    let (value, skipped, samples) = ys
        .par_iter()
        .map(|&y| {
            let mut acc = (0.0f64, 0usize, 0usize);
            for &x in xs {
                match probe(Complex64::new(x, y)) {
                    Some(v) => {
                        acc.0 = acc.0.max(v);
                        acc.2 += 1;
                    }
                    None => acc.1 += 1,
                }
            }
            acc
        })
        .reduce(|| (0.0, 0, 0), |a, b| (a.0.max(b.0), a.1 + b.1, a.2 + b.2));
    SupEstimate { value, skipped, samples }
}

/// Sampled `sup ρ(f(z), g(z))` over the substrip.
pub fn sup_spherical_diff(f: &MeromorphicAP, g: &MeromorphicAP, strip: &Strip, grid: &GridSpec) -> Result<SupEstimate> {
    let (xs, ys) = grid_axes(strip, grid)?;
    check_inside(strip, grid, &f.domain())?;
    check_inside(strip, grid, &g.domain())?;
    let est = sup_over_grid(&xs, &ys, |z| {
        let a = f.eval_unchecked(z).ok()?;
        let b = g.eval_unchecked(z).ok()?;
        Some(spherical_distance(a, b))
    });
    if est.samples == 0 {
        return Err(Error::EmptyGrid);
    }
    Ok(est)
}

/// Directions used to pair each grid point with neighbours at distance just under `delta`.
const CONTINUITY_DIRECTIONS: usize = 8;

/// Sampled spherical modulus of continuity: max of `ρ(f(z), f(z'))` over
/// grid points `z` and neighbours `z'` with `|z − z'| < delta` inside the substrip.
pub fn modulus_of_continuity(f: &MeromorphicAP, strip: &Strip, delta: f64, grid: &GridSpec) -> Result<SupEstimate> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let (xs, ys) = grid_axes(strip, grid)?;
    check_inside(strip, grid, &f.domain())?;
    let (lo, hi) = sampled_band(strip, grid);
    let offsets: Vec<Complex64> = [0.5, 1.0 - 1e-9]
        .iter()
        .flat_map(|&frac| {
            (0..CONTINUITY_DIRECTIONS).map(move |k| {
                let theta = std::f64::consts::TAU * k as f64 / CONTINUITY_DIRECTIONS as f64;
                Complex64::from_polar(frac * delta, theta)
            })
        })
        .collect();
    let est = sup_over_grid(&xs, &ys, |z| {
        let fz = f.eval_unchecked(z).ok()?;
        let mut best = 0.0f64;
        for off in &offsets {
            let w = z + off;
            if w.im < lo || w.im > hi {
                continue;
            }
            if let Ok(fw) = f.eval_unchecked(w) {
                best = best.max(spherical_distance(fz, fw));
            }
        }
        Some(best)
    });
    if est.samples == 0 {
        return Err(Error::EmptyGrid);
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::ExponentialSum;
    use std::f64::consts::PI;

    fn sin_pi() -> ExponentialSum {
        ExponentialSum::sin(PI, Complex64::new(0.0, 0.0))
    }

    fn strip1() -> Strip {
        Strip::symmetric(1.0).unwrap()
    }

    #[test]
    fn progression_includes_endpoint() {
        let p = progression(0.0, 1.0, 0.1);
        assert_eq!(p.len(), 11);
        assert!((p[10] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identical_functions_have_zero_distance() {
        let f = MeromorphicAP::new(ExponentialSum::one(), sin_pi(), Strip::plane()).unwrap();
        let grid = GridSpec::new(0.05, 0.1, 0.0, (0.0, 2.0)).unwrap();
        let est = sup_spherical_diff(&f, &f, &strip1(), &grid).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn exact_period_two_gives_zero() {
        let f = MeromorphicAP::entire(sin_pi());
        let g = f.shift(2.0);
        let grid = GridSpec::new(0.05, 0.1, 0.0, (0.0, 2.0)).unwrap();
        let est = sup_spherical_diff(&f, &g, &strip1(), &grid).unwrap();
        assert!(est.value < 1e-13, "{}", est.value);
    }

    #[test]
    fn shifted_reciprocal_sine_is_stable_under_refinement() {
        // 1/sin(πz) against 1/sin(π(z + 1/2)) on |Im z| <= 1.
        let f = MeromorphicAP::new(ExponentialSum::one(), sin_pi(), Strip::plane()).unwrap();
        let g = f.shift(0.5);
        let coarse = GridSpec::new(0.01, 0.01, 0.0, (0.0, 2.0)).unwrap();
        let fine = GridSpec::new(0.005, 0.005, 0.0, (0.0, 2.0)).unwrap();
        let a = sup_spherical_diff(&f, &g, &strip1(), &coarse).unwrap().value;
        let b = sup_spherical_diff(&f, &g, &strip1(), &fine).unwrap().value;
        assert!(a > 0.0 && a <= 1.0);
        assert!((a - b).abs() < 5e-4, "{a} vs {b}");
    }

    #[test]
    fn unbounded_strip_rejected() {
        let f = MeromorphicAP::entire(sin_pi());
        let grid = GridSpec::new(0.1, 0.1, 0.0, (0.0, 1.0)).unwrap();
        assert_eq!(sup_spherical_diff(&f, &f, &Strip::plane(), &grid), Err(Error::UnboundedStrip));
    }

    #[test]
    fn margin_larger_than_strip_is_empty() {
        let f = MeromorphicAP::entire(sin_pi());
        let grid = GridSpec::new(0.1, 0.1, 2.0, (0.0, 1.0)).unwrap();
        assert_eq!(sup_spherical_diff(&f, &f, &strip1(), &grid), Err(Error::EmptyGrid));
    }

    #[test]
    fn constant_has_zero_modulus() {
        let f = MeromorphicAP::entire(ExponentialSum::constant(Complex64::new(2.0, 1.0)));
        let grid = GridSpec::new(0.1, 0.1, 0.0, (0.0, 1.0)).unwrap();
        assert_eq!(modulus_of_continuity(&f, &strip1(), 0.3, &grid).unwrap().value, 0.0);
    }

    #[test]
    fn reciprocal_sine_modulus_is_small() {
        let f = MeromorphicAP::new(ExponentialSum::one(), sin_pi(), Strip::plane()).unwrap();
        let grid = GridSpec::new(0.01, 0.01, 0.0, (0.0, 2.0)).unwrap();
        let w = modulus_of_continuity(&f, &strip1(), 1e-3, &grid).unwrap().value;
        assert!(w < 0.02, "{w}");
        let wider = modulus_of_continuity(&f, &strip1(), 1e-2, &grid).unwrap().value;
        assert!(w <= wider + 1e-12);
    }
}
