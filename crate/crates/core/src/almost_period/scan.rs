use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{
    check_inside, grid_axes, progression, spherical_distance, ExtendedComplex, GridSpec, MeromorphicAP, Strip,
};
use crate::report::{nonfinite_as_null, Csv};

/// Which metric the sup-differences of a scan were measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMetric {
    Spherical,
    Euclidean,
}

/// Outcome of scanning a window of candidate shifts for ε-almost periods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub epsilon: f64,
    /// Sampling strip; `None` for scans of sampled real tracks.
    pub strip: Option<Strip>,
    pub window: (f64, f64),
    pub step: f64,
    pub metric: ScanMetric,
    /// Shifts that passed, sorted.
    pub found: Vec<f64>,
    /// Largest gap between consecutive found shifts, window ends included;
    /// infinite when nothing was found.
    #[serde(with = "nonfinite_as_null")]
    pub max_gap: f64,
    pub skipped_points: usize,
    /// Every scanned `(τ, sup difference)`.
    pub samples: Vec<(f64, f64)>,
}

impl ScanReport {
    fn assemble(
        epsilon: f64,
        strip: Option<Strip>,
        window: (f64, f64),
        step: f64,
        metric: ScanMetric,
        samples: Vec<(f64, f64)>,
        skipped_points: usize,
    ) -> Self {
        let found: Vec<f64> = samples.iter().filter(|(_, d)| *d < epsilon).map(|(t, _)| *t).collect();
        let max_gap = max_gap(&found, window, step);
        ScanReport { epsilon, strip, window, step, metric, found, max_gap, skipped_points, samples }
    }

    /// Two-column `tau,sup_diff` table.
    pub fn to_csv(&self) -> String {
        let mut csv = Csv::new(&["tau", "sup_diff"]);
        for &(t, d) in &self.samples {
            csv.row(&[t, d]);
        }
        csv.finish()
    }

    pub fn is_relatively_dense_in_window(&self) -> bool {
        !self.found.is_empty() && self.max_gap.is_finite()
    }
}

/// Relative-density estimate: largest gap of `found` inside `window`,
/// counting the stretches to both window ends, never below `step`.
pub fn max_gap(found: &[f64], window: (f64, f64), step: f64) -> f64 {
    if found.is_empty() {
        return f64::INFINITY;
    }
    let mut gap = found[0] - window.0;
    for w in found.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap = gap.max(window.1 - found[found.len() - 1]);
    gap.max(step)
}

/// Grid values of `f`, with `None` at indeterminate points.
fn sample_values(f: &MeromorphicAP, points: &[Complex64]) -> Vec<Option<ExtendedComplex>> {
    points.par_iter().map(|&z| f.eval_unchecked(z).ok()).collect()
}

fn grid_points(strip: &Strip, grid: &GridSpec) -> Result<Vec<Complex64>> {
    let (xs, ys) = grid_axes(strip, grid)?;
    Ok(ys.iter().flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y))).collect())
}

/// Sup of `ρ(values_a, values_b)` over points where both are determinate.
fn sup_between(a: &[Option<ExtendedComplex>], b: &[Option<ExtendedComplex>]) -> (f64, usize) {
    let mut sup = 0.0f64;
    let mut skipped = 0;
    for (x, y) in a.iter().zip(b) {
        match (x, y) {
            (Some(x), Some(y)) => sup = sup.max(spherical_distance(*x, *y)),
            _ => skipped += 1,
        }
    }
    (sup, skipped)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("epsilon must be positive".into()))
    }
}

/// Sampled sup of `ρ(f(z + τ), f(z))` over the substrip grid.
pub fn almost_period_defect(f: &MeromorphicAP, tau: f64, strip: &Strip, grid: &GridSpec) -> Result<(f64, usize)> {
    check_inside(strip, grid, &f.domain())?;
    let points = grid_points(strip, grid)?;
    let base = sample_values(f, &points);
    let shifted = sample_values(&f.shift(tau), &points);
    let (sup, skipped) = sup_between(&base, &shifted);
    if skipped == points.len() {
        return Err(Error::EmptyGrid);
    }
    Ok((sup, skipped))
}

/// Whether `tau` is an ε-almost period of `f` on the sampled substrip.
pub fn is_almost_period(f: &MeromorphicAP, tau: f64, strip: &Strip, epsilon: f64, grid: &GridSpec) -> Result<bool> {
    check_epsilon(epsilon)?;
    Ok(almost_period_defect(f, tau, strip, grid)?.0 < epsilon)
}

/// Scans `τ ∈ window` in steps of `step` and reports every ε-almost period.
pub fn scan_almost_periods(
    f: &MeromorphicAP,
    strip: &Strip,
    epsilon: f64,
    window: (f64, f64),
    step: f64,
    grid: &GridSpec,
) -> Result<ScanReport> {
    check_epsilon(epsilon)?;
    if !(step > 0.0) {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    if !(window.0 < window.1) {
        return Err(Error::InvalidArgument("scan window must be nonempty".into()));
    }
    check_inside(strip, grid, &f.domain())?;
    let points = grid_points(strip, grid)?;
    let base = sample_values(f, &points);
    let taus = progression(window.0, window.1, step);
    let results: Vec<(f64, f64, usize)> = taus
        .par_iter()
        .map(|&tau| {
            let g = f.shift(tau);
            let shifted: Vec<Option<ExtendedComplex>> = points.iter().map(|&z| g.eval_unchecked(z).ok()).collect();
            let (sup, skipped) = sup_between(&base, &shifted);
            (tau, sup, skipped)
        })
        .collect();
    if results.iter().any(|r| r.2 == points.len()) {
        return Err(Error::EmptyGrid);
    }
    let skipped = results.iter().map(|r| r.2).max().unwrap_or(0);
    let samples = results.into_iter().map(|(t, s, _)| (t, s)).collect();
    Ok(ScanReport::assemble(epsilon, Some(*strip), window, step, ScanMetric::Spherical, samples, skipped))
}

/// Almost-period scan of a uniformly sampled real function under the Euclidean metric.
///
/// Candidate shifts are the multiples `j·h` of the sampling step `h` up to
/// `tau_max`; the defect of a shift is the max of `|v(t + τ) − v(t)|` over
/// the overlap of the track with its translate.
pub fn scan_track_almost_periods(track: &[(f64, f64)], epsilon: f64, tau_max: f64) -> Result<ScanReport> {
    check_epsilon(epsilon)?;
    if track.len() < 2 {
        return Err(Error::EmptyGrid);
    }
    let h = track[1].0 - track[0].0;
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("track must be sampled at increasing t".into()));
    }
    let max_shift = ((tau_max / h) + 1e-9).floor() as usize;
    if max_shift == 0 || max_shift >= track.len() {
        return Err(Error::InvalidArgument("tau_max must be positive and shorter than the track".into()));
    }
    let values: Vec<f64> = track.iter().map(|p| p.1).collect();
    let samples: Vec<(f64, f64)> = (0..=max_shift)
        .into_par_iter()
        .map(|j| {
            let sup = values[j..].iter().zip(&values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            (j as f64 * h, sup)
        })
        .collect();
    Ok(ScanReport::assemble(epsilon, None, (0.0, max_shift as f64 * h), h, ScanMetric::Euclidean, samples, 0))
}
