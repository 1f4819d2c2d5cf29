use num_complex::Complex64;
use rayon::prelude::*;

use super::locate::locate_with_policy;
use super::{locate_zeros, Rectangle};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::function::{grid_axes, sampled_band, ExponentialSum, GridSpec, MeromorphicAP, Strip};

/// Newton tolerance used when poles or zeros are located for the sup estimates.
const LOCATE_TOL: f64 = 1e-10;

/// Points placed on each exclusion circle; the extremum off the disks is
/// attained on their boundary when it is not attained on the grid.
const CIRCLE_POINTS: usize = 512;

/// Divisor of `f` in `rect`: numerator zeros count positive, denominator zeros
/// negative, and locations within `2·tol` are summed.
///
/// The window is the rectangle actually searched, which may have been grown
/// once to move the contour off a zero.
pub fn divisor_of(f: &MeromorphicAP, rect: &Rectangle, tol: f64) -> Result<Divisor> {
    let zeros = locate_zeros(f.numerator(), rect, tol)?;
    let first = zeros.window();
    let poles = locate_with_policy(f.denominator(), &first, tol, first == *rect)?;
    let zeros =
        if poles.window() != first { locate_with_policy(f.numerator(), &poles.window(), tol, false)? } else { zeros };
    let entries = zeros
        .roots()
        .iter()
        .map(|&(z, k)| (z, k as i64))
        .chain(poles.roots().iter().map(|&(z, k)| (z, -(k as i64))))
        .collect();
    Divisor::merged(entries, poles.window(), 2.0 * tol)
}

/// `inf |z − z'|` over zeros `z` and poles `z'` of `d` lying in the closed strip;
/// `+∞` when either side is empty.
pub fn separation_distance(d: &Divisor, strip: &Strip) -> f64 {
    let inside = |z: &Complex64| strip.contains_closed(*z);
    let plus: Vec<Complex64> = d.entries().iter().filter(|(z, k)| *k > 0 && inside(z)).map(|(z, _)| *z).collect();
    let mut minus: Vec<Complex64> = d.entries().iter().filter(|(z, k)| *k < 0 && inside(z)).map(|(z, _)| *z).collect();
    minus.sort_by(|a, b| a.re.total_cmp(&b.re));
    plus.par_iter().map(|z| nearest(&minus, *z)).reduce(|| f64::INFINITY, f64::min)
}

/// Distance from `z` to the nearest point of `pts` (sorted by real part).
fn nearest(pts: &[Complex64], z: Complex64) -> f64 {
    let start = pts.partition_point(|p| p.re < z.re);
    let mut best = f64::INFINITY;
    for p in pts[start..].iter() {
        if p.re - z.re >= best {
            break;
        }
        best = best.min((p - z).norm());
    }
    for p in pts[..start].iter().rev() {
        if z.re - p.re >= best {
            break;
        }
        best = best.min((p - z).norm());
    }
    best
}

/// Sampled `sup |f|` over the substrip with the open `r`-disks about the poles removed.
///
/// Poles are the located zeros of the denominator in the grid window widened
/// by `r + 1`. The quotient is evaluated directly, so the closed band may touch
/// the edge of `f`'s declared domain.
pub fn bounded_off_poles(f: &MeromorphicAP, strip: &Strip, r: f64, grid: &GridSpec) -> Result<f64> {
    let poles = centers(f.denominator(), strip, r, grid)?;
    off_disk_extremum(f, strip, r, grid, &poles, Extremum::Sup)
}

/// Sampled `inf |f|` over the substrip with the open `r`-disks about the zeros removed.
pub fn inf_off_zeros(f: &MeromorphicAP, strip: &Strip, r: f64, grid: &GridSpec) -> Result<f64> {
    let zeros = centers(f.numerator(), strip, r, grid)?;
    off_disk_extremum(f, strip, r, grid, &zeros, Extremum::Inf)
}

#[derive(Clone, Copy)]
enum Extremum {
    Sup,
    Inf,
}

fn centers(g: &ExponentialSum, strip: &Strip, r: f64, grid: &GridSpec) -> Result<Vec<Complex64>> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument("exclusion radius must be positive".into()));
    }
    if !strip.is_bounded() {
        return Err(Error::UnboundedStrip);
    }
    if g.terms().len() <= 1 {
        // a single exponential never vanishes
        return Ok(Vec::new());
    }
    let (lo, hi) = sampled_band(strip, grid);
    let pad = r + 1.0;
    let window = Rectangle::new(grid.re_span.0 - pad, grid.re_span.1 + pad, lo - pad, hi + pad)?;
    let mut pts: Vec<Complex64> = locate_zeros(g, &window, LOCATE_TOL)?.roots().iter().map(|(z, _)| *z).collect();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re));
    Ok(pts)
}

fn off_disk_extremum(
    f: &MeromorphicAP,
    strip: &Strip,
    r: f64,
    grid: &GridSpec,
    centers: &[Complex64],
    mode: Extremum,
) -> Result<f64> {
    let (xs, ys) = grid_axes(strip, grid)?;
    let (lo, hi) = sampled_band(strip, grid);
    let in_band = |z: Complex64| lo <= z.im && z.im <= hi && grid.re_span.0 <= z.re && z.re <= grid.re_span.1;
    let excluded = |z: Complex64| nearest(centers, z) < r;
    let mut points: Vec<Complex64> =
        ys.iter().flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y))).filter(|z| !excluded(*z)).collect();
    // just outside the circle so that rounding cannot put it inside the disk
    let ring = r * (1.0 + 1e-12);
    for c in centers {
        for k in 0..CIRCLE_POINTS {
            let z = c + Complex64::from_polar(ring, std::f64::consts::TAU * k as f64 / CIRCLE_POINTS as f64);
            if in_band(z) && !excluded(z) {
                points.push(z);
            }
        }
    }
    let values: Vec<f64> = points
        .par_iter()
        .filter_map(|z| match f.eval_unchecked(*z) {
            Ok(v) => Some(v.as_finite().map_or(f64::INFINITY, |w| w.norm())),
            Err(_) => None,
        })
        .collect();
    if values.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(match mode {
        Extremum::Sup => values.into_iter().fold(0.0, f64::max),
        Extremum::Inf => values.into_iter().fold(f64::INFINITY, f64::min),
    })
}

/// `(zeros, poles)` of `d` in `Π₁ = {z ∈ S' : |Re z − t| < 1}`, counted with multiplicity.
pub fn count_in_unit_rectangle(d: &Divisor, strip: &Strip, t: f64) -> (i64, i64) {
    let inside = |z: Complex64| strip.contains_closed(z) && (z.re - t).abs() < 1.0;
    let zeros = d.positive_part().mass_where(inside);
    let poles = d.negative_part().mass_where(inside);
    (zeros, poles)
}
