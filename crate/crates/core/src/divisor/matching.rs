use num_complex::Complex64;

use super::Divisor;
use crate::error::{Error, Result};
use crate::function::Strip;
use crate::zeros::Rectangle;

/// Whether the shift by `t` is an `ε`-almost period of the point sequence of `d`.
///
/// The positive divisor is expanded to a sequence (each point repeated by its
/// multiplicity). Translated points `b + t` and original points are the two
/// sides of a bipartite graph with edges of length `< ε`. Points whose
/// partner could lie outside the known region (the window, `d`'s window and
/// its translate, shrunk by `ε`) or outside the inner strip are exempt; every
/// other point on either side must be matched.
pub fn sequence_ap_check(
    d: &Divisor,
    t: f64,
    epsilon: f64,
    inner: &Strip,
    outer: &Strip,
    window: &Rectangle,
) -> Result<bool> {
    Ok(sequence_ap_bottleneck(d, t, epsilon, inner, outer, window)?.is_some())
}

/// Smallest `θ < ε` for which a matching with all edges `≤ θ` covers every
/// constrained point, or `None` when none exists below `ε`.
pub fn sequence_ap_bottleneck(
    d: &Divisor,
    t: f64,
    epsilon: f64,
    inner: &Strip,
    outer: &Strip,
    window: &Rectangle,
) -> Result<Option<f64>> {
    if !d.is_positive() {
        return Err(Error::InvalidArgument("sequence check needs a positive divisor".into()));
    }
    if !(epsilon > 0.0 && epsilon.is_finite() && t.is_finite()) {
        return Err(Error::InvalidArgument("epsilon must be positive and t finite".into()));
    }
    if !inner.is_compactly_inside(outer) {
        return Err(Error::InvalidArgument("inner strip must be compactly inside the outer one".into()));
    }
    let dw = d.window();
    let shifted = Rectangle::new(dw.x0() + t, dw.x1() + t, dw.y0(), dw.y1())?;
    let core = window
        .intersect(&dw)
        .and_then(|r| r.intersect(&shifted))
        .and_then(|r| r.expand(-epsilon).ok())
        .ok_or(Error::WindowTooSmall)?;
    let constrained = |z: Complex64| core.contains(z) && inner.contains_closed(z);

    let mut points: Vec<Complex64> = Vec::new();
    for &(z, k) in d.entries() {
        if outer.contains_closed(z) && window.contains(z) {
            points.extend(std::iter::repeat_n(z, k as usize));
        }
    }
    points.sort_by(|a, b| a.re.total_cmp(&b.re));

    // edges from translated point i to original point j, with length
    let mut edges: Vec<Vec<(usize, f64)>> = vec![Vec::new(); points.len()];
    for (i, p) in points.iter().enumerate() {
        let q = p + t;
        let start = points.partition_point(|b| b.re <= q.re - epsilon);
        for (j, b) in points.iter().enumerate().skip(start) {
            if b.re >= q.re + epsilon {
                break;
            }
            let len = (q - b).norm();
            if len < epsilon {
                edges[i].push((j, len));
            }
        }
    }
    let must_left: Vec<usize> = (0..points.len()).filter(|&i| constrained(points[i] + t)).collect();
    let must_right: Vec<usize> = (0..points.len()).filter(|&j| constrained(points[j])).collect();

    let mut thresholds: Vec<f64> = edges.iter().flatten().map(|&(_, l)| l).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();
    let feasible = |theta: f64| covers(&edges, points.len(), &must_left, &must_right, theta);
    if must_left.is_empty() && must_right.is_empty() {
        return Ok(Some(0.0));
    }
    if thresholds.is_empty() || !feasible(*thresholds.last().unwrap()) {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0usize, thresholds.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(thresholds[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(thresholds[lo]))
}

/// A matching saturating both constrained sets exists iff one saturates each
/// set separately (Mendelsohn–Dulmage).
fn covers(edges: &[Vec<(usize, f64)>], n: usize, left: &[usize], right: &[usize], theta: f64) -> bool {
    let adj: Vec<Vec<usize>> =
        edges.iter().map(|e| e.iter().filter(|&&(_, l)| l <= theta).map(|&(j, _)| j).collect()).collect();
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, js) in adj.iter().enumerate() {
        for &j in js {
            rev[j].push(i);
        }
    }
    saturates(&adj, n, left) && saturates(&rev, n, right)
}

/// Kuhn's augmenting paths from each vertex of `side`.
fn saturates(adj: &[Vec<usize>], n: usize, side: &[usize]) -> bool {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for &u in side {
        let mut seen = vec![false; n];
        if !augment(adj, u, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(adj: &[Vec<usize>], u: usize, owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if owner[v].is_none_or(|w| augment(adj, w, owner, seen)) {
            owner[v] = Some(u);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn row(spacing: f64, lo: i64, hi: i64) -> Divisor {
        let w = Rectangle::new(lo as f64 * spacing - 0.25, hi as f64 * spacing + 0.25, -1.0, 1.0).unwrap();
        Divisor::new((lo..=hi).map(|n| (Complex64::new(n as f64 * spacing, 0.0), 1)).collect(), w).unwrap()
    }

    fn strips() -> (Strip, Strip) {
        (Strip::new(-0.5, 0.5).unwrap(), Strip::new(-1.0, 1.0).unwrap())
    }

    #[test]
    fn integer_shift() {
        let d = row(1.0, -20, 20);
        let (inner, outer) = strips();
        for eps in [1e-9, 0.1, 0.45] {
            assert!(sequence_ap_check(&d, 1.0, eps, &inner, &outer, &d.window()).unwrap());
        }
        assert!(!sequence_ap_check(&d, 0.5, 0.4, &inner, &outer, &d.window()).unwrap());
        assert!(!sequence_ap_check(&d, 0.5, 0.49, &inner, &outer, &d.window()).unwrap());
    }

    #[test]
    fn lattice_symmetry() {
        let d = row(1.0 / SQRT_2, -40, 40);
        let (inner, outer) = strips();
        for k in [1, 3, 7] {
            let t = k as f64 / SQRT_2;
            assert!(sequence_ap_check(&d, t, 1e-9, &inner, &outer, &d.window()).unwrap());
        }
    }

    #[test]
    fn bottleneck_value() {
        let d = row(1.0, -20, 20);
        let (inner, outer) = strips();
        let b = sequence_ap_bottleneck(&d, 1.1, 0.3, &inner, &outer, &d.window()).unwrap().unwrap();
        assert!((b - 0.1).abs() < 1e-12);
    }

    #[test]
    fn window_too_small() {
        let d = row(1.0, -2, 2);
        let (inner, outer) = strips();
        let w = Rectangle::new(-0.1, 0.1, -1.0, 1.0).unwrap();
        assert_eq!(sequence_ap_check(&d, 0.0, 0.2, &inner, &outer, &w), Err(Error::WindowTooSmall));
    }

    #[test]
    fn negative_divisor_rejected() {
        let (inner, outer) = strips();
        let d = row(1.0, -2, 2).negate();
        assert!(sequence_ap_check(&d, 1.0, 0.1, &inner, &outer, &d.window()).is_err());
    }
}
