//! Near-collisions of the zeros `n/√2` and poles `m` of `sin(√2πz)/sin(πz)`.

use std::f64::consts::SQRT_2;

use meroap::almost_period::continued_fraction_convergents;
use meroap::report::Csv;
use meroap::{Error, Result};
use serde::{Deserialize, Serialize};

const CONVERGENTS: usize = 40;

/// `|n/√2 − m|` as `|n² − 2m²| / (√2(n + m√2))`, free of cancellation.
fn gap(n: i64, m: i64) -> f64 {
    let (n, m) = (n as i128, m as i128);
    let num = (n * n - 2 * m * m).abs() as f64;
    num / (SQRT_2 * (n as f64 + m as f64 * SQRT_2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KroneckerRow {
    pub r: f64,
    /// `min |n/√2 − m|` over `n ≠ 0`, `|n/√2| ≤ R`, `|m| ≤ R`.
    pub min_distance: f64,
    pub n: i64,
    pub m: i64,
    /// `|p/√2 − q|` for the best convergent `p/q` of `√2` with both points in the window.
    pub delta: f64,
    /// `(1 + 1/√2)·δ`.
    pub bound: f64,
    pub bound_holds: bool,
}

/// Exhaustive minimum of `|n/√2 − m|` in the window `|Re z| ≤ r`.
///
/// `n = 0` is excluded: `z = 0` is a zero of both sines and cancels.
pub fn brute_force_min(r: f64) -> Option<(f64, i64, i64)> {
    let nmax = (r * SQRT_2).floor() as i64 + 1;
    let mut best: Option<(f64, i64, i64)> = None;
    for n in 1..=nmax {
        let x = n as f64 / SQRT_2;
        if x > r {
            continue;
        }
        let m = x.round().min(r.floor()) as i64;
        let d = gap(n, m);
        if best.is_none_or(|b| d < b.0) {
            best = Some((d, n, m));
        }
    }
    best
}

/// `δ(R)`: the closest convergent pair `(p, q)` of `√2` with `q ≤ R` and `p/√2 ≤ R`.
pub fn convergent_delta(r: f64) -> Result<Option<f64>> {
    let convergents = match continued_fraction_convergents(SQRT_2, CONVERGENTS) {
        Ok(c) => c,
        Err(Error::RationalTermination { convergents }) => convergents,
        Err(e) => return Err(e),
    };
    Ok(convergents
        .iter()
        .filter(|&&(p, q)| p > 0 && (q as f64) <= r && p as f64 / SQRT_2 <= r)
        .map(|&(p, q)| gap(p, q))
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.min(d)))))
}

pub fn kronecker_table(r_values: &[f64]) -> Result<Vec<KroneckerRow>> {
    if r_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("R values must be increasing".into()));
    }
    r_values
        .iter()
        .map(|&r| {
            let (min_distance, n, m) = brute_force_min(r)
                .ok_or_else(|| Error::InvalidArgument(format!("no zero n/√2 ≠ 0 lies in |Re z| ≤ {r}")))?;
            let delta = convergent_delta(r)?.unwrap_or(f64::INFINITY);
            let bound = (1.0 + 1.0 / SQRT_2) * delta;
            Ok(KroneckerRow { r, min_distance, n, m, delta, bound, bound_holds: min_distance <= bound })
        })
        .collect()
}

pub fn table_csv(rows: &[KroneckerRow]) -> String {
    let mut csv = Csv::new(&["R", "min_distance", "n", "m", "delta", "bound", "bound_holds"]);
    for row in rows {
        csv.row(&[
            row.r.to_string(),
            format!("{:.15e}", row.min_distance),
            row.n.to_string(),
            row.m.to_string(),
            format!("{:.15e}", row.delta),
            format!("{:.15e}", row.bound),
            row.bound_holds.to_string(),
        ]);
    }
    csv.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_windows() {
        let (d, n, m) = brute_force_min(10.0).unwrap();
        assert_eq!((n, m), (7, 5));
        assert!((d - 0.050252531694167).abs() < 1e-12);
        let (d, n, m) = brute_force_min(100.0).unwrap();
        assert_eq!((n, m), (99, 70));
        assert!((d - 0.0035713374682049158).abs() < 1e-17);
    }

    #[test]
    fn table_is_monotone_and_bounded() {
        let rows = kronecker_table(&[10.0, 25.0, 100.0, 169.0, 500.0, 1000.0]).unwrap();
        assert!(rows.iter().all(|r| r.bound_holds));
        assert!(rows.windows(2).all(|w| w[1].min_distance <= w[0].min_distance));
        assert_eq!((rows[4].n, rows[4].m), (577, 408));
    }

    #[test]
    fn rejects_unsorted() {
        assert!(kronecker_table(&[100.0, 10.0]).is_err());
    }
}
