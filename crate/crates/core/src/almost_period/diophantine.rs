use crate::error::{Error, Result};

/// Distance from `x` to the nearest integer.
pub fn dist_to_nearest_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Smallest `q ∈ [1, qmax]` with `‖q·αᵢ‖ < delta` for every `αᵢ`, by exhaustive search.
pub fn simultaneous_approximation(alphas: &[f64], delta: f64, qmax: u64) -> Result<Option<u64>> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::InvalidArgument("delta must lie in (0, 1/2)".into()));
    }
    if qmax < 1 {
        return Err(Error::InvalidArgument("qmax must be at least 1".into()));
    }
    if alphas.iter().any(|a| !a.is_finite()) {
        return Err(Error::InvalidArgument("alphas must be finite".into()));
    }
    Ok((1..=qmax).find(|&q| alphas.iter().all(|&a| dist_to_nearest_integer(q as f64 * a) < delta)))
}

/// First `count` convergents `p/q` of the regular continued fraction of `alpha`.
///
/// The expansion is considered finished once a convergent reproduces `alpha`
/// to double precision; in that case [`Error::RationalTermination`] carries
/// the convergents found so far.
pub fn continued_fraction_convergents(alpha: f64, count: usize) -> Result<Vec<(i64, i64)>> {
    if count < 1 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    if !alpha.is_finite() {
        return Err(Error::InvalidArgument("alpha must be finite".into()));
    }
    let (mut h1, mut h2) = (1i64, 0i64);
    let (mut k1, mut k2) = (0i64, 1i64);
    let mut x = alpha;
    let mut out = Vec::with_capacity(count);
    loop {
        let a = x.floor();
        if a.abs() > i64::MAX as f64 / 4.0 {
            return Err(Error::RationalTermination { convergents: out });
        }
        let a = a as i64;
        let (h, k) = match (
            a.checked_mul(h1).and_then(|v| v.checked_add(h2)),
            a.checked_mul(k1).and_then(|v| v.checked_add(k2)),
        ) {
            (Some(h), Some(k)) => (h, k),
            _ => return Err(Error::RationalTermination { convergents: out }),
        };
        out.push((h, k));
        if out.len() == count {
            return Ok(out);
        }
        let frac = x - x.floor();
        let exhausted = (alpha - h as f64 / k as f64).abs() <= 4.0 * f64::EPSILON * alpha.abs().max(1.0);
        if frac == 0.0 || exhausted {
            return Err(Error::RationalTermination { convergents: out });
        }
        x = 1.0 / frac;
        (h2, h1) = (h1, h);
        (k2, k1) = (k1, k);
    }
}
