use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Divisor;
use crate::error::{Error, Result};
use crate::function::{progression, Strip};
use crate::zeros::separation_distance;

/// Smooth bump `exp(1 − 1/(1 − t²))`, `t = |z − center|/radius`, supported on the closed disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpFunction {
    center: Complex64,
    radius: f64,
}

impl BumpFunction {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument("bump radius must be positive".into()));
        }
        Ok(BumpFunction { center, radius })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        let t = (z - self.center).norm() / self.radius;
        if t >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - t * t)).exp()
        }
    }
}

/// `(d * χ)(t) = Σ kₙ χ(aₙ + t)`.
///
/// The support of `χ(· + t)` is the disk of radius `r` about `center − t`; it
/// must lie in the divisor window, otherwise mass outside the window would be
/// silently lost.
pub fn convolve(d: &Divisor, chi: &BumpFunction, t: f64) -> Result<f64> {
    let support_center = chi.center - t;
    if !d.window().contains_disk(support_center, chi.radius) {
        return Err(Error::WindowOverrun(t));
    }
    Ok(d.entries().iter().map(|&(a, k)| k as f64 * chi.eval(a + t)).sum())
}

/// `(d * χ)(t)` sampled at `t0, t0 + step, ..., ≤ t1`.
pub fn convolution_track(d: &Divisor, chi: &BumpFunction, window: (f64, f64), step: f64) -> Result<Vec<(f64, f64)>> {
    if !(step > 0.0) || !(window.0 <= window.1) {
        return Err(Error::InvalidArgument("track needs a positive step and an ordered window".into()));
    }
    progression(window.0, window.1, step).into_par_iter().map(|t| Ok((t, convolve(d, chi, t)?))).collect()
}

/// Max over samples of `|(d⁺ * φ)(t) − max{(d * φ)(t), 0}|`.
///
/// Requires `2·radius` below the zero–pole separation of `d` inside its
/// window, so that no translate of the support meets a zero and a pole at once.
pub fn positive_part_identity_check(d: &Divisor, phi: &BumpFunction, t_samples: &[f64]) -> Result<f64> {
    let w = d.window();
    let band = Strip::new(w.y0(), w.y1())?;
    let sep = separation_distance(d, &band);
    if !(2.0 * phi.radius < sep) {
        return Err(Error::PreconditionViolated(format!(
            "2r = {} is not below the zero-pole separation {sep}",
            2.0 * phi.radius
        )));
    }
    let plus = d.positive_part();
    let mut worst = 0.0f64;
    for &t in t_samples {
        let lhs = convolve(&plus, phi, t)?;
        let rhs = convolve(d, phi, t)?.max(0.0);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::Rectangle;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn integers(lo: i64, hi: i64) -> Divisor {
        let w = Rectangle::new(lo as f64 - 0.5, hi as f64 + 0.5, -1.0, 1.0).unwrap();
        Divisor::new((lo..=hi).map(|n| (c(n as f64, 0.0), 1)).collect(), w).unwrap()
    }

    #[test]
    fn bump_profile() {
        let b = BumpFunction::new(c(1.0, 1.0), 2.0).unwrap();
        assert_eq!(b.eval(c(1.0, 1.0)), 1.0);
        assert_eq!(b.eval(c(3.0, 1.0)), 0.0);
        assert_eq!(b.eval(c(5.0, 1.0)), 0.0);
        assert!((b.eval(c(2.0, 1.0)) - (-1.0f64 / 3.0).exp()).abs() < 1e-15);
        assert!(BumpFunction::new(c(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn single_point_peak() {
        let d = Divisor::new(vec![(c(0.0, 0.0), 1)], Rectangle::new(-2.0, 2.0, -2.0, 2.0).unwrap()).unwrap();
        let chi = BumpFunction::new(c(0.0, 0.0), 1.0).unwrap();
        assert_eq!(convolve(&d, &chi, 0.0).unwrap(), 1.0);
        assert_eq!(convolve(&Divisor::empty(d.window()), &chi, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn overrun_is_an_error() {
        let d = integers(-2, 2);
        let chi = BumpFunction::new(c(0.0, 0.0), 0.4).unwrap();
        assert_eq!(convolve(&d, &chi, 3.0), Err(Error::WindowOverrun(3.0)));
    }

    #[test]
    fn integer_track_is_one_periodic() {
        let d = integers(-6, 1);
        let chi = BumpFunction::new(c(0.0, 0.0), 0.4).unwrap();
        let track = convolution_track(&d, &chi, (0.0, 4.0), 0.01).unwrap();
        for k in 0..(track.len() - 100) {
            assert!((track[k].1 - track[k + 100].1).abs() < 1e-12, "t = {}", track[k].0);
        }
    }

    #[test]
    fn identity_holds_for_positive_divisor() {
        let d = integers(-6, 1);
        let phi = BumpFunction::new(c(0.0, 0.0), 0.3).unwrap();
        let ts: Vec<f64> = (0..400).map(|k| k as f64 * 0.01).collect();
        assert_eq!(positive_part_identity_check(&d, &phi, &ts).unwrap(), 0.0);
    }

    #[test]
    fn identity_with_far_apart_zero_and_pole() {
        let w = Rectangle::new(-3.0, 8.0, -2.0, 2.0).unwrap();
        let d = Divisor::new(vec![(c(0.0, 0.0), 1), (c(5.0, 0.0), -1)], w).unwrap();
        let phi = BumpFunction::new(c(0.0, 0.0), 1.0).unwrap();
        let ts: Vec<f64> = (-150..=150).map(|k| k as f64 * 0.01).collect();
        assert_eq!(positive_part_identity_check(&d, &phi, &ts).unwrap(), 0.0);
    }

    #[test]
    fn identity_precondition() {
        let w = Rectangle::new(-3.0, 3.0, -2.0, 2.0).unwrap();
        let d = Divisor::new(vec![(c(0.0, 0.0), 1), (c(0.5, 0.0), -1)], w).unwrap();
        let phi = BumpFunction::new(c(0.0, 0.0), 1.0).unwrap();
        assert!(matches!(positive_part_identity_check(&d, &phi, &[0.0]), Err(Error::PreconditionViolated(_))));
    }
}
