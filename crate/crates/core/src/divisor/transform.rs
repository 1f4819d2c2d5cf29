use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Divisor;
use crate::error::{Error, Result};
use crate::zeros::Rectangle;

/// Piecewise-linear map of the imaginary axis through the given knots,
/// extended linearly past the end knots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinear {
    knots: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    pub fn new(mut knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 || knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::InvalidArgument("a piecewise-linear map needs at least two finite knots".into()));
        }
        knots.sort_by(|a, b| a.0.total_cmp(&b.0));
        if knots.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument("knot abscissae must be distinct".into()));
        }
        Ok(PiecewiseLinear { knots })
    }

    pub fn identity() -> Self {
        PiecewiseLinear { knots: vec![(0.0, 0.0), (1.0, 1.0)] }
    }

    /// `y ↦ a·y + b`.
    pub fn affine(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![(0.0, b), (1.0, a + b)])
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    fn piece(&self, y: f64) -> usize {
        let k = self.knots.partition_point(|(x, _)| *x <= y);
        k.clamp(1, self.knots.len() - 1) - 1
    }

    fn slope(&self, i: usize) -> f64 {
        let (a, b) = (self.knots[i], self.knots[i + 1]);
        (b.1 - a.1) / (b.0 - a.0)
    }

    pub fn eval(&self, y: f64) -> f64 {
        let i = self.piece(y);
        self.knots[i].1 + self.slope(i) * (y - self.knots[i].0)
    }

    /// Whether every linear piece meeting `[a, b]` has positive slope.
    pub fn is_strictly_increasing_on(&self, a: f64, b: f64) -> bool {
        (self.piece(a)..=self.piece(b)).all(|i| self.slope(i) > 0.0)
    }
}

/// `(x + iy, k) ↦ (x + iγ(y), k)`; the window is mapped the same way.
pub fn transform_strip(d: &Divisor, gamma: &PiecewiseLinear) -> Result<Divisor> {
    let w = d.window();
    if !gamma.is_strictly_increasing_on(w.y0(), w.y1()) {
        return Err(Error::NonMonotone);
    }
    let window = Rectangle::new(w.x0(), w.x1(), gamma.eval(w.y0()), gamma.eval(w.y1()))?;
    let entries = d.entries().iter().map(|&(z, k)| (Complex64::new(z.re, gamma.eval(z.im)), k)).collect();
    Divisor::new(entries, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> Divisor {
        let w = Rectangle::new(-1.0, 1.0, -0.5, 1.5).unwrap();
        Divisor::new(vec![(Complex64::new(0.0, 0.0), 1), (Complex64::new(0.0, 1.0), 1)], w).unwrap()
    }

    #[test]
    fn identity_is_noop() {
        assert_eq!(transform_strip(&d(), &PiecewiseLinear::identity()).unwrap(), d());
    }

    #[test]
    fn doubling() {
        let t = transform_strip(&d(), &PiecewiseLinear::affine(2.0, 0.0).unwrap()).unwrap();
        let pts: Vec<Complex64> = t.entries().iter().map(|(z, _)| *z).collect();
        assert_eq!(pts, vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 2.0)]);
        assert_eq!(t.window().y1(), 3.0);
    }

    #[test]
    fn flat_piece_rejected() {
        let g = PiecewiseLinear::new(vec![(-1.0, -1.0), (0.0, 0.0), (0.5, 0.0), (2.0, 2.0)]).unwrap();
        assert_eq!(transform_strip(&d(), &g), Err(Error::NonMonotone));
        let ok = PiecewiseLinear::new(vec![(-1.0, -1.0), (0.0, 0.0), (2.0, 0.5)]).unwrap();
        assert!(transform_strip(&d(), &ok).is_ok());
    }

    #[test]
    fn extrapolates_past_end_knots() {
        let g = PiecewiseLinear::new(vec![(0.0, 0.0), (1.0, 3.0)]).unwrap();
        assert_eq!(g.eval(-1.0), -3.0);
        assert_eq!(g.eval(2.0), 6.0);
    }
}
