use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::Strip;

/// Closed axis-parallel rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct Rectangle {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl TryFrom<[f64; 4]> for Rectangle {
    type Error = Error;
    fn try_from(v: [f64; 4]) -> Result<Self> {
        Rectangle::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Rectangle> for [f64; 4] {
    fn from(r: Rectangle) -> Self {
        [r.x0, r.x1, r.y0, r.y1]
    }
}

impl Rectangle {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        let finite = x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite();
        if !finite || x0 >= x1 || y0 >= y1 {
            return Err(Error::InvalidRectangle { x0, x1, y0, y1 });
        }
        Ok(Rectangle { x0, x1, y0, y1 })
    }

    /// `[x0, x1] ×` the (bounded) strip.
    pub fn from_strip(x0: f64, x1: f64, strip: &Strip) -> Result<Self> {
        if !strip.is_bounded() {
            return Err(Error::UnboundedStrip);
        }
        Rectangle::new(x0, x1, strip.lower(), strip.upper())
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }
    pub fn x1(&self) -> f64 {
        self.x1
    }
    pub fn y0(&self) -> f64 {
        self.y0
    }
    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.x0 <= z.re && z.re <= self.x1 && self.y0 <= z.im && z.im <= self.y1
    }

    /// Whether the closed disk lies inside the rectangle.
    pub fn contains_disk(&self, center: Complex64, radius: f64) -> bool {
        center.re - radius >= self.x0
            && center.re + radius <= self.x1
            && center.im - radius >= self.y0
            && center.im + radius <= self.y1
    }

    pub fn intersect(&self, other: &Rectangle) -> Option<Rectangle> {
        Rectangle::new(self.x0.max(other.x0), self.x1.min(other.x1), self.y0.max(other.y0), self.y1.min(other.y1)).ok()
    }

    /// Grows every side outward by `d` (shrinks for negative `d`).
    pub fn expand(&self, d: f64) -> Result<Rectangle> {
        Rectangle::new(self.x0 - d, self.x1 + d, self.y0 - d, self.y1 + d)
    }

    /// Counter-clockwise corners starting at the lower left.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x0, self.y0),
            Complex64::new(self.x1, self.y0),
            Complex64::new(self.x1, self.y1),
            Complex64::new(self.x0, self.y1),
        ]
    }

    /// Splits at fractions `fx`, `fy` of the width/height into four children
    /// (fractions outside `(0, 1)` are not accepted).
    pub(crate) fn quadrants(&self, fx: f64, fy: f64) -> [Rectangle; 4] {
        let xm = self.x0 + fx * self.width();
        let ym = self.y0 + fy * self.height();
        [
            Rectangle { x0: self.x0, x1: xm, y0: self.y0, y1: ym },
            Rectangle { x0: xm, x1: self.x1, y0: self.y0, y1: ym },
            Rectangle { x0: self.x0, x1: xm, y0: ym, y1: self.y1 },
            Rectangle { x0: xm, x1: self.x1, y0: ym, y1: self.y1 },
        ]
    }

    pub(crate) fn split_x(&self, fx: f64) -> [Rectangle; 2] {
        let xm = self.x0 + fx * self.width();
        [Rectangle { x1: xm, ..*self }, Rectangle { x0: xm, ..*self }]
    }

    pub(crate) fn split_y(&self, fy: f64) -> [Rectangle; 2] {
        let ym = self.y0 + fy * self.height();
        [Rectangle { y1: ym, ..*self }, Rectangle { y0: ym, ..*self }]
    }
}
