use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Csv;
use crate::zeros::Rectangle;

/// Finite divisor: distinct points with nonzero integer multiplicities
/// (zeros positive, poles negative), valid on a rectangular window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DivisorDoc", into = "DivisorDoc")]
pub struct Divisor {
    entries: Vec<(Complex64, i64)>,
    window: Rectangle,
}

/// JSON layout `{points: [[re, im, k], ...], window: [x0, x1, y0, y1]}`.
#[derive(Serialize, Deserialize)]
struct DivisorDoc {
    points: Vec<(f64, f64, i64)>,
    window: Rectangle,
}

impl TryFrom<DivisorDoc> for Divisor {
    type Error = Error;
    fn try_from(doc: DivisorDoc) -> Result<Self> {
        Divisor::new(doc.points.into_iter().map(|(re, im, k)| (Complex64::new(re, im), k)).collect(), doc.window)
    }
}

impl From<Divisor> for DivisorDoc {
    fn from(d: Divisor) -> Self {
        DivisorDoc { points: d.entries.iter().map(|(z, k)| (z.re, z.im, *k)).collect(), window: d.window }
    }
}

fn point_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl Divisor {
    /// Builds a divisor, summing multiplicities of identical points and
    /// dropping entries that cancel. Every point must lie in the window.
    pub fn new(entries: Vec<(Complex64, i64)>, window: Rectangle) -> Result<Self> {
        Self::merged(entries, window, 0.0)
    }

    /// As [`Divisor::new`], but points within `radius` of an earlier point (in
    /// `(re, im)` order) are treated as the same point.
    pub fn merged(mut entries: Vec<(Complex64, i64)>, window: Rectangle, radius: f64) -> Result<Self> {
        if let Some((z, _)) = entries.iter().find(|(z, _)| !window.contains(*z)) {
            return Err(Error::InvalidArgument(format!("divisor point {z} lies outside its window")));
        }
        entries.sort_by(|a, b| point_order(&a.0, &b.0));
        let mut out: Vec<(Complex64, i64)> = Vec::with_capacity(entries.len());
        for (z, k) in entries {
            // Merged points lie within `radius` in Re, so scan back only that far.
            let hit = out
                .iter_mut()
                .rev()
                .take_while(|(w, _)| z.re - w.re <= radius)
                .find(|(w, _)| (z - *w).norm() <= radius);
            match hit {
                Some(entry) => entry.1 += k,
                None => out.push((z, k)),
            }
        }
        out.retain(|(_, k)| *k != 0);
        Ok(Divisor { entries: out, window })
    }

    pub fn empty(window: Rectangle) -> Self {
        Divisor { entries: Vec::new(), window }
    }

    pub fn entries(&self) -> &[(Complex64, i64)] {
        &self.entries
    }

    pub fn window(&self) -> Rectangle {
        self.window
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|(_, k)| *k > 0)
    }

    fn map_entries(&self, f: impl Fn(i64) -> Option<i64>) -> Divisor {
        Divisor {
            entries: self.entries.iter().filter_map(|&(z, k)| f(k).map(|k| (z, k))).collect(),
            window: self.window,
        }
    }

    /// `d⁺`: the zeros with their multiplicities.
    pub fn positive_part(&self) -> Divisor {
        self.map_entries(|k| (k > 0).then_some(k))
    }

    /// `d⁻`: the poles with absolute multiplicities.
    pub fn negative_part(&self) -> Divisor {
        self.map_entries(|k| (k < 0).then_some(-k))
    }

    /// `|d|`.
    pub fn abs(&self) -> Divisor {
        self.map_entries(|k| Some(k.abs()))
    }

    pub fn negate(&self) -> Divisor {
        self.map_entries(|k| Some(-k))
    }

    /// Sum on the intersection of the windows; coincident points add.
    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        self.add_with_radius(other, 0.0)
    }

    /// Sum where points closer than `radius` count as coincident.
    pub fn add_with_radius(&self, other: &Divisor, radius: f64) -> Result<Divisor> {
        let window = self.window.intersect(&other.window).ok_or(Error::DisjointWindows)?;
        let entries =
            self.entries.iter().chain(other.entries.iter()).filter(|(z, _)| window.contains(*z)).copied().collect();
        Divisor::merged(entries, window, radius)
    }

    /// Restriction to a smaller window.
    pub fn restrict(&self, window: Rectangle) -> Result<Divisor> {
        let w = self.window.intersect(&window).ok_or(Error::DisjointWindows)?;
        Ok(Divisor { entries: self.entries.iter().filter(|(z, _)| w.contains(*z)).copied().collect(), window: w })
    }

    /// Total mass `Σ k` over points accepted by `pred`.
    pub fn mass_where(&self, pred: impl Fn(Complex64) -> bool) -> i64 {
        self.entries.iter().filter(|(z, _)| pred(*z)).map(|(_, k)| k).sum()
    }

    /// `re,im,k` table.
    pub fn to_csv(&self) -> String {
        let mut csv = Csv::new(&["re", "im", "k"]);
        for (z, k) in &self.entries {
            csv.row(&[z.re.to_string(), z.im.to_string(), k.to_string()]);
        }
        csv.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Rectangle {
        Rectangle::new(-2.0, 2.0, -2.0, 2.0).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parts_of_mixed_divisor() {
        let d = Divisor::new(vec![(c(0.0, 0.0), 2), (c(0.0, 1.0), -1)], w()).unwrap();
        assert_eq!(d.positive_part().entries(), &[(c(0.0, 0.0), 2)]);
        assert_eq!(d.negative_part().entries(), &[(c(0.0, 1.0), 1)]);
        assert_eq!(d.abs().entries(), &[(c(0.0, 0.0), 2), (c(0.0, 1.0), 1)]);
        assert_eq!(d.add(&d.negative_part()).unwrap(), d.positive_part());
    }

    #[test]
    fn cancellation_removes_point() {
        let a = Divisor::new(vec![(c(0.0, 0.0), 1)], w()).unwrap();
        let b = Divisor::new(vec![(c(0.0, 0.0), -1)], w()).unwrap();
        assert!(a.add(&b).unwrap().is_empty());
    }

    #[test]
    fn disjoint_windows_rejected() {
        let a = Divisor::empty(w());
        let b = Divisor::empty(Rectangle::new(5.0, 6.0, 0.0, 1.0).unwrap());
        assert_eq!(a.add(&b), Err(Error::DisjointWindows));
    }

    #[test]
    fn points_outside_window_rejected() {
        assert!(Divisor::new(vec![(c(3.0, 0.0), 1)], w()).is_err());
    }

    #[test]
    fn radius_merge() {
        let d =
            Divisor::merged(vec![(c(1.0, 0.0), 1), (c(1.0 + 1e-12, 0.0), -1), (c(0.5, 0.0), 1)], w(), 1e-10).unwrap();
        assert_eq!(d.entries(), &[(c(0.5, 0.0), 1)]);
    }

    #[test]
    fn json_layout() {
        let d = Divisor::new(vec![(c(0.5, -1.0), -2)], w()).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["points"], serde_json::json!([[0.5, -1.0, -2]]));
        let back: Divisor = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
    }
}
