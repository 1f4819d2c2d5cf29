use std::cmp::Ordering;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::winding::{count_with_policy, Analytic};
use super::Rectangle;
use crate::error::{Error, Result};
use crate::function::ExponentialSum;
use crate::report::Csv;

/// Off-centre split fractions; a later pair is tried when a cut meets a zero.
const SPLITS: [(f64, f64); 5] = [(0.5137, 0.4863), (0.4679, 0.5281), (0.5411, 0.4589), (0.4423, 0.5577), (0.6, 0.4)];

const NEWTON_ITERATIONS: usize = 60;

/// Located zeros with multiplicities, sorted by `(re, im)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RootListDoc", into = "RootListDoc")]
pub struct RootList {
    roots: Vec<(Complex64, u32)>,
    window: Rectangle,
}

#[derive(Serialize, Deserialize)]
struct RootListDoc {
    points: Vec<(f64, f64, u32)>,
    window: Rectangle,
}

impl TryFrom<RootListDoc> for RootList {
    type Error = Error;
    fn try_from(doc: RootListDoc) -> Result<Self> {
        if doc.points.iter().any(|p| p.2 == 0) {
            return Err(Error::InvalidArgument("root multiplicities must be positive".into()));
        }
        let roots = doc.points.into_iter().map(|(re, im, k)| (Complex64::new(re, im), k)).collect();
        Ok(RootList::merged(roots, doc.window, 0.0))
    }
}

impl From<RootList> for RootListDoc {
    fn from(r: RootList) -> Self {
        RootListDoc { points: r.roots.iter().map(|(z, k)| (z.re, z.im, *k)).collect(), window: r.window }
    }
}

fn point_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl RootList {
    fn merged(mut roots: Vec<(Complex64, u32)>, window: Rectangle, radius: f64) -> Self {
        roots.sort_by(|a, b| point_order(&a.0, &b.0));
        let mut out: Vec<(Complex64, u32)> = Vec::with_capacity(roots.len());
        for (z, k) in roots {
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
        RootList { roots: out, window }
    }

    pub fn roots(&self) -> &[(Complex64, u32)] {
        &self.roots
    }

    /// Rectangle the roots were searched in (after any boundary perturbation).
    pub fn window(&self) -> Rectangle {
        self.window
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Σ multiplicities.
    pub fn total(&self) -> i64 {
        self.roots.iter().map(|(_, k)| *k as i64).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut csv = Csv::new(&["re", "im", "k"]);
        for (z, k) in &self.roots {
            csv.row(&[z.re.to_string(), z.im.to_string(), k.to_string()]);
        }
        csv.finish()
    }
}

/// Zeros of `g` in `rect`, each refined by Newton's method to within `tol`.
///
/// Cells are subdivided until each holds one zero (or one tight cluster, whose
/// size is confirmed by a count on a small box); roots closer than `2·tol` are merged.
pub fn locate_zeros(g: &ExponentialSum, rect: &Rectangle, tol: f64) -> Result<RootList> {
    locate_with_policy(g, rect, tol, true)
}

pub(crate) fn locate_with_policy(
    g: &ExponentialSum,
    rect: &Rectangle,
    tol: f64,
    allow_perturb: bool,
) -> Result<RootList> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidArgument(format!("tol must lie in (0, 1e-3], got {tol}")));
    }
    let a = Analytic::new(g)?;
    let top = count_with_policy(&a, rect, allow_perturb)?;
    let roots = locate_cell(&a, top.rect, top.count, tol)?;
    Ok(RootList::merged(roots, top.rect, 2.0 * tol))
}

fn locate_cell(a: &Analytic, cell: Rectangle, n: i64, tol: f64) -> Result<Vec<(Complex64, u32)>> {
    if n <= 0 {
        return Ok(Vec::new());
    }
    let center = cell.center();
    if let Some(z) = newton(a, center, n as f64, &cell) {
        if n == 1 && residual_ok(a, z, tol) {
            return Ok(vec![(z, 1)]);
        }
        if n > 1 && cluster_confirmed(a, z, n, tol, &cell) {
            return Ok(vec![(z, n as u32)]);
        }
    }
    let floor = (1e-2 * tol).max(1e-13 * (1.0 + center.norm()));
    if cell.diameter() < floor {
        return if n == 1 { Err(Error::NewtonStall(center)) } else { Ok(vec![(center, n as u32)]) };
    }
    let mut last_err = Error::NonIntegerWinding(n as f64);
    for (fx, fy) in SPLITS {
        let children: Vec<Rectangle> = if cell.width() > 2.0 * cell.height() {
            cell.split_x(fx).to_vec()
        } else if cell.height() > 2.0 * cell.width() {
            cell.split_y(fy).to_vec()
        } else {
            cell.quadrants(fx, fy).to_vec()
        };
        let counts: Result<Vec<i64>> = children.par_iter().map(|c| a.count(c)).collect();
        match counts {
            Ok(counts) if counts.iter().sum::<i64>() == n => {
                let found: Result<Vec<Vec<(Complex64, u32)>>> =
                    children.par_iter().zip(counts.par_iter()).map(|(c, &k)| locate_cell(a, *c, k, tol)).collect();
                return Ok(found?.into_iter().flatten().collect());
            }
            Ok(counts) => last_err = Error::NonIntegerWinding(counts.iter().sum::<i64>() as f64),
            Err(e @ (Error::BoundaryZero(_) | Error::NonIntegerWinding(_))) => last_err = e,
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}

/// Newton's method with multiplicity `m`, kept only if it lands in `cell`.
fn newton(a: &Analytic, start: Complex64, m: f64, cell: &Rectangle) -> Option<Complex64> {
    let mut z = start;
    let reach = cell.expand(1e-12 * (1.0 + cell.center().norm())).ok()?;
    for _ in 0..NEWTON_ITERATIONS {
        let (v, dv) = a.eval(z);
        if v == Complex64::new(0.0, 0.0) {
            break;
        }
        if dv == Complex64::new(0.0, 0.0) || !dv.is_finite() {
            return None;
        }
        let step = m * v / dv;
        z -= step;
        if !z.is_finite() || !reach.contains(z) {
            return None;
        }
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    reach.contains(z).then_some(z)
}

/// `|g(z)| ≤ tol · Σ|cₖ||λₖ||e^{iλₖz}|`: the zero is within about `tol` of `z`.
fn residual_ok(a: &Analytic, z: Complex64, tol: f64) -> bool {
    let (v, _) = a.eval(z);
    v.norm() <= tol * a.g.magnitude_bound(z, 1).max(f64::MIN_POSITIVE)
}

fn cluster_radius(z: Complex64, tol: f64) -> f64 {
    (4.0 * tol).max(1e-7 * (1.0 + z.norm()))
}

/// All `n` zeros of the cell sit in a small box around `z`.
fn cluster_confirmed(a: &Analytic, z: Complex64, n: i64, tol: f64, cell: &Rectangle) -> bool {
    let r = cluster_radius(z, tol);
    let Ok(bx) = Rectangle::new(z.re - r, z.re + r, z.im - r, z.im + r) else {
        return false;
    };
    match bx.intersect(cell) {
        Some(b) => a.count(&b).is_ok_and(|k| k == n),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sin_pi() -> ExponentialSum {
        ExponentialSum::sin(PI, Complex64::new(0.0, 0.0))
    }

    fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Rectangle {
        Rectangle::new(x0, x1, y0, y1).unwrap()
    }

    #[test]
    fn simple_root() {
        let r = locate_zeros(&sin_pi(), &rect(0.4, 1.6, -1.0, 1.0), 1e-10).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r.roots()[0].0 - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        assert_eq!(r.roots()[0].1, 1);
    }

    #[test]
    fn double_root() {
        let g = sin_pi().powu(2);
        let r = locate_zeros(&g, &rect(0.4, 1.6, -1.0, 1.0), 1e-10).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.roots()[0].1, 2);
        assert!((r.roots()[0].0 - Complex64::new(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn shifted_sine_root() {
        // sin(πz) = −0.1 near 0: oracle by real Newton.
        let g = &sin_pi() + &ExponentialSum::constant(Complex64::new(0.1, 0.0));
        let mut x: f64 = 0.0;
        for _ in 0..50 {
            x -= ((PI * x).sin() + 0.1) / (PI * (PI * x).cos());
        }
        let r = locate_zeros(&g, &rect(-0.5, 0.5, -1.0, 1.0), 1e-10).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r.roots()[0].0 - Complex64::new(x, 0.0)).norm() < 1e-6);
        assert!((x + 0.0319).abs() < 1e-4);
    }

    #[test]
    fn many_roots_with_small_residuals() {
        let g = ExponentialSum::sin(PI * std::f64::consts::SQRT_2, Complex64::new(0.0, 0.0));
        let r = locate_zeros(&g, &rect(-30.2, 30.1, -1.0, 1.0), 1e-10).unwrap();
        assert_eq!(r.total(), count_with_policy(&Analytic::new(&g).unwrap(), &r.window(), false).unwrap().count);
        assert_eq!(r.len(), 85);
        for (z, _) in r.roots() {
            assert!(g.eval(*z).norm() < 1e-9);
        }
    }

    #[test]
    fn tol_range() {
        assert!(locate_zeros(&sin_pi(), &rect(0.4, 1.6, -1.0, 1.0), 0.0).is_err());
        assert!(locate_zeros(&sin_pi(), &rect(0.4, 1.6, -1.0, 1.0), 1e-2).is_err());
    }

    #[test]
    fn json_layout() {
        let r = locate_zeros(&sin_pi(), &rect(0.4, 1.6, -1.0, 1.0), 1e-10).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["points"][0][2], 1);
    }
}
