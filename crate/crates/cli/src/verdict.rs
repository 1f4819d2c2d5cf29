//! Separation-based verdicts for products and sums of meromorphic a.p. functions.

use meroap::almost_period::{scan_almost_periods, ScanReport};
use meroap::report::nonfinite_as_null;
use meroap::zeros::{divisor_of, separation_distance, Rectangle};
use meroap::{GridSpec, MeromorphicAP, Result, Strip};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Ap,
    NotAp,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Ap => "AP",
            Verdict::NotAp => "NOT_AP",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

impl std::str::FromStr for Verdict {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "AP" => Ok(Verdict::Ap),
            "NOT_AP" => Ok(Verdict::NotAp),
            "INCONCLUSIVE" => Ok(Verdict::Inconclusive),
            other => Err(format!("unknown verdict `{other}`")),
        }
    }
}

/// Parameters of the confirming almost-period scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanParams {
    pub epsilon: f64,
    pub window: (f64, f64),
    pub step: f64,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictParams {
    /// Closed substrip in which zeros and poles are compared.
    pub strip: Strip,
    /// Half-widths `R` of the windows `|Re z| ≤ R`, increasing.
    pub windows: Vec<f64>,
    pub threshold: f64,
    pub tol: f64,
    pub scan: ScanParams,
}

impl Default for VerdictParams {
    fn default() -> Self {
        VerdictParams {
            strip: Strip::new(-1.0, 1.0).expect("valid strip"),
            windows: vec![25.0, 100.0, 400.0],
            threshold: 0.01,
            tol: 1e-10,
            scan: ScanParams {
                epsilon: 0.1,
                window: (0.0, 10.0),
                step: 0.02,
                grid: GridSpec::new(0.1, 0.1, 0.05, (0.0, 4.0)).expect("valid grid"),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowSeparation {
    pub half_width: f64,
    #[serde(with = "nonfinite_as_null")]
    pub separation: f64,
    pub zeros: i64,
    pub poles: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct APVerdict {
    pub function: MeromorphicAP,
    pub separated: bool,
    #[serde(with = "nonfinite_as_null")]
    pub min_separation: f64,
    pub threshold: f64,
    pub windows: Vec<WindowSeparation>,
    /// Separation fell strictly from the first window to the last.
    pub decay_measured: bool,
    pub ap_evidence: Option<ScanReport>,
    pub verdict: Verdict,
}

/// Verdict for `f₁·f₂`.
pub fn product_verdict(f1: &MeromorphicAP, f2: &MeromorphicAP, params: &VerdictParams) -> Result<APVerdict> {
    verdict_of(&f1.mul(f2)?, params)
}

/// Verdict for `f₁ + f₂` through the quotient `(n₁d₂ + n₂d₁)/(d₁d₂)`.
pub fn sum_verdict(f1: &MeromorphicAP, f2: &MeromorphicAP, params: &VerdictParams) -> Result<APVerdict> {
    verdict_of(&f1.add(f2)?, params)
}

/// Extracts the divisor over the largest window once, measures separation in
/// each window, and decides.
pub fn verdict_of(f: &MeromorphicAP, params: &VerdictParams) -> Result<APVerdict> {
    if params.windows.is_empty() || params.windows.windows(2).any(|w| w[0] >= w[1]) {
        return Err(meroap::Error::InvalidArgument("windows must be nonempty and increasing".into()));
    }
    let strip = params.strip;
    let widest = *params.windows.last().unwrap();
    let d = divisor_of(f, &Rectangle::from_strip(-widest, widest, &strip)?, params.tol)?;
    let mut windows = Vec::with_capacity(params.windows.len());
    for &r in &params.windows {
        let inner = d.restrict(Rectangle::new(-r, r, d.window().y0(), d.window().y1())?)?;
        windows.push(WindowSeparation {
            half_width: r,
            separation: separation_distance(&inner, &strip),
            zeros: inner.positive_part().mass_where(|z| strip.contains_closed(z)),
            poles: inner.negative_part().mass_where(|z| strip.contains_closed(z)),
        });
    }
    let seps: Vec<f64> = windows.iter().map(|w| w.separation).collect();
    let min_separation = *seps.last().unwrap();
    let separated = seps.iter().all(|&s| s >= params.threshold);
    let nonincreasing = seps.windows(2).all(|w| w[1] <= w[0]);
    let decay_measured = seps.len() >= 3 && nonincreasing && seps[seps.len() - 1] < seps[0];

    let mut ap_evidence = None;
    let verdict = if min_separation < params.threshold && decay_measured {
        Verdict::NotAp
    } else if separated {
        let s = &params.scan;
        let report = scan_almost_periods(f, &strip, s.epsilon, s.window, s.step, &s.grid)?;
        let ok = report.is_relatively_dense_in_window();
        ap_evidence = Some(report);
        if ok {
            Verdict::Ap
        } else {
            Verdict::Inconclusive
        }
    } else {
        Verdict::Inconclusive
    };
    Ok(APVerdict {
        function: f.clone(),
        separated,
        min_separation,
        threshold: params.threshold,
        windows,
        decay_measured,
        ap_evidence,
        verdict,
    })
}
