//! Runs a parsed experiment, checks its embedded assertions and writes the report files.

use std::path::{Path, PathBuf};

use meroap::almost_period::scan_almost_periods;
use meroap::cohomology::{realizability_check, SeparationReport};
use meroap::report::Csv;
use meroap::zeros::{divisor_of, separation_distance, Rectangle};
use meroap::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::kronecker::{kronecker_table, table_csv, KroneckerRow};
use crate::verdict::{product_verdict, sum_verdict, APVerdict};

/// Relative tolerance when comparing against a stored golden table.
pub const GOLDEN_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Assertion { name: name.to_string(), passed, detail }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub report: Value,
    pub assertions: Vec<Assertion>,
    pub tables: Vec<(String, String)>,
}

impl ExperimentOutcome {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    /// Writes `<name>.json` and the CSV tables into `dir`, returning the paths.
    pub fn write(&self, dir: &Path, name: &str) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        let json_path = dir.join(format!("{name}.json"));
        std::fs::write(&json_path, serde_json::to_string_pretty(&self.report)? + "\n")?;
        paths.push(json_path);
        for (suffix, body) in &self.tables {
            let p = dir.join(format!("{name}{suffix}.csv"));
            std::fs::write(&p, body)?;
            paths.push(p);
        }
        Ok(paths)
    }
}

/// Runs the experiment; assertion failures are reported, not returned as errors.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let mut assertions = Vec::new();
    let mut tables = Vec::new();
    let result = match cfg.kind {
        ExperimentKind::Kronecker => {
            let rows = kronecker_table(&cfg.r_values)?;
            assertions.push(Assertion::new(
                "bound_holds",
                rows.iter().all(|r| r.bound_holds),
                "min_distance ≤ (1 + 1/√2)·δ in every row".into(),
            ));
            assertions.push(Assertion::new(
                "monotone",
                rows.windows(2).all(|w| w[1].min_distance <= w[0].min_distance),
                "min_distance nonincreasing in R".into(),
            ));
            if let Some(path) = &cfg.golden {
                assertions.push(compare_golden(&rows, path)?);
            }
            tables.push((String::new(), table_csv(&rows)));
            serde_json::to_value(&rows)?
        }
        ExperimentKind::Product | ExperimentKind::Sum => {
            let [f1, f2] = cfg.functions.as_slice() else {
                return Err(Error::ConfigParse("two functions expected".into()));
            };
            let v = if cfg.kind == ExperimentKind::Product {
                product_verdict(f1, f2, &cfg.params)?
            } else {
                sum_verdict(f1, f2, &cfg.params)?
            };
            verdict_assertions(cfg, &v, &mut assertions);
            tables.push(("_windows".into(), windows_csv(&v)));
            if let Some(scan) = &v.ap_evidence {
                tables.push(("_scan".into(), scan.to_csv()));
            }
            serde_json::to_value(&v)?
        }
        ExperimentKind::Scan => {
            let f = &cfg.functions[0];
            let s = &cfg.params.scan;
            let report = scan_almost_periods(f, &cfg.params.strip, s.epsilon, s.window, s.step, &s.grid)?;
            assertions.push(Assertion::new(
                "found_nonempty",
                !report.found.is_empty(),
                format!("{} almost periods found", report.found.len()),
            ));
            if let Some(bound) = cfg.expect.max_gap_at_most {
                assertions.push(Assertion::new(
                    "max_gap_at_most",
                    report.max_gap <= bound,
                    format!("max_gap {} vs bound {bound}", report.max_gap),
                ));
            }
            if let Some((want, tol)) = cfg.expect.max_gap {
                assertions.push(Assertion::new(
                    "max_gap",
                    (report.max_gap - want).abs() <= tol + 1e-9,
                    format!("max_gap {} vs {want} ± {tol}", report.max_gap),
                ));
            }
            if let Some(path) = &cfg.golden {
                assertions.push(compare_scan_golden(report.max_gap, report.step, path)?);
            }
            tables.push(("_scan".into(), report.to_csv()));
            serde_json::to_value(&report)?
        }
        ExperimentKind::Divisor => {
            let f = &cfg.functions[0];
            let rect = Rectangle::from_strip(cfg.window.0, cfg.window.1, &cfg.params.strip)?;
            let d = divisor_of(f, &rect, cfg.params.tol)?;
            let sep = separation_distance(&d, &cfg.params.strip);
            separation_assertion(cfg, sep, &mut assertions);
            tables.push(("_divisor".into(), d.to_csv()));
            json!({ "divisor": d, "separation": finite_or_null(sep) })
        }
        ExperimentKind::Cohomology => {
            let min_separation = match (&cfg.geometry, cfg.separation) {
                (_, Some(s)) => s,
                (Some(g), None) => {
                    let rect = Rectangle::from_strip(cfg.window.0, cfg.window.1, &cfg.params.strip)?;
                    separation_distance(&divisor_of(g, &rect, cfg.params.tol)?, &cfg.params.strip)
                }
                (None, None) => return Err(Error::ConfigParse("no geometry given".into())),
            };
            let geometry = SeparationReport { min_separation, threshold: cfg.params.threshold };
            let v = realizability_check(&cfg.plus, &cfg.minus, &geometry, &cfg.basis)?;
            if let Some(want) = cfg.expect.realizable {
                assertions.push(Assertion::new("realizable", v.realizable == want, format!("got {}", v.realizable)));
            }
            if let Some(want) = cfg.expect.class_equal {
                assertions.push(Assertion::new("class_equal", v.class_equal == want, format!("got {}", v.class_equal)));
            }
            separation_assertion(cfg, min_separation, &mut assertions);
            serde_json::to_value(&v)?
        }
    };
    let passed = assertions.iter().all(|a| a.passed);
    let report = json!({
        "name": cfg.name,
        "experiment": cfg.kind,
        "config": cfg.entries,
        "result": result,
        "assertions": assertions,
        "passed": passed,
    });
    Ok(ExperimentOutcome { report, assertions, tables })
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn separation_assertion(cfg: &ExperimentConfig, sep: f64, out: &mut Vec<Assertion>) {
    if let Some((want, tol)) = cfg.expect.separation {
        out.push(Assertion::new(
            "separation",
            (sep - want).abs() <= tol,
            format!("separation {sep} vs {want} ± {tol}"),
        ));
    }
}

fn verdict_assertions(cfg: &ExperimentConfig, v: &APVerdict, out: &mut Vec<Assertion>) {
    if let Some(want) = cfg.expect.verdict {
        out.push(Assertion::new("verdict", v.verdict == want, format!("got {}, expected {want}", v.verdict)));
    }
    separation_assertion(cfg, v.min_separation, out);
    if let Some(bound) = cfg.expect.max_gap_at_most {
        let gap = v.ap_evidence.as_ref().map_or(f64::INFINITY, |s| s.max_gap);
        out.push(Assertion::new("max_gap_at_most", gap <= bound, format!("max_gap {gap} vs bound {bound}")));
    }
}

fn windows_csv(v: &APVerdict) -> String {
    let mut csv = Csv::new(&["half_width", "separation", "zeros", "poles"]);
    for w in &v.windows {
        csv.row(&[w.half_width.to_string(), w.separation.to_string(), w.zeros.to_string(), w.poles.to_string()]);
    }
    csv.finish()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= GOLDEN_RTOL * a.abs().max(b.abs())
}

fn compare_golden(rows: &[KroneckerRow], path: &Path) -> Result<Assertion> {
    let text = std::fs::read_to_string(path)?;
    let golden: Vec<KroneckerRow> = serde_json::from_str(&text)?;
    let mismatch = if golden.len() != rows.len() {
        Some(format!("{} golden rows, {} computed", golden.len(), rows.len()))
    } else {
        rows.iter().zip(&golden).find_map(|(r, g)| {
            let same = r.r == g.r
                && (r.n, r.m) == (g.n, g.m)
                && close(r.min_distance, g.min_distance)
                && close(r.delta, g.delta)
                && close(r.bound, g.bound);
            (!same).then(|| format!("row R = {} differs", r.r))
        })
    };
    Ok(match mismatch {
        None => Assertion::new("golden", true, format!("matches {}", path.display())),
        Some(why) => Assertion::new("golden", false, why),
    })
}

/// The golden scan file stores `max_gap`; a match is within one scan step.
fn compare_scan_golden(max_gap: f64, step: f64, path: &Path) -> Result<Assertion> {
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let want = golden["max_gap"]
        .as_f64()
        .ok_or_else(|| Error::ConfigParse(format!("{}: no numeric `max_gap`", path.display())))?;
    Ok(Assertion::new(
        "golden",
        (max_gap - want).abs() <= step + 1e-9,
        format!("max_gap {max_gap} vs golden {want} ± {step}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> ExperimentConfig {
        ExperimentConfig::parse(text, "t", Path::new(".")).unwrap()
    }

    #[test]
    fn kronecker_runs() {
        let out = run_experiment(&cfg("experiment = kronecker\nr_values = 10,100\n")).unwrap();
        assert!(out.passed());
        assert_eq!(out.report["result"][1]["n"], 99);
    }

    #[test]
    fn failed_expectation_is_reported() {
        let out = run_experiment(&cfg(
            "experiment = product\nf1 = sin(pi*z)\nf2 = 1/sin(pi*z)\nwindows = 2,4,8\nexpect_verdict = NOT_AP\n",
        ))
        .unwrap();
        assert!(!out.passed());
        assert_eq!(out.report["passed"], false);
    }

    #[test]
    fn cohomology_runs() {
        let out = run_experiment(&cfg(
            "experiment = cohomology\nplus = lattice 1 sqrt2\nminus = zeros sin(pi*z)\nseparation = 1\nexpect_realizable = false\nexpect_class_equal = false\n",
        ))
        .unwrap();
        assert!(out.passed(), "{:?}", out.assertions);
    }
}
