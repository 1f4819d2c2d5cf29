//! `key = value` experiment files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use meroap::cohomology::{ComponentSpec, ExponentBasis};
use meroap::divisor::LatticeDivisorSpec;
use meroap::expr::parse_function;
use meroap::{Error, GridSpec, MeromorphicAP, Result, Strip};
use serde::Serialize;

use crate::verdict::{ScanParams, Verdict, VerdictParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Kronecker,
    Product,
    Sum,
    Scan,
    Divisor,
    Cohomology,
}

/// Checks run after an experiment; each becomes a pass/fail line in the report.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Expectations {
    pub verdict: Option<Verdict>,
    pub separation: Option<(f64, f64)>,
    pub max_gap_at_most: Option<f64>,
    pub max_gap: Option<(f64, f64)>,
    pub realizable: Option<bool>,
    pub class_equal: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub name: String,
    pub kind: ExperimentKind,
    pub functions: Vec<MeromorphicAP>,
    pub params: VerdictParams,
    /// `[x0, x1]` for divisor and cohomology geometry.
    pub window: (f64, f64),
    pub r_values: Vec<f64>,
    pub golden: Option<PathBuf>,
    pub basis: ExponentBasis,
    pub plus: Vec<ComponentSpec>,
    pub minus: Vec<ComponentSpec>,
    /// Geometry for the cohomology verdict: a fixed value or a function whose divisor is measured.
    pub separation: Option<f64>,
    pub geometry: Option<MeromorphicAP>,
    pub expect: Expectations,
    pub out: Option<PathBuf>,
    /// The raw entries, echoed into the report.
    pub entries: BTreeMap<String, String>,
}

const KEYS: &[&str] = &[
    "experiment",
    "name",
    "f",
    "f1",
    "f2",
    "strip",
    "windows",
    "threshold",
    "tol",
    "eps",
    "step",
    "scan_window",
    "grid",
    "grid_span",
    "window",
    "r_values",
    "golden",
    "basis",
    "plus",
    "minus",
    "separation",
    "geometry",
    "out",
    "expect_verdict",
    "expect_separation",
    "expect_separation_tol",
    "expect_max_gap_at_most",
    "expect_max_gap",
    "expect_max_gap_tol",
    "expect_realizable",
    "expect_class_equal",
];

fn bad(msg: impl Into<String>) -> Error {
    Error::ConfigParse(msg.into())
}

/// Splits the text into entries; `#` starts a comment.
pub fn parse_entries(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| bad(format!("line {}: expected key = value", no + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(bad(format!("line {}: unknown key `{k}`", no + 1)));
        }
        if v.is_empty() {
            return Err(bad(format!("line {}: `{k}` has no value", no + 1)));
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(bad(format!("line {}: duplicate key `{k}`", no + 1)));
        }
    }
    Ok(map)
}

fn number(key: &str, v: &str) -> Result<f64> {
    let x: f64 = v.trim().parse().map_err(|_| bad(format!("`{key}`: `{v}` is not a number")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad(format!("`{key}` must be finite")))
    }
}

fn positive(key: &str, v: &str) -> Result<f64> {
    let x = number(key, v)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(bad(format!("`{key}` must be positive")))
    }
}

pub fn number_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| number(key, s)).collect()
}

pub fn pair(key: &str, v: &str) -> Result<(f64, f64)> {
    match number_list(key, v)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(bad(format!("`{key}` needs two comma-separated numbers"))),
    }
}

fn boolean(key: &str, v: &str) -> Result<bool> {
    v.parse().map_err(|_| bad(format!("`{key}` must be true or false")))
}

fn function(key: &str, v: &str) -> Result<MeromorphicAP> {
    parse_function(v, Strip::plane()).map_err(|e| bad(format!("`{key}`: {e}")))
}

/// `lattice <λ> <μ>`, `zeros <label>` or `unclassified <label>`, separated by `;`.
pub fn components(key: &str, v: &str, basis: &ExponentBasis) -> Result<Vec<ComponentSpec>> {
    v.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (kind, rest) = item.split_once(char::is_whitespace).unwrap_or((item, ""));
            let rest = rest.trim();
            match kind {
                "lattice" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [l, m] = parts.as_slice() else {
                        return Err(bad(format!("`{key}`: lattice needs two exponents, got `{rest}`")));
                    };
                    LatticeDivisorSpec::parse(l, m, basis)
                        .map(ComponentSpec::Lattice)
                        .map_err(|e| bad(format!("`{key}`: {e}")))
                }
                "zeros" if !rest.is_empty() => Ok(ComponentSpec::ExponentialSumZeros { label: rest.to_string() }),
                "unclassified" if !rest.is_empty() => Ok(ComponentSpec::Unclassified { label: rest.to_string() }),
                _ => Err(bad(format!("`{key}`: cannot read component `{item}`"))),
            }
        })
        .collect()
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("experiment");
        Self::parse(&text, stem, path.parent().unwrap_or(Path::new(".")))
    }

    /// Parses and validates; relative paths resolve against `base`.
    pub fn parse(text: &str, default_name: &str, base: &Path) -> Result<Self> {
        let e = parse_entries(text)?;
        let get = |k: &str| e.get(k).map(String::as_str);
        let kind = match get("experiment") {
            Some("kronecker") => ExperimentKind::Kronecker,
            Some("product") => ExperimentKind::Product,
            Some("sum") => ExperimentKind::Sum,
            Some("scan") => ExperimentKind::Scan,
            Some("divisor") => ExperimentKind::Divisor,
            Some("cohomology") => ExperimentKind::Cohomology,
            Some(other) => return Err(bad(format!("unknown experiment `{other}`"))),
            None => return Err(bad("missing `experiment`")),
        };
        let functions = match kind {
            ExperimentKind::Product | ExperimentKind::Sum => {
                let f1 = get("f1").ok_or_else(|| bad("missing `f1`"))?;
                let f2 = get("f2").ok_or_else(|| bad("missing `f2`"))?;
                vec![function("f1", f1)?, function("f2", f2)?]
            }
            ExperimentKind::Scan | ExperimentKind::Divisor => {
                vec![function("f", get("f").ok_or_else(|| bad("missing `f`"))?)?]
            }
            _ => Vec::new(),
        };

        let mut params = VerdictParams::default();
        if let Some(v) = get("strip") {
            let (a, b) = pair("strip", v)?;
            params.strip = Strip::new(a, b).map_err(|e| bad(format!("`strip`: {e}")))?;
        }
        if let Some(v) = get("windows") {
            params.windows = number_list("windows", v)?;
            if params.windows.iter().any(|w| *w <= 0.0) || params.windows.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("`windows` must be positive and increasing"));
            }
        }
        if let Some(v) = get("threshold") {
            params.threshold = positive("threshold", v)?;
        }
        if let Some(v) = get("tol") {
            params.tol = positive("tol", v)?;
        }
        let mut scan: ScanParams = params.scan;
        if let Some(v) = get("eps") {
            scan.epsilon = positive("eps", v)?;
        }
        if let Some(v) = get("step") {
            scan.step = positive("step", v)?;
        }
        if let Some(v) = get("scan_window") {
            scan.window = pair("scan_window", v)?;
        }
        let mut grid = scan.grid;
        if let Some(v) = get("grid") {
            match number_list("grid", v)?.as_slice() {
                [rs, is, margin] => {
                    grid = GridSpec::new(*rs, *is, *margin, grid.re_span).map_err(|e| bad(format!("`grid`: {e}")))?
                }
                _ => return Err(bad("`grid` needs real_step,imag_step,margin")),
            }
        }
        if let Some(v) = get("grid_span") {
            let span = pair("grid_span", v)?;
            grid = GridSpec::new(grid.real_step, grid.imag_step, grid.margin, span)
                .map_err(|e| bad(format!("`grid_span`: {e}")))?;
        }
        scan.grid = grid;
        params.scan = scan;

        let window = match get("window") {
            Some(v) => pair("window", v)?,
            None => (-10.0, 10.0),
        };
        if window.0 >= window.1 {
            return Err(bad("`window` must be increasing"));
        }
        let r_values = match get("r_values") {
            Some(v) => number_list("r_values", v)?,
            None => vec![10.0, 100.0, 500.0],
        };
        if kind == ExperimentKind::Kronecker && r_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("`r_values` must be increasing"));
        }
        let basis = match get("basis") {
            Some(v) => ExponentBasis::parse(v).map_err(|e| bad(format!("`basis`: {e}")))?,
            None => ExponentBasis::standard(),
        };
        let plus = get("plus").map(|v| components("plus", v, &basis)).transpose()?.unwrap_or_default();
        let minus = get("minus").map(|v| components("minus", v, &basis)).transpose()?.unwrap_or_default();
        let separation = get("separation").map(|v| number("separation", v)).transpose()?;
        let geometry = get("geometry").map(|v| function("geometry", v)).transpose()?;
        if kind == ExperimentKind::Cohomology && separation.is_none() && geometry.is_none() {
            return Err(bad("cohomology needs `separation` or `geometry`"));
        }

        let expect = Expectations {
            verdict: get("expect_verdict")
                .map(|v| v.parse::<Verdict>().map_err(|e| bad(format!("`expect_verdict`: {e}"))))
                .transpose()?,
            separation: match get("expect_separation") {
                Some(v) => Some((
                    number("expect_separation", v)?,
                    get("expect_separation_tol").map_or(Ok(1e-3), |t| positive("expect_separation_tol", t))?,
                )),
                None => None,
            },
            max_gap_at_most: get("expect_max_gap_at_most")
                .map(|v| positive("expect_max_gap_at_most", v))
                .transpose()?,
            max_gap: match get("expect_max_gap") {
                Some(v) => Some((
                    number("expect_max_gap", v)?,
                    get("expect_max_gap_tol").map_or(Ok(scan.step), |t| positive("expect_max_gap_tol", t))?,
                )),
                None => None,
            },
            realizable: get("expect_realizable").map(|v| boolean("expect_realizable", v)).transpose()?,
            class_equal: get("expect_class_equal").map(|v| boolean("expect_class_equal", v)).transpose()?,
        };

        Ok(ExperimentConfig {
            name: get("name").unwrap_or(default_name).to_string(),
            kind,
            functions,
            params,
            window,
            r_values,
            golden: get("golden").map(|p| base.join(p)),
            basis,
            plus,
            minus,
            separation,
            geometry,
            expect,
            out: get("out").map(|p| base.join(p)),
            entries: e,
        })
    }
}
