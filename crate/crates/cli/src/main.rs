use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use meroap::almost_period::scan_almost_periods;
use meroap::cohomology::{realizability_check, ExponentBasis, SeparationReport};
use meroap::divisor::LatticeDivisorSpec;
use meroap::expr::parse_function;
use meroap::zeros::{divisor_of, locate_zeros, separation_distance, Rectangle};
use meroap::{GridSpec, MeromorphicAP, Strip};
use meroap_cli::config::{components, number_list, pair};
use meroap_cli::kronecker::table_csv;
use meroap_cli::verdict::{ScanParams, VerdictParams};
use meroap_cli::{kronecker_table, product_verdict, run_experiment, sum_verdict, ExperimentConfig};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "meroap", version, about = "Meromorphic almost periodic functions: scans, zeros, divisors, verdicts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Closed strip `a,b` for `a ≤ Im z ≤ b`.
    #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
    strip: String,
    /// Real window `x0,x1`.
    #[arg(long, default_value = "-10,10", allow_hyphen_values = true)]
    window: String,
    /// Directory for the JSON report and CSV tables.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ScanArgs {
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.02)]
    step: f64,
    /// Grid `real_step,imag_step,margin`.
    #[arg(long, default_value = "0.1,0.1,0.05")]
    grid: String,
    /// Real span sampled by the grid, `x0,x1`.
    #[arg(long, default_value = "0,4", allow_hyphen_values = true)]
    span: String,
}

#[derive(Subcommand)]
enum Command {
    /// Scan shifts in `--window` for ε-almost periods of a function.
    ScanAp {
        #[arg(long)]
        f: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Locate zeros of an exponential sum in `--window × --strip`.
    Zeros {
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Divisor of a quotient in `--window × --strip`, with its zero–pole separation.
    Divisor {
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Closest zero–pole pairs of sin(√2πz)/sin(πz) against the convergent bound.
    KroneckerDemo {
        #[arg(long, default_value = "10,100,500")]
        r: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verdict on whether f1·f2 is a meromorphic a.p. function.
    ProductVerdict(VerdictArgs),
    /// Verdict on whether f1 + f2 is a meromorphic a.p. function.
    SumVerdict(VerdictArgs),
    /// Wedge class of a lattice divisor, or a realizability verdict with `--plus`/`--minus`.
    Cohomology {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Basis `1=1, sqrt2=1.41421356237...`.
        #[arg(long)]
        basis: Option<String>,
        /// Components of d⁺: `lattice <λ> <μ>; zeros <label>`.
        #[arg(long)]
        plus: Option<String>,
        #[arg(long)]
        minus: Option<String>,
        /// Measured zero–pole separation for the verdict.
        #[arg(long)]
        separation: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        threshold: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a key = value experiment file; exit code 0 iff all its assertions pass.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct VerdictArgs {
    #[arg(long)]
    f1: String,
    #[arg(long)]
    f2: String,
    #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
    strip: String,
    /// Half-widths R of the windows |Re z| ≤ R.
    #[arg(long, default_value = "25,100,400")]
    windows: String,
    #[arg(long, default_value_t = 0.01)]
    threshold: f64,
    /// Shift window of the confirming scan.
    #[arg(long, default_value = "0,10", allow_hyphen_values = true)]
    scan_window: String,
    #[command(flatten)]
    scan: ScanArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn function(src: &str) -> Result<MeromorphicAP> {
    parse_function(src, Strip::plane()).with_context(|| format!("cannot parse `{src}`"))
}

fn strip(s: &str) -> Result<Strip> {
    let (a, b) = pair("strip", s)?;
    Ok(Strip::new(a, b)?)
}

fn grid(scan: &ScanArgs) -> Result<GridSpec> {
    let span = pair("span", &scan.span)?;
    match number_list("grid", &scan.grid)?.as_slice() {
        [rs, is, margin] => Ok(GridSpec::new(*rs, *is, *margin, span)?),
        _ => bail!("--grid needs real_step,imag_step,margin"),
    }
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>, name: &str, tables: &[(&str, String)]) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(format!("{name}.json")), text + "\n")?;
            for (suffix, body) in tables {
                std::fs::write(dir.join(format!("{name}{suffix}.csv")), body)?;
            }
            eprintln!("wrote {}", dir.join(format!("{name}.json")).display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn verdict_params(a: &VerdictArgs) -> Result<VerdictParams> {
    let defaults = VerdictParams::default();
    Ok(VerdictParams {
        strip: strip(&a.strip)?,
        windows: number_list("windows", &a.windows)?,
        threshold: a.threshold,
        tol: defaults.tol,
        scan: ScanParams {
            epsilon: a.scan.eps,
            window: pair("scan_window", &a.scan_window)?,
            step: a.scan.step,
            grid: grid(&a.scan)?,
        },
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::ScanAp { f, common, scan } => {
            let report = scan_almost_periods(
                &function(&f)?,
                &strip(&common.strip)?,
                scan.eps,
                pair("window", &common.window)?,
                scan.step,
                &grid(&scan)?,
            )?;
            eprintln!("found {} shifts, max_gap {}", report.found.len(), report.max_gap);
            emit(&report, common.out.as_deref(), "scan", &[("", report.to_csv())])?;
        }
        Command::Zeros { g, tol, common } => {
            let f = function(&g)?;
            if f.denominator().terms().len() != 1 || f.denominator().terms()[0].frequency != 0.0 {
                bail!("`zeros` takes an exponential sum, not a quotient");
            }
            let (x0, x1) = pair("window", &common.window)?;
            let roots = locate_zeros(f.numerator(), &Rectangle::from_strip(x0, x1, &strip(&common.strip)?)?, tol)?;
            emit(&roots, common.out.as_deref(), "zeros", &[("", roots.to_csv())])?;
        }
        Command::Divisor { f, tol, common } => {
            let (x0, x1) = pair("window", &common.window)?;
            let s = strip(&common.strip)?;
            let d = divisor_of(&function(&f)?, &Rectangle::from_strip(x0, x1, &s)?, tol)?;
            let sep = separation_distance(&d, &s);
            let value = serde_json::json!({
                "divisor": d,
                "separation": if sep.is_finite() { serde_json::json!(sep) } else { serde_json::Value::Null },
            });
            emit(&value, common.out.as_deref(), "divisor", &[("", d.to_csv())])?;
        }
        Command::KroneckerDemo { r, out } => {
            let rows = kronecker_table(&number_list("r", &r)?)?;
            let csv = table_csv(&rows);
            if out.is_none() {
                eprint!("{csv}");
            }
            emit(&rows, out.as_deref(), "kronecker", &[("", csv)])?;
        }
        Command::ProductVerdict(a) => {
            let v = product_verdict(&function(&a.f1)?, &function(&a.f2)?, &verdict_params(&a)?)?;
            eprintln!("verdict: {}", v.verdict);
            emit(&v, a.out.as_deref(), "product_verdict", &[])?;
        }
        Command::SumVerdict(a) => {
            let v = sum_verdict(&function(&a.f1)?, &function(&a.f2)?, &verdict_params(&a)?)?;
            eprintln!("verdict: {}", v.verdict);
            emit(&v, a.out.as_deref(), "sum_verdict", &[])?;
        }
        Command::Cohomology { lambda, mu, basis, plus, minus, separation, threshold, out } => {
            let basis = match basis {
                Some(b) => ExponentBasis::parse(&b)?,
                None => ExponentBasis::standard(),
            };
            if let (Some(l), Some(m)) = (&lambda, &mu) {
                let spec = LatticeDivisorSpec::parse(l, m, &basis)?;
                let class = meroap::cohomology::lattice_class(&spec)?;
                let value = serde_json::json!({
                    "basis": basis.declaration(),
                    "lambda": l,
                    "mu": m,
                    "class": class.format_with(&basis),
                    "is_zero": class.is_zero(),
                });
                emit(&value, out.as_deref(), "cohomology", &[])?;
            } else if plus.is_some() || minus.is_some() {
                let plus = components("plus", plus.as_deref().unwrap_or(""), &basis)?;
                let minus = components("minus", minus.as_deref().unwrap_or(""), &basis)?;
                let geometry = SeparationReport { min_separation: separation.unwrap_or(f64::INFINITY), threshold };
                let v = realizability_check(&plus, &minus, &geometry, &basis)?;
                emit(&v, out.as_deref(), "realizability", &[])?;
            } else {
                bail!("give --lambda and --mu, or --plus/--minus");
            }
        }
        Command::Run { config, out } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            let outcome = run_experiment(&cfg)?;
            for a in &outcome.assertions {
                println!("{} {}: {}", if a.passed { "PASS" } else { "FAIL" }, a.name, a.detail);
            }
            if let Some(dir) = out.or_else(|| cfg.out.clone()) {
                for p in outcome.write(&dir, &cfg.name)? {
                    eprintln!("wrote {}", p.display());
                }
            } else {
                println!("{}", serde_json::to_string_pretty(&outcome.report)?);
            }
            return Ok(if outcome.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
