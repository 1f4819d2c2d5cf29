use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn meroap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meroap")).args(args).output().expect("binary runs")
}

fn config(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn bundled_kronecker_config_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = meroap(&["run", &config("kronecker.cfg"), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS golden"));
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("kronecker.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["result"][2]["n"], 577);
    let csv = std::fs::read_to_string(dir.path().join("kronecker.csv")).unwrap();
    assert!(csv.starts_with("R,min_distance,n,m,delta,bound,bound_holds\n"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn bundled_product_ap_config_gives_ap() {
    let out = meroap(&["run", &config("product_ap.cfg")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS verdict: got AP"), "{text}");
}

#[test]
fn every_bundled_config_passes() {
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "cfg") {
            let out = meroap(&["run", path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{}: {}", path.display(), String::from_utf8_lossy(&out.stdout));
        }
    }
}

#[test]
fn malformed_config_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("unknown_key.cfg", "experiment = kronecker\ncolour = blue\n"),
        ("no_equals.cfg", "experiment kronecker\n"),
        ("bad_function.cfg", "experiment = scan\nf = sin(pi*\n"),
        ("duplicate.cfg", "experiment = kronecker\nexperiment = kronecker\n"),
    ] {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let out = meroap(&["run", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("config"), "{name}");
    }
}

#[test]
fn failed_assertion_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wrong.cfg");
    std::fs::write(&path, "experiment = product\nf1 = sin(pi*z)\nf2 = 1/(2+sin(pi*z))\nexpect_verdict = NOT_AP\n")
        .unwrap();
    let out = meroap(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL verdict"));
}

#[test]
fn zeros_subcommand_lists_integers() {
    let v = stdout_json(&meroap(&["zeros", "--g", "sin(pi*z)", "--window", "-2.5,2.5", "--strip", "-1,1"]));
    let re: Vec<f64> = v["points"].as_array().unwrap().iter().map(|p| p[0].as_f64().unwrap()).collect();
    assert_eq!(re.len(), 5);
    for (x, k) in re.iter().zip(-2..=2) {
        assert!((x - k as f64).abs() < 1e-9);
    }
    let out = meroap(&["zeros", "--g", "1/sin(pi*z)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn divisor_subcommand_reports_separation() {
    let v = stdout_json(&meroap(&["divisor", "--f", "sin(pi*z)/(2+sin(pi*z))", "--window", "-3,3"]));
    assert!((v["separation"].as_f64().unwrap() - 0.65248).abs() < 1e-4);
    let points = v["divisor"]["points"].as_array().unwrap();
    assert!(points.iter().any(|p| p[2] == -1) && points.iter().any(|p| p[2] == 1));
}

#[test]
fn scan_subcommand_finds_period_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = meroap(&[
        "scan-ap",
        "--f",
        "sin(pi*z)",
        "--window",
        "0,10",
        "--eps",
        "0.05",
        "--step",
        "0.05",
        "--grid",
        "0.1,0.1,0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("scan.json")).unwrap()).unwrap();
    assert!(v["max_gap"].as_f64().unwrap() <= 2.05 + 1e-9);
    assert!(std::fs::read_to_string(dir.path().join("scan.csv")).unwrap().starts_with("tau,sup_diff\n"));
}

#[test]
fn verdict_subcommands() {
    let v = stdout_json(&meroap(&["product-verdict", "--f1", "sin(sqrt2*pi*z)", "--f2", "1/sin(pi*z)"]));
    assert_eq!(v["verdict"], "NOT_AP");
    assert_eq!(v["decay_measured"], true);
    assert_eq!(v["windows"].as_array().unwrap().len(), 3);
    let swapped = stdout_json(&meroap(&["product-verdict", "--f1", "1/sin(pi*z)", "--f2", "sin(sqrt2*pi*z)"]));
    assert_eq!(swapped["verdict"], v["verdict"]);
    assert_eq!(swapped["windows"], v["windows"]);
    let s = stdout_json(&meroap(&["sum-verdict", "--f1", "sin(pi*z)", "--f2", "cos(pi*z)", "--windows", "5,10,25"]));
    assert_eq!(s["verdict"], "AP");
}

#[test]
fn kronecker_and_cohomology_subcommands() {
    let rows = stdout_json(&meroap(&["kronecker-demo", "--r", "10,100"]));
    assert_eq!(rows[1]["m"], 70);
    let c = stdout_json(&meroap(&["cohomology", "--lambda", "2", "--mu", "3"]));
    assert_eq!(c["class"], "0");
    let c = stdout_json(&meroap(&["cohomology", "--lambda", "1", "--mu", "sqrt2"]));
    assert_eq!(c["is_zero"], false);
    let v = stdout_json(&meroap(&[
        "cohomology",
        "--plus",
        "lattice 1 sqrt2",
        "--minus",
        "zeros sin(pi*z)",
        "--separation",
        "1",
    ]));
    assert_eq!(v["realizable"], false);
    assert_eq!(v["class_equal"], false);
}
