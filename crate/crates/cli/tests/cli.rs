use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monogenic")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).expect("golden file")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn verify_passes_at_n3() {
    let out = run(&["verify", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["suite"], "verify");
    assert_eq!(v["exit_status"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 20);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    let keys: Vec<&str> = checks[0].as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["name", "status", "value", "expected", "source"] {
        assert!(keys.contains(&k), "missing {k}");
    }
}

#[test]
fn perturbed_spin_constant_fails() {
    let out = run(&["verify", "--n", "3", "--perturb", "sigma-const"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let rep = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "σ is a representation of so(n)").unwrap();
    assert_eq!(rep["status"], "fail");
}

#[test]
fn verify_n1_is_vacuous() {
    let out = run(&["verify", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_matches_golden_and_is_deterministic() {
    let a = run(&["verify", "--n", "2"]);
    let b = run(&["verify", "--n", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), golden("verify_n2.json"));
}

#[test]
fn weight_values() {
    let out = run(&["weight", "--symbol", "trace", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["weight"], "-4/1");

    let out = run(&["weight", "--symbol", "clifford", "--n", "4"]);
    assert_eq!(stdout(&out), golden("weight_clifford_n4.json"));
    let v = json(&out);
    assert_eq!(v["operator"], "E[-3/2] -> E[-5/2]");

    for (sym, n, w) in [("skew", "3", "-1/1"), ("sym0", "4", "1/1"), ("rarita", "3", "-1/1"), ("rarita-j", "3", "-1/1")] {
        let out = run(&["weight", "--symbol", sym, "--n", n]);
        assert_eq!(out.status.code(), Some(0), "{sym}");
        assert_eq!(json(&out)["weight"], w, "{sym}");
    }
}

#[test]
fn float_weight() {
    let out = run(&["weight", "--symbol", "clifford", "--n", "5", "--mode", "float", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let w: f64 = json(&out)["weight"].as_str().unwrap().parse().unwrap();
    assert!((w + 2.0).abs() < 1e-9);
}

#[test]
fn hodge_has_no_weight() {
    let out = run(&["weight", "--symbol", "hodge", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no conformal weight exists"));
    let v = json(&out);
    assert!(v["weight"].is_null());
    assert_eq!(v["residual"], "48/1");
}

#[test]
fn gamma_n4() {
    let out = run(&["gamma", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["gammas"].as_array().unwrap().len(), 4);
    assert_eq!(v["spinor_dim"], 4);
    assert_eq!(v["multiplicity"], 4);
    assert_eq!(v["phi"].as_array().unwrap().len(), 16);
}

#[test]
fn rarita_reports() {
    let out = run(&["rarita", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim_f"], 16);
    assert_eq!(v["weight"]["weight"], "-1/1");

    let out = run(&["rarita", "--n", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("rarita_n2.csv"));
    assert!(stderr(&out).contains("not determined"));
}

#[test]
fn grid_cauchy_order() {
    let out = run(&["grid", "--n", "3", "--test", "cauchy", "--h", "0.1,0.05"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let order = v["results"][0]["rows"][1]["order"].as_f64().unwrap();
    assert!((1.9..2.2).contains(&order), "{order}");
}

#[test]
fn grid_invariance_weights() {
    let out = run(&["grid", "--n", "3", "--test", "dirac-invariance", "--w", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    for r in json(&out)["results"].as_array().unwrap() {
        assert!(r["residual"].as_f64().unwrap() < 1e-12);
    }
    let out = run(&["grid", "--n", "3", "--test", "dirac-invariance", "--w", "1/2", "--omega", "sphere"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"][0];
    assert!(r["residual"].as_f64().unwrap() > 1.0);
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hodge.csv");
    let out = run(&["grid", "--test", "hodge-noninvariance", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega,best_weight,residual,normalized"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"n": 5, "format": "csv"}"#).unwrap();
    let out = run(&["weight", "--symbol", "trace", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("trace,5,-4/1"));
    let out = run(&["weight", "--symbol", "trace", "--config", cfg.to_str().unwrap(), "--n", "3", "--format", "json"]);
    assert_eq!(json(&out)["weight"], "-2/1");
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["frobnicate"],
        vec!["weight", "--symbol", "nope"],
        vec!["verify", "--tol", "1e-6"],
        vec!["verify", "--n", "9"],
        vec!["verify", "--perturb", "other"],
        vec!["rarita", "--n", "6"],
        vec!["grid", "--test", "cauchy", "--n", "5"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(64), "{args:?}: {}", stderr(&out));
    }
}
