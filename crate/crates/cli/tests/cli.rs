use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .env_remove("CASIMIR_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn read_report(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).expect("report written")).expect("valid JSON")
}

#[test]
fn flatness_passes_with_seed_7() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("flat.json");
    let o = casimir(&["--suite", "flatness", "--n", "2", "--m", "2", "--seed", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_report(&out);
    assert_eq!(r["pass"], Value::Bool(true));
    assert_eq!(r["config"]["seed"], 7);
    assert_eq!(r["config"]["n"], 2);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    let checks = r["suites"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "flatness" && c["residual"] == "0"));
    assert!(checks.iter().all(|c| c["anchor"].as_str().is_some_and(|a| !a.is_empty())));
}

#[test]
fn negative_control_fails() {
    let o = casimir(&["--suite", "flatness", "--n", "2", "--m", "2", "--seed", "7", "--negative-control", "--out", "-"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["pass"], Value::Bool(false));
    assert_eq!(r["config"]["negative_control"], Value::Bool(true));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(casimir(&["--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(casimir(&["--suite", "qkz", "--negative-control"]).status.code(), Some(2));
    assert_eq!(casimir(&["--suite", "qkz", "--m", "3", "--a", "1,2"]).status.code(), Some(2));
    assert_eq!(casimir(&["--suite", "qkz", "--kappa-step", "0"]).status.code(), Some(2));
    assert_eq!(casimir(&["--suite", "roots", "--type", "E8"]).status.code(), Some(2));
    assert_eq!(casimir(&["--suite", "tits", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn unresolvable_monodromy_exits_3() {
    let o = casimir(&["--suite", "monodromy", "--lambda", "0.1", "--out", "-"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
}

#[test]
fn exact_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["qkz", "tits"] {
        let paths: Vec<_> = (0..2).map(|k| dir.path().join(format!("{suite}{k}.json"))).collect();
        for p in &paths {
            let o = casimir(&["--suite", suite, "--seed", "11", "--no-timings", "--out", p.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0));
        }
        assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
    }
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(["--suite", "tits"])
        .env("CASIMIR_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r = read_report(&dir.path().join("casimir-tits.json"));
    assert_eq!(r["suites"][0]["suite"], "tits");
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1, "temporary file left behind");
}

#[test]
fn all_contains_every_suite() {
    let o = casimir(&["--out", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = r["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["roots", "relations", "flatness", "yangian", "qkz", "daha", "monodromy", "tits"]);
    let mono = &r["suites"][6]["monodromy"];
    assert_eq!(mono.as_array().unwrap().len(), 3);
    assert_eq!(mono[0]["matrix"].as_array().unwrap().len(), 81);
}
