use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcc")).args(args).output().unwrap()
}

fn spec_file(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn gen_a0() {
    let d = tempfile::tempdir().unwrap();
    let p = spec_file(&d, "a.json", r#"{"blocks": [2], "F": [[[0, 1], [0]]]}"#);
    let out = fcc(&["gen-a0", "--spec", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["a0"], "u1*u2");
    let out = fcc(&["--format", "text", "gen-a0", "--spec", p.to_str().unwrap()]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "u1*u2\n");

    let p = spec_file(&d, "b.json", r#"{"blocks": [1, 1], "F": [[[2]], [["1/2"]]]}"#);
    let out = fcc(&["gen-a0", "--spec", p.to_str().unwrap()]);
    assert_eq!(json(&out)["a0"], "5/2");
}

#[test]
fn input_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    let bad = spec_file(&d, "bad.json", r#"{"blocks": [2"#);
    let out = fcc(&["gen-a0", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let shape = spec_file(&d, "shape.json", r#"{"blocks": [2], "F": [[[1]]]}"#);
    assert_eq!(fcc(&["gen-a0", "--spec", shape.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(fcc(&["gen-a0", "--spec", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(fcc(&["check"]).status.code(), Some(2));
    assert_eq!(fcc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(fcc(&["--format", "yaml", "verify-paper"]).status.code(), Some(2));
    assert_eq!(fcc(&["verify-paper", "--case", "5"]).status.code(), Some(2));
    let lin = spec_file(&d, "lin.json", r#"{"blocks": [2], "epsilon": [1]}"#);
    assert_eq!(fcc(&["check", "--spec", lin.to_str().unwrap(), "--metric"]).status.code(), Some(2));
}

#[test]
fn check_random_family_passes() {
    let d = tempfile::tempdir().unwrap();
    let p = spec_file(&d, "c.json", r#"{"blocks": [3], "F": [[[1, -2, "1/3"], [0, 4], [2, 0, -1]]]}"#);
    let out = fcc(&["check", "--spec", p.to_str().unwrap(), "--master", "--connection", "--curvature"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["cond_3RC"], true);
    assert_eq!(v["flat"], false);
}

#[test]
fn check_raw_a0_fails_master() {
    let d = tempfile::tempdir().unwrap();
    let p = spec_file(&d, "m.json", r#"{"blocks": [2], "a0": "u2^2"}"#);
    let out = fcc(&["check", "--spec", p.to_str().unwrap(), "--master"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["master"]["residuals"]["1,2"], "2*u2");
}

#[test]
fn check_linear_curvature_and_dual() {
    let d = tempfile::tempdir().unwrap();
    let p = spec_file(&d, "l.json", r#"{"blocks": [2, 1], "epsilon": [1, 1]}"#);
    let out = fcc(&["check", "--spec", p.to_str().unwrap(), "--curvature", "--dual"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["flat"], true);
    assert_eq!(v["dual_flat"], true);
    assert_eq!(v["dual"]["label"], "conjecture verification");
}

#[test]
fn check_hierarchy_uses_spec_depth() {
    let d = tempfile::tempdir().unwrap();
    let p = spec_file(&d, "h.json", r#"{"blocks": [2, 1], "F": [[[0, 1], [1]], [[0, 0, 1]]], "depth": 3}"#);
    let out = fcc(&["check", "--spec", p.to_str().unwrap(), "--hierarchy"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hierarchy"]["depth"], 3);
    assert_eq!(v["hierarchy"]["a"].as_array().unwrap().len(), 4);
    assert_eq!(v["hierarchy"]["independence"]["equal"], true);
    let out = fcc(&["check", "--spec", p.to_str().unwrap(), "--hierarchy", "1"]);
    assert_eq!(json(&out)["hierarchy"]["depth"], 1);
}

#[test]
fn check_metric() {
    let d = tempfile::tempdir().unwrap();
    let ok = spec_file(
        &d,
        "g.json",
        r#"{"blocks": [2], "epsilon": [-1], "constants": ["C1"], "functions": {"F1": "u2"}, "metric": [["F1", "C1*u2"], ["C1*u2", "0"]]}"#,
    );
    let out = fcc(&["check", "--spec", ok.to_str().unwrap(), "--metric", "--connection"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["metric"]["bridge"], true);
    let id = spec_file(&d, "i.json", r#"{"blocks": [2], "epsilon": [-1], "metric": [["1", "0"], ["0", "1"]]}"#);
    let out = fcc(&["check", "--spec", id.to_str().unwrap(), "--metric"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["metric"]["bridge"], false);
}

#[test]
fn output_file_and_determinism() {
    let d = tempfile::tempdir().unwrap();
    let p = spec_file(&d, "c.json", r#"{"blocks": [2, 2], "F": [[[0, 1], [1, 1]], [[2], [0, 0, 1]]]}"#);
    let o1 = d.path().join("r1.json");
    let o2 = d.path().join("r2.json");
    for o in [&o1, &o2] {
        let out = fcc(&["check", "--spec", p.to_str().unwrap(), "--connection", "--dual", "--output", o.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&o1).unwrap();
    assert_eq!(a, std::fs::read(&o2).unwrap());
    // keys come out sorted
    let text = String::from_utf8(a).unwrap();
    let top: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
}

#[test]
fn text_format_flattens() {
    let d = tempfile::tempdir().unwrap();
    let p = spec_file(&d, "l.json", r#"{"blocks": [2], "epsilon": [1, 1]}"#);
    let out = fcc(&["--format", "text", "check", "--spec", p.to_str().unwrap(), "--connection"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "torsionless: true"));
    assert!(text.lines().any(|l| l == "connection.gamma.2,2,2: -1/u2"));
}

#[test]
fn verify_paper() {
    let out = fcc(&["verify-paper", "--case", "2", "--case", "22"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 2);
    assert_eq!(v["cases"][0]["id"], "2");
    assert_eq!(v["cases"][0]["chr"]["matched"], 2);

    let out = fcc(&["--format", "text", "verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("7/7 cases pass\n"));
    assert_eq!(text.lines().filter(|l| l.ends_with("PASS")).count(), 7);
}
