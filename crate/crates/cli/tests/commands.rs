use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_banach-mp");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--report", "json"]);
    let out = run(&all);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn write(dir: &Path, name: &str, rows: usize, cols: usize, entries: &[f64]) -> PathBuf {
    let pairs: Vec<[f64; 2]> = entries.iter().map(|&x| [x, 0.0]).collect();
    let body = serde_json::json!({ "rows": rows, "cols": cols, "entries": pairs });
    let path = dir.join(name);
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

fn real(v: &Value) -> Vec<f64> {
    v["entries"].as_array().unwrap().iter().map(|e| e[0].as_f64().unwrap()).collect()
}

struct Fixture {
    _dir: TempDir,
    t: PathBuf,
    s: PathBuf,
    id: PathBuf,
    d: PathBuf,
    ones: PathBuf,
    nil: PathBuf,
}

fn fixture() -> Fixture {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    Fixture {
        t: write(p, "t.json", 2, 2, &[0.5, -0.5, -0.5, 0.5]),
        s: write(p, "s.json", 2, 2, &[1.0, -1.0, 0.0, 0.0]),
        id: write(p, "id.json", 3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
        d: write(p, "d.json", 2, 2, &[1.0, 0.0, 0.0, 0.0]),
        ones: write(p, "ones.json", 2, 2, &[0.5, 0.5, 0.5, 0.5]),
        nil: write(p, "nil.json", 2, 2, &[0.0, 1.0, 0.0, 0.0]),
        _dir: dir,
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_half_projector_euclidean() {
    let f = fixture();
    let (code, v) = json(&["classify", s(&f.t), "--norm", "l2"]);
    assert_eq!(code, 0);
    assert_eq!(v["hermitian"]["hermitian_idempotent"], true);
    assert_eq!(v["moore_penrose"]["exists"], true);
    let inv = real(&v["moore_penrose"]["inverse"]);
    for (x, y) in inv.iter().zip([0.5, -0.5, -0.5, 0.5]) {
        assert!((x - y).abs() < 1e-12);
    }
    assert_eq!(v["ep"]["is_ep"], true);
    assert!(v["ep"]["witness_p"].is_object() && v["ep"]["witness_q"].is_object());
}

#[test]
fn classify_shear_l1_has_no_inverse() {
    let f = fixture();
    let (code, v) = json(&["classify", s(&f.s), "--norm", "l1"]);
    assert_eq!(code, 0);
    assert_eq!(v["moore_penrose"]["exists"], false);
    assert_eq!(v["moore_penrose"]["failure"], "NullspaceNotRepresentable");
    assert!(v["ep"].is_null());
}

#[test]
fn classify_identity() {
    let f = fixture();
    for norm in ["l1", "l2", "linf"] {
        let (code, v) = json(&["classify", s(&f.id), "--norm", norm]);
        assert_eq!(code, 0);
        assert_eq!(v["hermitian"]["is_hermitian"], true);
        assert_eq!(real(&v["moore_penrose"]["inverse"]), vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(v["ep"]["is_ep"], true);
        assert_eq!(v["norm"], norm);
    }
}

#[test]
fn classify_echoes_tolerance() {
    let f = fixture();
    let (_, v) = json(&["classify", s(&f.id), "--tol", "1e-6"]);
    assert_eq!(v["tolerance"]["herm_tol"], 1e-6);
    assert_eq!(v["tolerance"]["zero_abs_tol"], 1e-7);
}

#[test]
fn product_examples() {
    let f = fixture();
    let (code, v) = json(&["product", s(&f.d), s(&f.d)]);
    assert_eq!(code, 0);
    assert!(v["flags"].as_object().unwrap().values().all(|x| x == true), "{v}");

    let (code, v) = json(&["product", s(&f.d), s(&f.ones)]);
    assert_eq!(code, 0);
    assert_eq!(v["flags"]["product_ep"], false);
    assert_eq!(v["flags"]["hyp_range"], false);
}

#[test]
fn product_names_the_non_ep_input() {
    let f = fixture();
    let out = run(&["product", s(&f.nil), s(&f.d)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("S is not EP"));
    let out = run(&["product", s(&f.d), s(&f.nil)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("T is not EP"));
}

#[test]
fn product_without_inverse_for_a_factor_is_a_precondition_failure() {
    let f = fixture();
    let out = run(&["product", s(&f.t), s(&f.d), "--norm", "l1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("S:"));
}

#[test]
fn parse_failures_exit_2() {
    let f = fixture();
    let dir = f._dir.path();
    let cases = [
        ("short.json", r#"{"rows":2,"cols":2,"entries":[[1,0]]}"#),
        ("inf.json", r#"{"rows":1,"cols":1,"entries":[[1e999,0]]}"#),
        ("extra.json", r#"{"rows":1,"cols":1,"entries":[[1,0]],"norm":"l2"}"#),
        ("triple.json", r#"{"rows":1,"cols":1,"entries":[[1,0,0]]}"#),
        ("junk.json", "rows: 1"),
    ];
    for (name, body) in cases {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        assert_eq!(run(&["classify", s(&path)]).status.code(), Some(2), "{name}");
    }
    assert_eq!(run(&["classify", s(&dir.join("missing.json"))]).status.code(), Some(2));
    assert_eq!(run(&["classify", s(&f.id), "--norm", "l3"]).status.code(), Some(2));
    assert_eq!(run(&["classify", s(&f.id), "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["classify", s(&f.id), "--tol", "nan"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "--size", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn non_square_classify_is_a_precondition_failure() {
    let f = fixture();
    let path = write(f._dir.path(), "wide.json", 1, 2, &[1.0, 2.0]);
    assert_eq!(run(&["classify", s(&path)]).status.code(), Some(4));
}

#[test]
fn suite_passes_at_the_documented_settings() {
    let (code, v) = json(&["suite", "--seed", "42", "--instances", "100", "--norm", "l2", "--size", "4"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["seed"], 42);
    assert!(v["properties"].as_array().unwrap().len() >= 10);
}

#[test]
fn suite_passes_for_coordinate_norms() {
    for norm in ["l1", "linf"] {
        let (code, v) = json(&["suite", "--instances", "30", "--norm", norm, "--size", "3"]);
        assert_eq!(code, 0, "{v}");
    }
}

#[test]
fn empty_suite_passes_with_a_warning() {
    let out = run(&["suite", "--instances", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let (_, v) = json(&["suite", "--instances", "0"]);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn loose_tolerance_is_flagged() {
    let (code, v) = json(&["suite", "--instances", "3", "--tol", "1e-1"]);
    assert_eq!(code, 3);
    assert_eq!(v["tolerance_flagged"], true);
}

#[test]
fn examples_gallery_matches() {
    let (code, v) = json(&["examples"]);
    assert_eq!(code, 0);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    assert!(entries.iter().all(|e| e["matches"] == true));
    assert!(entries.iter().all(|e| !e["witnesses"].as_array().unwrap().is_empty()));
}

#[test]
fn examples_reject_norm_override() {
    assert_eq!(run(&["examples", "--norm", "l1"]).status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    let f = fixture();
    let runs: [&[&str]; 5] = [
        &["examples"],
        &["examples", "--report", "json"],
        &["suite", "--instances", "20", "--seed", "5", "--report", "json"],
        &["classify", s(&f.t), "--report", "json"],
        &["product", s(&f.d), s(&f.ones)],
    ];
    for args in runs {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
