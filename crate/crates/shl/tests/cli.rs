use std::path::Path;
use std::process::{Command, Output};
use std::sync::OnceLock;

use shl::format::{self, Input};

/// A cache shared by the tests in this file, so the n = 3 calibration is
/// built once.
fn cache_dir() -> &'static Path {
    static DIR: OnceLock<tempfile::TempDir> = OnceLock::new();
    DIR.get_or_init(|| tempfile::tempdir().unwrap()).path()
}

fn shl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shl"))
        .args(args)
        .env("SHL_CACHE_DIR", cache_dir())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn pure_example_at_the_origin() {
    let o = shl(&["classify-frame", "--example", "r12-pure-x3", "--point", "origin", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["type"], "X3");
    assert_eq!(v["report"]["n"], 3);
}

#[test]
fn verify_all_passes() {
    let o = shl(&["verify", "--all"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(!out.contains("FAIL"), "{out}");
    for key in shl::registry::keys() {
        assert!(out.contains(&format!("registry {key}:")), "{key} not exercised");
    }
}

#[test]
fn alpha_quaternionification_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("sympl2d.json");
    let out = dir.path().join("quat.json");
    let o = shl(&["export", "--example", "affine-line-group", "--output", base.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = shl(&[
        "quaternionify",
        "--mode",
        "alpha",
        "--input",
        base.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let Input::CoFrame(cf) = format::parse_input(&text).unwrap() else {
        panic!("quaternionify must emit a coframe");
    };
    assert_eq!(cf.dim(), 8);
    assert_eq!(format::emit_coframe(&cf), text);

    let o = shl(&["classify-frame", "--input", out.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["type"], "X17");
    assert_eq!(v["report"]["flags"]["symplectic"], true);
}

#[test]
fn report_file_matches_stdout_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["classify-homogeneous", "--example", "lie-triangular-x35", "--json"];
    let a = stdout(&shl(&args));
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let o = shl(&with_file);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
}

#[test]
fn tensors_lists_torsion_and_curvature() {
    let o = shl(&["tensors", "--example", "lie-triangular-x35", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["torsion"]["entries"].as_array().unwrap().is_empty());
    assert!(v["curvature"].is_object());
    let o = shl(&["tensors", "--example", "r8-x1567", "--point", "0,0,0,1,1,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("r8-x1567\ntorsion"));
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        &["classify-frame", "--example", "no-such-example"][..],
        &["classify-frame", "--example", "r8-x1567", "--point", "1,2"],
        &["classify-frame", "--example", "r8-x1567", "--point", "a,b,c,d,e,f,g,h"],
        &["classify-frame", "--example", "r8-x1567", "--input", "x.json"],
        &["classify-frame"],
        &["classify-frame", "--example", "lie-triangular-x35"],
        &["classify-homogeneous", "--example", "r8-x1567"],
        &["classify-frame", "--input", "/nonexistent/file.json"],
        &["quaternionify", "--mode", "beta", "--example", "affine-line-group"],
        &["classify-frame", "--example", "r8-conformal-x47", "--point", "origin"],
    ] {
        let o = shl(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn schema_errors_carry_a_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"format": "shl-coframe", "kind": "skew_hermitian", "dim": 2, "forms": [["1", "0"], ["0"]]}"#,
    )
    .unwrap();
    let o = shl(&["classify-frame", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/forms/1"));
}

#[test]
fn exact_mode_refuses_inexact_points() {
    // the conformal coefficients are exact at rational points
    let o = shl(&["classify-frame", "--example", "r8-conformal-x47", "--exact", "--point", "2,0,0,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn help_exits_zero() {
    assert_eq!(shl(&["--help"]).status.code(), Some(0));
    assert_eq!(shl(&["list"]).status.code(), Some(0));
}
