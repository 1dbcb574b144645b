use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use deglab::algebra::{CMonDIE, FiniteMonoid};
use deglab::doubly_degenerate::build_ddbicat;
use deglab::json::Document;
use serde_json::{json, Value};
use tempfile::TempDir;

fn deglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deglab")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn z2_with_generator() -> CMonDIE {
    CMonDIE::new(FiniteMonoid::cyclic(2), 1).unwrap()
}

#[test]
fn validate_built_bicategory_exits_zero() {
    let dir = TempDir::new().unwrap();
    let doc = Document::Ddbicat(build_ddbicat(&z2_with_generator()));
    let p = write(&dir, "b.json", &doc.to_canonical().unwrap());
    let out = deglab(&["validate", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], json!(true));
    assert_eq!(v["eckmann_hilton"], json!(true));
}

#[test]
fn shift_to_cmon_projects_the_die() {
    let dir = TempDir::new().unwrap();
    let doc = Document::Ddbicat(build_ddbicat(&z2_with_generator()));
    let p = write(&dir, "b.json", &doc.to_canonical().unwrap());
    let out = deglab(&["shift", "--to-cmon", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let expected = r#"{"die":1,"die_inv":1,"kind":"cmon_die","mul":[[0,1],[1,0]],"size":2,"unit":0}"#;
    assert_eq!(String::from_utf8(out.stdout).unwrap(), format!("{expected}\n"));
}

#[test]
fn axiom_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "m.json",
        r#"{"kind":"monoid","size":2,"unit":0,"mul":[[0,1],[1,1]]}"#,
    );
    assert_eq!(deglab(&["validate", s(&p)]).status.code(), Some(0));
    let p = write(
        &dir,
        "bad.json",
        r#"{"kind":"monoid","size":2,"unit":0,"mul":[[0,1],[0,1]]}"#,
    );
    let out = deglab(&["validate", s(&p)]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn schema_error_exits_two_and_names_the_key() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "m.json",
        r#"{"kind":"monoid","size":2,"unit":0,"mul":[[0,1],[1,-1]]}"#,
    );
    let out = deglab(&["validate", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mul[1][1]"));
    let p = write(&dir, "x.json", "not json");
    assert_eq!(deglab(&["validate", s(&p)]).status.code(), Some(2));
    assert_eq!(deglab(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn suite_thm_vdbe_reports_expected_failures() {
    let out = deglab(&["suite", "thm-vdbe", "--bound", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ξ₂ equivalence: pass"), "{text}");
    assert!(
        text.contains("ξ₁ faithful: FAIL, expected (witness attached)"),
        "{text}"
    );
    assert!(
        text.contains("ξ₃ locally faithful: FAIL, expected (witness attached)"),
        "{text}"
    );
}

#[test]
fn suite_json_records_bound_and_seed() {
    let out = deglab(&[
        "suite",
        "thm-vdb",
        "--bound",
        "3",
        "--seed",
        "11",
        "--tamperings",
        "40",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound"], json!(3));
    assert_eq!(v["seed"], json!(11));
    assert_eq!(v["passed"], json!(true));
}

#[test]
fn max_size_environment_caps_enumeration() {
    let out = Command::new(env!("CARGO_BIN_EXE_deglab"))
        .args(["enumerate", "monoids", "--bound", "3"])
        .env("DEGLAB_MAX_SIZE", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit 2"));
    // Trivial, (Z/2, e), (Z/2, g) and the two-element OR monoid with its unit.
    let out = deglab(&["enumerate", "cmon-dies", "--bound", "2", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 structures up to size 2\n");
}

#[test]
fn analyze_functor_derives_m0() {
    let dir = TempDir::new().unwrap();
    let z2 = r#"{"size":2,"unit":0,"mul":[[0,1],[1,0]],"die":1}"#;
    let doc = format!(r#"{{"kind":"dd_functor","source":{z2},"target":{z2},"map":[0,1],"m2":0,"m0":1}}"#);
    let p = write(&dir, "f.json", &doc);
    let out = deglab(&["analyze-functor", s(&p)]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["derived_m0"], json!(0));
    let p = write(&dir, "g.json", &doc.replace(r#""m0":1"#, r#""m0":0"#));
    let out = deglab(&["analyze-functor", "--lax", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["promoted"], json!({"map": [0, 1], "m2": 0, "m0": 0}));
}

#[test]
fn compare_respects_the_distinguished_element() {
    let dir = TempDir::new().unwrap();
    let d = |die: usize| format!(r#"{{"kind":"cmon_die","size":2,"unit":0,"mul":[[0,1],[1,0]],"die":{die}}}"#);
    let (e, g) = (write(&dir, "e.json", &d(0)), write(&dir, "g.json", &d(1)));
    assert_eq!(deglab(&["compare", s(&e), s(&g)]).status.code(), Some(1));
    assert_eq!(deglab(&["compare", s(&g), s(&g)]).status.code(), Some(0));
    let m = write(&dir, "m.json", r#"{"kind":"monoid","size":1,"unit":0,"mul":[[0]]}"#);
    assert_eq!(deglab(&["compare", s(&m), s(&g)]).status.code(), Some(2));
}
