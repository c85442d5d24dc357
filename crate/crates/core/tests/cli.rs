use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn affinoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affinoid"))
        .args(args)
        .env_remove("AFFINOID_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn export(name: &str, dir: &Path) -> String {
    let path = dir.join(format!("{}.json", name.replace('/', "_")));
    let p = path.to_str().unwrap().to_string();
    let o = affinoid(&["catalog", "export", name, "--out", &p]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn suite_on_pair2_passes() {
    let o = affinoid(&[
        "check",
        "--suite",
        "paper",
        "--groupoid",
        "catalog:pair2",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["schema"], "affinoid-report/1");
    assert_eq!(r["seed"], 7);
    assert_eq!(r["failed"], 0);
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.len() > 100);
    assert!(checks
        .iter()
        .all(|c| c["cite"].is_string() && c["mode"] == "exact" && c["seed"] == 7));
}

#[test]
fn failing_field_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let bad = export("abelian1/x2dx", dir.path());
    let o = affinoid(&["check", "--predicate", "affine-mv", "--field", &bad]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(r["failed"], 1);
    let w = &r["checks"][0]["witness"];
    assert!(w["label"].is_string());
    assert!(!String::from_utf8_lossy(&o.stderr).is_empty());
}

#[test]
fn accepting_field_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let good = export("abelian1/linear+constant", dir.path());
    for pred in ["affine-mv", "oracle-parallelograms"] {
        let o = affinoid(&["check", "--predicate", pred, "--field", &good]);
        assert_eq!(code(&o), 0, "{pred}");
    }
    let o = affinoid(&["check", "--predicate", "multiplicative-mv", "--field", &good]);
    assert_eq!(code(&o), 1);
}

#[test]
fn truncated_json_exits_two_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trunc.json");
    std::fs::write(&path, "{\"kind\": \"mv\", \"dim\": 2, \"coeffs\": [").unwrap();
    let o = affinoid(&[
        "check",
        "--predicate",
        "affine-mv",
        "--groupoid",
        "catalog:pair1",
        "--field",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("field"));
}

#[test]
fn bad_groupoid_file_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let gp = export("pair1", dir.path());
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&gp).unwrap()).unwrap();
    v["src"] = serde_json::json!(["x1", "x2"]);
    std::fs::write(&gp, v.to_string()).unwrap();
    let o = affinoid(&["check", "--suite", "groupoid", "--groupoid", &gp]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("src"));
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    assert_eq!(code(&affinoid(&["frobnicate"])), 2);
    assert_eq!(code(&affinoid(&["check", "--mode", "fuzzy"])), 2);
    assert_eq!(code(&affinoid(&["check", "--suite", "nonsense"])), 2);
    assert_eq!(code(&affinoid(&["--help"])), 0);
    assert_eq!(code(&affinoid(&["--version"])), 0);
}

#[test]
fn seed_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_affinoid"))
        .args(["check", "--suite", "groupoid", "--groupoid", "catalog:abelian1"])
        .env("AFFINOID_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["seed"], 11);
}

#[test]
fn decompose_bracket_and_compose() {
    let dir = tempfile::tempdir().unwrap();
    let f = export("pair2/mv1/mixed", dir.path());
    let o = affinoid(&["decompose", "--field", &f]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    for part in ["right", "left", "base"] {
        assert!(r["result"][part].is_object(), "{part}");
    }
    let g = export("pair2/mv1/right", dir.path());
    let o = affinoid(&["bracket", "--field", &f, "--field", &g]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(json(&o)["result"]["bracket"].is_object());
    // Composing with the unit at the source gives the arrow back.
    let unit = dir.path().join("unit.json");
    std::fs::write(&unit, r["result"]["right"].to_string()).unwrap();
    let o = affinoid(&[
        "compose",
        "--groupoid",
        "catalog:pair2",
        "--field",
        &f,
        "--field",
        unit.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(json(&o)["result"]["composite"]["coeffs"], original["coeffs"]);
}

#[test]
fn sampled_mode_is_recorded() {
    let o = affinoid(&[
        "check",
        "--suite",
        "groupoid",
        "--groupoid",
        "catalog:pair1",
        "--mode",
        "sampled",
        "--samples",
        "5",
    ]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["mode"] == "sampled"));
}

#[test]
fn report_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = affinoid(&[
        "check",
        "--suite",
        "groupoid",
        "--groupoid",
        "catalog:pair1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["suite"], "groupoid");
}
