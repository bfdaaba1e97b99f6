use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn knotwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotwalk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("knotwalk-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn trefoil_invariants_json() {
    let o = knotwalk(&["invariants", "--braid", "1 1 1", "--n", "2", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["display"]["rho1"], "-T^-2 + 2*T^-1 - 2 + 2*T - T^2");
    assert_eq!(v["display"]["delta1"], "-2 - z^2");
}

#[test]
fn negative_letters_parse() {
    let o = knotwalk(&["invariants", "--braid", "1 -2 1 -2", "--n", "3", "--greens"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("alexander     -T^-1 + 3 - T"), "{s}");
    assert!(s.contains("greens        agrees"));
}

#[test]
fn full_twist_power_matches_word() {
    let a = knotwalk(&["burau", "--full-twist", "3", "--power", "2", "--json"]);
    let b = knotwalk(&["burau", "--braid", "1 2 1 2 1 2 1 2 1 2 1 2", "--n", "3", "--json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn family_growth_rate() {
    let o = knotwalk(&["family", "--file", &corpus("t2family.json"), "--growth-rate"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "growth rate      -1/(1 + T)^2");
}

#[test]
fn emitted_json_reads_back() {
    let o = knotwalk(&["family", "--builtin", "T(2,2t+1)", "--diagram-at", "2"]);
    assert!(o.status.success());
    let p = temp_file("diagram.json", &stdout(&o));
    let a = knotwalk(&["invariants", "--file", p.to_str().unwrap()]);
    let b = knotwalk(&["invariants", "--knot", "T(2,5)"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));

    let o = knotwalk(&["invariants", "--knot", "4_1", "--emit-diagram"]);
    let p = temp_file("fig8.json", &stdout(&o));
    let again = knotwalk(&["invariants", "--file", p.to_str().unwrap(), "--emit-diagram"]);
    assert_eq!(stdout(&o), stdout(&again));
}

#[test]
fn output_is_deterministic() {
    let args = ["family", "--file", &corpus("t3family.json"), "--report", "--t-max", "2", "--json"];
    assert_eq!(stdout(&knotwalk(&args)), stdout(&knotwalk(&args)));
}

#[test]
fn exit_codes() {
    assert_eq!(knotwalk(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(knotwalk(&["invariants", "--braid", "1 1 1", "--bogus"]).status.code(), Some(2));
    assert_eq!(knotwalk(&["invariants", "--diagram", "{not json"]).status.code(), Some(2));
    assert_eq!(knotwalk(&["invariants", "--braid", "1 1", "--n", "2"]).status.code(), Some(1));
    assert_eq!(knotwalk(&["verify", "--only", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn verify_only_filters() {
    let o = knotwalk(&["verify", "--only", "cartier-foata", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["id"], "cartier-foata");
}

#[test]
fn injected_wrong_golden_fails() {
    let goldens = r#"{"rho1": {"T(2,3)": {"terms": [[0, 1, 1]]}}}"#;
    let p = temp_file("goldens.json", goldens);
    let o = knotwalk(&["verify", "--only", "golden-rho1", "--goldens", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let s = stdout(&o);
    assert!(s.contains("FAIL golden-rho1"), "{s}");
    assert!(s.contains("T(2,3): -T^-2"), "{s}");
}

#[test]
fn full_verify_passes() {
    let o = knotwalk(&["verify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("13 checks, 0 failed"));
}
