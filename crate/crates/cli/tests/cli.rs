use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nielsen")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn toy_pair(extra: &[&str]) -> Vec<String> {
    let mut v: Vec<String> =
        ["--group", &data("toy.group"), "--tuple-a", "x, y", "--tuple-b", "x^2, y"].iter().map(|s| s.to_string()).collect();
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn with<'a>(head: &[&'a str], tail: &'a [String]) -> Vec<&'a str> {
    head.iter().copied().chain(tail.iter().map(String::as_str)).collect()
}

#[test]
fn census_of_three_fibers() {
    let r = json(&run(&["vertical-census", "--sfs", "g=0,e=-1,fibers=5/2,7/2,9/2"]));
    assert_eq!(r["choices"].as_array().unwrap().len(), 3);
    assert_eq!(r["version"], 1);
}

#[test]
fn spin_compare_toy_with_quotient_file() {
    let q = data("toy_z5xz5.quotient");
    let tail = toy_pair(&["--quotient", &q]);
    let r = json(&run(&with(&["spin-compare"], &tail)));
    let text = r["summary"].to_string();
    assert!(text.contains("labeled: NotIsotopic"), "{text}");
    assert!(text.contains("unlabeled: NotIsotopic"), "{text}");
}

#[test]
fn missing_quotient_file_is_inconclusive_with_note() {
    let tail = toy_pair(&["--quotient", "nowhere/none.quotient"]);
    let r = json(&run(&with(&["spin-compare"], &tail)));
    assert!(r["summary"].to_string().contains("labeled: Inconclusive"));
    assert!(r["notes"].to_string().contains("no such quotient file"));
}

#[test]
fn quotient_violating_a_relator_exits_3() {
    let q = data("bad.quotient");
    let tail = toy_pair(&["--quotient", &q]);
    let out = run(&with(&["spin-compare"], &tail));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x^5"));
}

#[test]
fn domain_errors_exit_2() {
    assert_eq!(run(&["vertical-census", "--sfs", "fibers=banana"]).status.code(), Some(2));
    let tail = toy_pair(&["--sectors", "1,2,3"]);
    assert_eq!(run(&with(&["stab-robustness"], &tail)).status.code(), Some(2));
}

#[test]
fn census_over_budget_exits_4() {
    let out = run(&["orbit", "--group", "s5", "--census", "5"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn orbit_census_counts() {
    let r = json(&run(&["orbit", "--group", "z5", "--census", "1"]));
    assert!(r["summary"].to_string().contains("2 Nielsen classes"));
    let r = json(&run(&["orbit", "--group", &data("s3.perms"), "--census", "2", "--verify"]));
    assert!(r["summary"].to_string().contains("(agree)"));
}

#[test]
fn robustness_is_deterministic_and_spares_sector_3() {
    let q = ["--quotient", "z5xz5", "--len", "20", "--seed", "9"];
    let tail = toy_pair(&q);
    let a = run(&with(&["stab-robustness"], &tail));
    let b = run(&with(&["stab-robustness"], &tail));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["invariant"], true);
}

#[test]
fn spine_connect_finds_five_moves_and_writes_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = run(&["spine-connect", "--to", &data("slid.spine"), "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["moves"].as_array().unwrap().len(), 5);
    assert_eq!(r["replays"], true);
}
