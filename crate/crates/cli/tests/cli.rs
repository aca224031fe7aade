use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpairs"))
        .args(args)
        .env_remove("TPAIRS_WINDOW")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (out.status.code().expect("exit code"), v)
}

#[test]
fn hilbert_of_free_two_letters() {
    let (code, v) = report(&["hilbert", "--free-letters", "2", "--kmax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["coefficients"], serde_json::json!([2, 4, 8, 16, 32]));
}

#[test]
fn boolean_spectrum() {
    let (code, v) = report(&["spectrum", &fixture("boolean.pair")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["primes"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["krull_dimension"], 0);
}

#[test]
fn report_carries_input_digest() {
    let path = fixture("supertropical.pair");
    let (_, v) = report(&["verify", &path]);
    let want = format!("{:x}", Sha256::digest(std::fs::read(&path).unwrap()));
    assert_eq!(v["input"]["sha256"], Value::String(want));
    assert_eq!(v["status"], "holds");
}

#[test]
fn broken_semiring_fails_with_witness() {
    let (code, v) = report(&["verify", &data("broken.semiring")]);
    assert_eq!(code, 1);
    let checks = v["result"]["reports"][0]["checks"].as_array().unwrap();
    let failed: Vec<&Value> = checks.iter().filter(|c| !c["witness"].is_null()).collect();
    assert!(!failed.is_empty());
    let assoc = failed
        .iter()
        .find(|c| c["axiom"].as_str().unwrap().contains("associativ"))
        .expect("associativity fails");
    assert_eq!(assoc["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn malformed_table_is_an_input_error() {
    let out = run(&["verify", &data("wide.semiring")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 8"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    assert_eq!(run(&["shallow", "no-such-file.pair"]).status.code(), Some(2));
}

#[test]
fn unknown_subcommand_prints_usage() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn no_root_in_window_is_unknown() {
    let (code, v) = report(&["polyroots", "3"]);
    assert_eq!(code, 3);
    assert_eq!(v["window"], 12);
    let (code, v) = report(&["polyroots", "x^2 + 1*x + 4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["roots"], serde_json::json!([["2"]]));
}

#[test]
fn no_root_on_a_finite_pair_fails() {
    let (code, _) = report(&["polyroots", "1", "--file", &fixture("boolean.pair")]);
    assert_eq!(code, 1);
}

#[test]
fn window_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tpairs"))
        .args(["--json", "ore-witness", "1", "2"])
        .env("TPAIRS_WINDOW", "7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["window"], 7);
    assert_eq!(v["result"]["evaluated_in_a0"], true);
}

#[test]
fn krasner_quotient_of_f3() {
    let (code, v) = report(&["krasner", "Z3", "--subgroup", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cosets"], serde_json::json!(["[0]", "[1]"]));
}

#[test]
fn powerset_pairs_are_admissible() {
    for choice in ["contains_zero", "size_ge_two"] {
        let (code, v) = report(&["powerset", &fixture("krasner.hyper"), "--a0-choice", choice]);
        assert_eq!(code, 0, "{choice}");
        assert_eq!(v["status"], "holds");
    }
    assert_eq!(run(&["powerset", &fixture("krasner.hyper"), "--a0-choice", "neither"]).status.code(), Some(2));
}

#[test]
fn radical_of_doubled_diagonal() {
    let (code, v) = report(&["radical", &fixture("doubled-boolean.pair")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["matches_prime_intersection"], true);
    assert!(!v["result"]["inadmissible_twist_powers"].as_array().unwrap().is_empty());
}

#[test]
fn growth_flags_are_exclusive() {
    assert_eq!(run(&["growth", "--free-letters", "2", "--vars", "1"]).status.code(), Some(2));
    assert_eq!(run(&["gk", "--free-letters", "2", "--unital"]).status.code(), Some(2));
}

#[test]
fn output_is_reproducible() {
    let args = ["--json", "congruences", &fixture("doubled-boolean.pair")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end());
}

#[test]
fn every_subcommand_runs_on_shipped_fixtures() {
    let st = fixture("supertropical.pair");
    let cases: Vec<Vec<&str>> = vec![
        vec!["shallow", &st],
        vec!["property-n", &st],
        vec!["krull", &st],
        vec!["classify-element", &st, "av"],
        vec!["localize", "3/2", "6/4"],
        vec!["growth", "--vars", "2", "--kmax", "4"],
        vec!["gk", "--matrix", "2"],
    ];
    for args in cases {
        let (code, v) = report(&args);
        assert_eq!(code, 0, "{args:?}: {v}");
    }
}
