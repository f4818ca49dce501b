use std::fs;
use std::process::{Command, Output};

fn superinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superinv")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn sl11_relations_verify_as_json() {
    let out = superinv(&["plucker", "--group", "sl11", "--p", "2", "--q", "2", "--mode", "symbolic", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    let rels = doc["relations"].as_array().unwrap();
    assert!(!rels.is_empty());
    assert!(rels.iter().all(|r| r["certificate"]["verified"] == true));
}

#[test]
fn super_jacobi_verifies() {
    let out = superinv(&["jacobi", "--mode", "super", "--p", "2", "--q", "2", "--r", "1", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verified"));
}

#[test]
fn classical_jacobi_verifies() {
    let out = superinv(&["jacobi", "--mode", "classical", "--p", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sp1_is_in_the_ideal() {
    let out = superinv(&["sft11", "normal-form", "--expr", "X[1|1]*Xs[1|1]-1", "--p", "2", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("in ideal: true"));
}

#[test]
fn standard_generator_is_not_in_the_ideal() {
    let out = superinv(&["sft11", "normal-form", "--expr", "X[1|1]", "--p", "2", "--q", "2", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["in_ideal"], false);
    assert_eq!(doc["normal_form"], "X[1|1]");
}

#[test]
fn syntax_errors_exit_with_two() {
    let out = superinv(&["sft11", "normal-form", "--expr", "X[1|1]*(", "--p", "2", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = superinv(&["sft11", "normal-form", "--expr", "X[5|1]", "--p", "2", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_cap_exits_with_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_superinv"))
        .args(["plucker", "--group", "sl11", "--p", "2", "--q", "2"])
        .env("SUPERINV_TERM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = superinv(&[
            "plucker", "--group", "classical", "--r", "2", "--p", "4", "--emit", "json", "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let first = fs::read(&a).unwrap();
    assert_eq!(first, fs::read(&b).unwrap());
    let doc: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(doc["relations"].as_array().unwrap().len(), 1);
}

#[test]
fn numeric_mode_is_deterministic() {
    let args = ["plucker", "--group", "sl11", "--p", "2", "--q", "2", "--mode", "numeric", "--seed", "9", "--emit", "json"];
    assert_eq!(superinv(&args).stdout, superinv(&args).stdout);
}

#[test]
fn latex_uses_hatted_indices() {
    let out = superinv(&["plucker", "--group", "sl11", "--p", "1", "--q", "1", "--emit", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\\hat"), "{}", stdout(&out));
}

#[test]
fn berezinian_and_cramer_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("system.txt");
    fs::write(&path, "# 1|1 system\nmatrix 1|1\nrow x[1,1] | al[1,1]\nrow be[1,1] | y[1,1]\nrhs x[1,2] | al[1,2]\n").unwrap();
    let file = path.to_str().unwrap();
    let ber = superinv(&["ber", "--file", file]);
    assert_eq!(ber.status.code(), Some(0));
    assert!(!stdout(&ber).trim().is_empty());
    let cramer = superinv(&["cramer", "--file", file]);
    assert_eq!(cramer.status.code(), Some(0));
    assert!(stdout(&cramer).contains("substitution check: verified"));
}

#[test]
fn unknown_generator_in_a_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "matrix 1|1\nrow x[1,1] | al[1,1]\nrow be[1,1] | zz\n").unwrap();
    let out = superinv(&["ber", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3:15"));
}

#[test]
fn fft_entries_check_out() {
    let out = superinv(&["fft", "--r", "1", "--s", "1", "--p", "2", "--q", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("MISMATCH"));
}

#[test]
fn selftest_runs_a_subset() {
    let out = superinv(&["selftest", "--only", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.contains("PASS")).count(), 2);
}
