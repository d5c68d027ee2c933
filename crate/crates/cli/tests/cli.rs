use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

const S: &str = r#"{"name":"S","points":2,"opens":[[],[1],[0,1]]}"#;

fn topolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topolab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_echoes_canonical_space() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"name":"S","points":2,"opens":[[0,1],[1],[]]}"#,
    );
    let out = topolab(&["space", "validate", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["space"], serde_json::from_str::<Value>(S).unwrap());
    assert_eq!(v["separation"]["t0"], json!(true));
}

#[test]
fn invalid_space_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.json",
        r#"{"points":2,"opens":[[],[0],[1]]}"#,
    );
    let out = topolab(&["space", "validate", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn enumerate_counts() {
    let out = topolab(&["space", "enum", "--points", "3"]);
    assert_eq!(stdout_json(&out)["count"], json!(29));
    let out = topolab(&["space", "enum", "--points", "3", "--classes"]);
    assert_eq!(stdout_json(&out)["count"], json!(9));
}

#[test]
fn maps_of_sierpinski() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.json", S);
    let out = topolab(&["maps", "enum", "--y", s(&f), "--z", s(&f)]);
    assert_eq!(stdout_json(&out)["maps"], json!([[0, 0], [0, 1], [1, 1]]));
}

#[test]
fn build_check_and_dual_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.json", S);
    let t = dir.path().join("t.json");
    let out = topolab(&[
        "topo",
        "build",
        "--kind",
        "co",
        "--y",
        s(&f),
        "--z",
        s(&f),
        "--out",
        s(&t),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let built: Value = serde_json::from_str(&fs::read_to_string(&t).unwrap()).unwrap();
    assert_eq!(built["opens"], json!([[], [2], [1, 2], [0, 1, 2]]));

    let out = topolab(&["check", "admissible", "--topology", s(&t)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["status"], json!("holds"));

    let d = dir.path().join("d.json");
    let out = topolab(&["dual", "tau-of-t", "--topology", s(&t), "--out", s(&d)]);
    assert_eq!(out.status.code(), Some(0));
    let out = topolab(&[
        "dual",
        "t-of-tau",
        "--dual",
        s(&d),
        "--y",
        s(&f),
        "--z",
        s(&f),
    ]);
    assert_eq!(stdout_json(&out)["opens"].as_array().unwrap().len(), 6);
}

#[test]
fn indiscrete_topology_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(
        dir.path(),
        "t.json",
        &json!({
            "y": serde_json::from_str::<Value>(S).unwrap(),
            "z": serde_json::from_str::<Value>(S).unwrap(),
            "maps": [[0, 0], [0, 1], [1, 1]],
            "opens": [[], [0, 1, 2]],
            "provenance": "custom",
        })
        .to_string(),
    );
    let out = topolab(&["check", "admissible", "--topology", s(&t)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout_json(&out)["witnesses"][0]["evaluation"]["w"],
        json!([1])
    );
}

#[test]
fn discrete_topology_refuted_as_splitting() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(
        dir.path(),
        "t.json",
        &json!({
            "y": serde_json::from_str::<Value>(S).unwrap(),
            "z": serde_json::from_str::<Value>(S).unwrap(),
            "maps": [[0, 0], [0, 1], [1, 1]],
            "opens": [[], [0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]],
            "provenance": "custom",
        })
        .to_string(),
    );
    let out = topolab(&["check", "splitting", "--topology", s(&t), "--max-x", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["status"], json!("fails"));
}

#[test]
fn mismatched_maps_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(
        dir.path(),
        "t.json",
        &json!({
            "y": serde_json::from_str::<Value>(S).unwrap(),
            "z": serde_json::from_str::<Value>(S).unwrap(),
            "maps": [[0, 1], [0, 0], [1, 1]],
            "opens": [[], [0, 1, 2]],
            "provenance": "custom",
        })
        .to_string(),
    );
    let out = topolab(&["check", "admissible", "--topology", s(&t)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compose_reports_hypotheses() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.json", S);
    let out = topolab(&[
        "check",
        "compose",
        "--x",
        s(&f),
        "--y",
        s(&f),
        "--z",
        s(&f),
        "--kinds",
        "co,coZ,coZ",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], json!("holds"));
    assert_eq!(v["details"]["hypotheses"]["locally_z_compact"], json!(true));
    let out = topolab(&[
        "check",
        "compose",
        "--x",
        s(&f),
        "--y",
        s(&f),
        "--z",
        s(&f),
        "--kinds",
        "co,co",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn theorem_suite_small_bounds() {
    let out = topolab(&["check", "theorems", "--max-y", "2", "--max-z", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] != json!("fails")));
}

#[test]
fn hyperspace_kinds_need_z_only_when_relative() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.json", S);
    let out = topolab(&["topo", "build", "--kind", "scott", "--y", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["kind"], json!("scott"));
    let out = topolab(&["topo", "build", "--kind", "zscott", "--y", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    let out = topolab(&[
        "topo",
        "build",
        "--kind",
        "nope",
        "--y",
        s(&f),
        "--z",
        s(&f),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn question_registry_and_probes() {
    let out = topolab(&["search", "list"]);
    let list = stdout_json(&out);
    assert_eq!(list.as_array().unwrap().len(), 14);
    let out = topolab(&["search", "question", "--id", "q11"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["conclusion"], json!("out_of_scope"));
    let out = topolab(&[
        "search", "question", "--id", "q3.1", "--max-y", "2", "--max-z", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["conclusion"], json!("no_finite_witness"));
    let out = topolab(&["search", "question", "--id", "q13"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sequential_flag_gives_identical_output() {
    let a = topolab(&[
        "search", "question", "--id", "q8", "--max-y", "2", "--max-z", "2",
    ]);
    let b = topolab(&[
        "--sequential",
        "search",
        "question",
        "--id",
        "q8",
        "--max-y",
        "2",
        "--max-z",
        "2",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_arguments_are_usage_errors() {
    let out = topolab(&["check", "admissible"]);
    assert_eq!(out.status.code(), Some(2));
}
