use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_str().unwrap().to_string()
}

fn quasi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasi")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn g7_has_a_seven_edge_cycle() {
    let out = quasi(&["hamilton", "--input", &data("g7.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sequence"].as_array().unwrap().len(), 7);
    assert_eq!(v["verified"], true);
}

#[test]
fn f1_is_rejected() {
    let out = quasi(&["find-quasitree", "--input", &data("f1.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("min_cut_size"));
}

#[test]
fn f2_with_its_quasigraph() {
    let out = quasi(&["check", "--input", &data("f2.json"), "--quasigraph", &data("pi2.json"), "--partition", &data("p123.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["quasigraph"]["quasitree"], true);
    assert_eq!(v["quasigraph"]["tight"], true);
}

#[test]
fn oracle_counts_f2_quasitrees() {
    let v = json(&quasi(&["oracle", "quasitrees", "--input", &data("f2.json")]));
    assert_eq!(v["count"], 12);
}

#[test]
fn trace_ends_with_the_result() {
    let out = quasi(&["find-quasitree", "--input", &data("f2.json"), "--trace"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["event"], "result");
}

#[test]
fn exit_codes() {
    assert_eq!(quasi(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(quasi(&["check", "--input", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(quasi(&["find-quasitree", "--input", &data("f2.json"), "--max-iters", "1"]).status.code(), Some(2));
    assert_eq!(quasi(&["gen", "--kind", "graph", "--n", "4", "--format", "dot"]).status.code(), Some(1));
    assert_eq!(quasi(&["--help"]).status.code(), Some(0));
}

#[test]
fn quiet_prints_nothing() {
    let out = quasi(&["hamilton", "--input", &data("g7.json"), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}
