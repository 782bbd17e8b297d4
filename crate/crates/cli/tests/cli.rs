use std::process::{Command, Output};

use serde_json::Value;

fn superchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superchar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ut_table_of_ut3_f2_is_5_by_5() {
    let out = superchar(&["ut-table", "--n", "3", "--p", "2", "--verify-oracle", "--verify-kirillov"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    let chars = v["characters"].as_array().unwrap();
    assert_eq!(chars.len(), 5);
    assert!(chars.iter().all(|c| c["values"].as_array().unwrap().len() == 5));
}

#[test]
fn builtin_c4_passes() {
    let out = superchar(&["verify-theory", "--builtin", "c4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn size_cap_exits_with_3() {
    assert_eq!(superchar(&["ut-table", "--n", "9", "--p", "7"]).status.code(), Some(3));
    assert_eq!(superchar(&["t-table", "--n", "3", "--p", "3", "--max-order", "100"]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(superchar(&["ut-table", "--n", "3"]).status.code(), Some(2));
    assert_eq!(superchar(&["ut-table", "--n", "3", "--p", "4"]).status.code(), Some(2));
    assert_eq!(superchar(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(superchar(&["hopf", "coprod", "--basis", "1|1"]).status.code(), Some(2));
    assert_eq!(superchar(&[]).status.code(), Some(2));
}

#[test]
fn failing_theory_exits_with_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // {1} merged with g: axiom (d) fails
    std::fs::write(&path, r#"{"multiplication": [[0, 1], [1, 0]], "parts": [[0, 1]], "characters": [[1]]}"#).unwrap();
    let out = superchar(&["verify-theory", "--theory", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn output_is_deterministic() {
    let args = ["t-table", "--n", "3", "--p", "2"];
    assert_eq!(superchar(&args).stdout, superchar(&args).stdout);
    let args = ["orbits", "--group", "t", "--ambient", "dual", "--n", "3", "--p", "3"];
    assert_eq!(superchar(&args).stdout, superchar(&args).stdout);
}

#[test]
fn out_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = superchar(&["t-table", "--n", "2", "--p", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap().len(), 6);
    assert_eq!(r.records().count(), 6);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"command": "ut-table", "n": 2, "p": 3}"#).unwrap();
    let out = superchar(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["order"], 3);
    let out = superchar(&["--config", cfg.to_str().unwrap(), "ut-table", "--n", "3"]);
    assert_eq!(json(&out)["order"], 27);
}

#[test]
fn hopf_coproduct_of_14_2_3() {
    let out = superchar(&["hopf", "coprod", "--basis", "14|2|3"]);
    assert_eq!(out.status.code(), Some(0));
    let terms = json(&out)["terms"].clone();
    assert_eq!(terms.as_object().unwrap().len(), 6);
    assert_eq!(terms["13|2 ⊗ 1"], 2);
    assert_eq!(terms["1|2 ⊗ 12"], 1);
}

#[test]
fn hopf_products() {
    let out = superchar(&["hopf", "mult", "--basis", "12|3", "--basis", "1"]);
    let terms = json(&out)["terms"].clone();
    let mut keys: Vec<&String> = terms.as_object().unwrap().keys().collect();
    keys.sort();
    assert_eq!(keys, ["124|3", "12|34", "12|3|4"]);
    let out = superchar(&["hopf", "mult", "--algebra", "nps", "--y", "1", "--basis", ";1:1", "--basis", ";1:1"]);
    assert_eq!(json(&out)["terms"][";1:1,2:1"], 1);
    // label 2 is outside a one-letter alphabet
    assert_eq!(superchar(&["hopf", "mult", "--algebra", "nps", "--basis", ";1:2"]).status.code(), Some(2));
}

#[test]
fn hopf_verification_and_tower() {
    let out = superchar(&["hopf", "verify", "--algebra", "ns", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    let out = superchar(&["hopf", "tower", "--group", "ut", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(superchar(&["hopf", "tower", "--group", "ut", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn dual_orbit_counts_of_ut3_f2() {
    let out = superchar(&["orbits", "--n", "3", "--p", "2", "--ambient", "dual"]);
    let v = json(&out);
    let e13 = v["orbits"].as_array().unwrap().iter().find(|o| o["label"] == "{(1,3):1}").unwrap().clone();
    assert_eq!(e13["size"], 4);
    assert_eq!(e13["n_right"], 2);
}
