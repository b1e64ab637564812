use std::process::{Command, Output};

use serde_json::Value;

fn linarr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linarr")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = linarr(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn freeness_of_the_thirteen_line_family_at_three() {
    let v = json(&["freeness", "catalog:family13?lambda=3"]);
    assert_eq!(v["verdict"], "free");
    assert_eq!(v["route"], "yoshinaga");
    assert_eq!(v["exponents"], serde_json::json!([1, 6, 6]));
    assert_eq!(
        v["witness"]["d1"].as_u64().unwrap() * v["witness"]["d2"].as_u64().unwrap(),
        36
    );
}

#[test]
fn restriction_on_a_chosen_line() {
    let v = json(&["freeness", "catalog:dual_hesse", "--line", "1"]);
    assert_eq!(v["route"], "yoshinaga");
    assert_eq!(v["verdict"], "free");
}

#[test]
fn classify_profiles() {
    let v = json(&["classify-profiles", "--max", "12"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["profile"], serde_json::json!([0, 12]));
    assert_eq!(rows[5]["ell"], 12);
}

#[test]
fn recursive_verdict_no() {
    let v = json(&["recursive", "catalog:family13?lambda=3"]);
    assert_eq!(v["verdict"], "no");
}

#[test]
fn exit_codes() {
    assert_eq!(linarr(&["analyze", "catalog:nonesuch"]).status.code(), Some(2));
    assert_eq!(
        linarr(&["freeness", "catalog:dual_hesse", "--line", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        linarr(&["analyze", "catalog:family13?lambda=sqrt("]).status.code(),
        Some(3)
    );
    assert_eq!(linarr(&["render", "catalog:dual_hesse"]).status.code(), Some(5));
    let bad = std::env::temp_dir().join("linarr-cli-bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(linarr(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["analyze", "catalog:pentagonal"][..],
        &["additions", "catalog:dual_hesse"][..],
        &["scan-family", "family13", "--samples", "-1,3", "--no-recursive"][..],
        &["render", "catalog:eleven_if"][..],
    ] {
        let a = linarr(args);
        let b = linarr(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn markdown_scan() {
    let out = linarr(&["scan-family", "family15", "--samples", "5", "--no-recursive", "--md"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("| 5 | 15 |")));
}
