//! End-to-end runs of the `spherorb` binary.

use serde_json::Value;
use std::process::{Command, Output};

fn spherorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spherorb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = spherorb(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn pairs_of_type_a() {
    let v = json(&["pairs", "A", "5"]);
    let rows = v["data"].as_array().unwrap();
    assert!(rows.len() >= 3);
    assert!(rows.iter().any(|r| r["key"] == "A:5:p=3" && r["m"] == 2));
    assert_eq!(v["header"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["header"]["params"]["rank"], 5);
}

#[test]
fn pairs_of_type_b() {
    let v = json(&["pairs", "B", "4"]);
    let rows = v["data"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["m"], 2);
}

#[test]
fn unsupported_type_is_a_usage_error() {
    let out = spherorb(&["pairs", "E", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));
}

#[test]
fn orbits_of_c2() {
    let v = json(&["orbits", "C:2"]);
    let rows = v["data"].as_array().unwrap();
    let cases: std::collections::BTreeSet<&str> = rows
        .iter()
        .map(|r| r["case_id"].as_str().unwrap())
        .collect();
    assert_eq!(cases.into_iter().collect::<Vec<_>>(), ["3.1", "3.2", "3.3"]);
    assert!(rows
        .iter()
        .all(|r| r["triple"]["sl2_ok"] == true && r["spherical"] == true));
}

#[test]
fn orbits_of_a3_as_tsv() {
    let out = spherorb(&["orbits", "A:3:p=2", "--max", "2", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert!(lines
        .next()
        .unwrap()
        .starts_with("id\tcase\tsigned_partition\tht_p"));
    let cases: Vec<&str> = lines.map(|l| l.split('\t').nth(1).unwrap()).collect();
    for c in ["1.1", "1.2", "1.3", "1.6", "1.7"] {
        assert!(cases.contains(&c), "missing case {c}");
    }
}

#[test]
fn unknown_pair_is_a_usage_error() {
    assert_eq!(spherorb(&["orbits", "A:3:p=9"]).status.code(), Some(2));
}

#[test]
fn triple_of_an_orbit() {
    let v = json(&["triple", "A:3:p=2/1.6/r=0,s=0"]);
    assert_eq!(v["data"]["checks"]["sl2_ok"], true);
    assert_eq!(
        v["data"]["triple"]["h"]["rows"].as_array().unwrap().len(),
        4
    );
}

#[test]
fn semigroup_case_1_4() {
    let v = json(&["semigroup", "1.4", "--p", "5"]);
    assert_eq!(v["data"]["enumerated"].as_array().unwrap().len(), 5);
    assert_eq!(v["data"]["match"], true);
    assert_eq!(v["header"]["params"]["p"], 5);
}

#[test]
fn semigroup_case_1_6() {
    let v = json(&[
        "semigroup",
        "1.6",
        "--r",
        "1",
        "--s",
        "1",
        "--p",
        "5",
        "--q",
        "5",
    ]);
    assert_eq!(v["data"]["match"], true);
}

#[test]
fn semigroup_of_unknown_case_fails() {
    assert_eq!(spherorb(&["semigroup", "9.9"]).status.code(), Some(2));
}

#[test]
fn normality_of_all_systems() {
    let v = json(&["normality", "--max-params", "5"]);
    let rows = v["data"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["report"]["normal"] == true));
}

#[test]
fn cg_verify_reports_the_degenerate_triple() {
    let v = json(&["cg-verify", "3"]);
    assert_eq!(v["data"]["ok"], true);
    let found = v["data"]["degenerate"].as_array().unwrap().iter().any(|w| {
        w["k"] == serde_json::json!({"m": 2, "m1": 2, "m2": 2})
            && w["m"] == serde_json::json!({"m": 1, "m1": 1, "m2": 2})
            && w["n"] == serde_json::json!({"m": 1, "m1": 1, "m2": 2})
    });
    assert!(found);
}

#[test]
fn cg_verify_zero_is_trivial() {
    let v = json(&["cg-verify", "0"]);
    assert_eq!(v["data"]["ok"], true);
    assert_eq!(v["data"]["pairs_checked"], 1);
}

#[test]
fn output_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tsv");
    let b = dir.path().join("b.tsv");
    for path in [&a, &b] {
        let out = spherorb(&[
            "orbits",
            "D:5:gl",
            "--format",
            "tsv",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn report_all_writes_every_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = spherorb(&[
        "report-all",
        "--out",
        dir.path().to_str().unwrap(),
        "--max-params",
        "2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for name in [
        "pairs",
        "orbits",
        "normality",
        "cg_verify",
        "semigroup_1_4_p4_q2_r0_s0",
    ] {
        assert!(
            dir.path().join(format!("{name}.json")).exists(),
            "missing {name}"
        );
    }
}

#[test]
fn report_all_needs_a_directory() {
    assert_eq!(spherorb(&["report-all"]).status.code(), Some(2));
}

#[test]
fn bad_flag_is_a_usage_error() {
    assert_eq!(
        spherorb(&["pairs", "A", "5", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
}
