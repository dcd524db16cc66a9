use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn sepkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepkit"))
        .args(args)
        .env_remove("SEPKIT_JSON")
        .env_remove("SEPKIT_SEED")
        .env_remove("SEPKIT_MAX_GROUP_ORDER")
        .env_remove("SEPKIT_ORACLE_CUTOFF")
        .env_remove("SEPKIT_SEQUENTIAL")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = sepkit(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap())
}

fn alg(name: &str) -> String {
    corpus()
        .join("algebras")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn grp(name: &str) -> String {
    corpus()
        .join("groups")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

#[test]
fn field_extension_degree() {
    let (v, code) = json(&["alg", "degree", &alg("f4_over_f2")]);
    assert_eq!(code, 0);
    assert_eq!(v["degree"], 2);
}

#[test]
fn dual_numbers_are_not_separable() {
    let (v, code) = json(&["alg", "separable", &alg("dual_numbers_f2")]);
    assert_eq!(code, 0);
    assert_eq!(v["separable"], false);
    assert_eq!(v["trace_form_etale"], false);
    let (v, code) = json(&["alg", "tower", &alg("dual_numbers_f2")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "domain");
}

#[test]
fn split_tower_dims() {
    let (v, code) = json(&["alg", "tower", &alg("k_times_k")]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([2, 2, 0]));
    let (v, _) = json(&["alg", "idempotents", &alg("k3_f3")]);
    assert_eq!(v["count"], 3);
}

#[test]
fn step_limit_is_a_capacity_error() {
    let (_, code) = json(&["alg", "tower", &alg("f8_over_f2"), "--max-steps", "1"]);
    assert_eq!(code, 3);
}

#[test]
fn group_info() {
    let (v, code) = json(&["grp", "info", &grp("s3"), "-p", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 6);
    assert_eq!(v["p_rank"], 1);
    assert_eq!(v["sylow"], "cyclic");
    assert_eq!(v["weyl_order"], 2);
    let (v, _) = json(&["grp", "np", &grp("z6"), "-p", "2"]);
    assert_eq!(v["order"], 2);
    assert_eq!(v["quotient_order"], 3);
    let (v, _) = json(&["grp", "doublecosets", &grp("s3"), "--h", "A3", "--k", "A3"]);
    assert_eq!(v["count"], 2);
    let (v, _) = json(&[
        "grp",
        "doublecosets",
        &grp("s3"),
        "--h",
        "C2",
        "--k",
        "(0,1)",
    ]);
    assert_eq!(v["count"], 2);
}

#[test]
fn stmod_commands() {
    let (v, code) = json(&["stmod", "classify", &grp("q8"), "-p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["covers"].as_array().unwrap().len(), 5);
    let (v, code) = json(&["stmod", "galois", &grp("z4"), "-p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["degree"], 2);
    let (v, _) = json(&["stmod", "modg", &grp("s3"), "-p", "3"]);
    assert_eq!(v["galois_group_order"], 2);
    let (v, _) = json(&["stmod", "degree", &grp("s3"), "-p", "2", "--h", "C2"]);
    assert_eq!(v["degree"], 1);
}

#[test]
fn usage_errors() {
    let (v, code) = json(&["alg", "degree", "/nonexistent.json"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "usage");
    assert_eq!(sepkit(&["alg"]).status.code(), Some(1));
    assert_eq!(sepkit(&["grp", "sylow", &grp("s3")]).status.code(), Some(1));
    assert_eq!(
        sepkit(&["stmod", "galois", &alg("k_times_k"), "-p", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(sepkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn group_order_cap_is_a_capacity_error() {
    let (_, code) = json(&["--max-group-order", "4", "grp", "info", &grp("s3")]);
    assert_eq!(code, 3);
}

#[test]
fn environment_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_sepkit"))
        .args(["grp", "info", &grp("s3")])
        .env("SEPKIT_JSON", "true")
        .env("SEPKIT_MAX_GROUP_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "capacity");
}

#[test]
fn output_is_deterministic() {
    let a = sepkit(&["--json", "batch"]);
    let b = sepkit(&["--json", "--sequential", "batch"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = sepkit(&[
        "--json",
        "--seed",
        "7",
        "alg",
        "idempotents",
        &alg("f9_over_f3"),
    ]);
    let d = sepkit(&[
        "--json",
        "--seed",
        "7",
        "alg",
        "idempotents",
        &alg("f9_over_f3"),
    ]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn batch_file_and_corpus_export() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("batch.json");
    std::fs::write(&spec, r#"[{"group": "S3", "p": 3}, {"group": {"degree": 4, "generators": ["(0,1,2,3)"]}, "p": 2}]"#)
        .unwrap();
    let (v, code) = json(&["batch", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v.as_array().unwrap().iter().all(|e| e["verified"] == true));

    let out = dir.path().join("corpus");
    let (_, code) = json(&["corpus", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    for name in ["f4_over_f2", "dual_numbers_f2", "q_sqrt2"] {
        let fresh = std::fs::read(out.join("algebras").join(format!("{name}.json"))).unwrap();
        let committed =
            std::fs::read(corpus().join("algebras").join(format!("{name}.json"))).unwrap();
        assert_eq!(fresh, committed, "{name}");
    }
    let (v, _) = json(&[
        "alg",
        "validate",
        out.join("algebras/f16_over_f2.json").to_str().unwrap(),
    ]);
    assert_eq!(v["valid"], true);
}

#[test]
fn text_output() {
    let out = sepkit(&["alg", "degree", &alg("f8_over_f2")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "degree: 3\n");
}
