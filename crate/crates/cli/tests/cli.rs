use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dpknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/catalog.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

#[test]
fn compute_trefoil_text() {
    let o = dpknot(&["compute", "-p", "5", "-q", "4", "-k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("Δ(t) = 1 - t + t^2, genus 1"));
    assert!(out.contains("n-sequence: [1]"));
    assert!(out.contains("Saito condition: pass"));
}

#[test]
fn compute_pretzel_json() {
    let o = dpknot(&["compute", "-p", "18", "-q", "5", "-k", "7", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["delta"]["min_exp"], 0);
    assert_eq!(v["delta"]["coeffs"], serde_json::json!([1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1]));
    assert_eq!(v["genus"], 5);
    assert!(schema().is_valid(&v));
}

#[test]
fn compute_rejects_non_coprime_pq() {
    let o = dpknot(&["compute", "-p", "6", "-q", "4", "-k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotCoprimePQ"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn compute_rejects_non_coprime_pk_and_range() {
    let o = dpknot(&["compute", "-p", "6", "-q", "5", "-k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotCoprimePK"));
    let o = dpknot(&["compute", "-p", "5", "-q", "-1", "-k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("range"));
}

#[test]
fn formal_genus_when_saito_fails() {
    let o = dpknot(&["compute", "-p", "5", "-q", "2", "-k", "2", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["saito_pass"], false);
    assert_eq!(v["formal_genus"], true);
    assert_eq!(v["saito_value"], -2);
    let o = dpknot(&["compute", "-p", "5", "-q", "2", "-k", "2"]);
    assert!(stdout(&o).lines().next().unwrap().contains(", formal genus "));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["compute", "-p", "+5", "-q", "4", "-k", "2"][..],
        &["compute", "-p", "5.0", "-q", "4", "-k", "2"],
        &["compute", "-p", "5", "-q", "4"],
        &["compute", "-p", "5", "-q", "4", "-k", "2", "--output", "xml"],
        &["scan-w1", "--pmax", "1e2"],
        &["frobnicate"],
        &[],
    ] {
        let o = dpknot(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn examples_replay_cleanly() {
    let o = dpknot(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("right-handed trefoil (5, 4, 2): reproduced"));
    assert!(out.contains("(-2,3,7)-pretzel knot (18, 5, 7): reproduced"));
    assert!(!out.contains("MISMATCH"));

    let o = dpknot(&["examples", "--output", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn verify_and_oracle() {
    let o = dpknot(&["verify", "-p", "18", "-q", "5", "-k", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = dpknot(&["oracle", "-p", "18", "-q", "5", "-k", "7", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["formula"], v["fox_gcd"]);
}

#[test]
fn search_writes_jsonl_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.jsonl");
    let o = dpknot(&["search", "--pmax", "12", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("records"));

    let schema = schema();
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    // Valid (p, q, k) with p <= 12: sum of phi(p)^2.
    let expected: usize = [1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4].iter().map(|f| f * f).sum();
    assert_eq!(lines.len(), expected);
    assert!(lines.iter().all(|v| schema.is_valid(v)));

    let o = dpknot(&["search", "--pmax", "12", "--filter", "saito"]);
    let saito = stdout(&o).lines().count();
    assert!(saito > 0 && saito < expected);
}

#[test]
fn search_is_deterministic() {
    let a = dpknot(&["search", "--pmax", "15"]);
    let b = dpknot(&["search", "--pmax", "15"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scan_w1_report() {
    let o = dpknot(&["scan-w1", "--pmax", "5", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scanned"], 25);
    assert_eq!(v["counterexamples"], 0);
}
