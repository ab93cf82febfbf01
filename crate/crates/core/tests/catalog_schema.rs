use std::collections::BTreeSet;
use std::path::PathBuf;

use dpknot::enumerate::{evaluate_triple, search, SearchConfig, SearchFilter, DEFAULT_ORACLE_LIMIT};
use dpknot::{validate_triple, CatalogRecord};
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/catalog.schema.json");
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).expect("schema is valid JSON")
}

fn keys(v: &Value) -> BTreeSet<String> {
    v.as_object().expect("object").keys().cloned().collect()
}

fn strings(v: &Value) -> BTreeSet<String> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|s| s.as_str().expect("string").to_owned())
        .collect()
}

fn record(p: i64, q: i64, k: i64) -> CatalogRecord {
    evaluate_triple(&validate_triple(p, q, k).unwrap(), DEFAULT_ORACLE_LIMIT)
}

#[test]
fn record_keys_match_required_fields() {
    let schema = schema();
    let required = strings(&schema["required"]);
    assert_eq!(required, keys(&schema["properties"]));
    for r in [record(5, 4, 2), record(18, 5, 7), record(7, 2, 3)] {
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(keys(&v), required, "record {v}");
        assert_eq!(keys(&v["checks"]), strings(&schema["properties"]["checks"]["required"]));
        assert_eq!(keys(&v["delta"]), strings(&schema["$defs"]["poly"]["required"]));
    }
}

#[test]
fn catalog_lines_validate_and_round_trip() {
    let schema = schema();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    let records = search(&SearchConfig::new(20, SearchFilter::All));
    assert!(records.iter().any(|r| !r.saito_pass));
    for r in &records {
        let line = serde_json::to_string(r).unwrap();
        let v: Value = serde_json::from_str(&line).unwrap();
        if let Err(errors) = compiled.validate(&v) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{line}: {msgs:?}");
        }
        let back: CatalogRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(&back, r);
    }
}

#[test]
fn schema_rejects_malformed_records() {
    let compiled = JSONSchema::compile(&schema()).unwrap();
    let good = serde_json::to_value(record(18, 5, 7)).unwrap();
    assert!(compiled.is_valid(&good));

    let mut extra = good.clone();
    extra["unexpected"] = Value::Bool(true);
    assert!(!compiled.is_valid(&extra));

    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("genus");
    assert!(!compiled.is_valid(&missing));

    let mut bad_status = good.clone();
    bad_status["checks"]["oracle"] = Value::from("maybe");
    assert!(!compiled.is_valid(&bad_status));

    let mut bad_poly = good;
    bad_poly["delta"] = serde_json::json!({ "min_exp": 0, "coeffs": [1.5] });
    assert!(!compiled.is_valid(&bad_poly));
}

#[test]
fn zero_polynomial_structured_form() {
    let zero = serde_json::to_value(dpknot::LaurentPoly::zero()).unwrap();
    assert_eq!(zero, serde_json::json!({ "min_exp": 0, "coeffs": [] }));
}
