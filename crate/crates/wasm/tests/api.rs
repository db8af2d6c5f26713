//! Native tests for the demo API: the same calls the browser page makes,
//! run against the JSON surface directly.

use reachrec_wasm::api;

const FIBONACCI: &str =
    r#"{"order":2,"initial":["1","1"],"coeffs":[["0"],["1"],["1"]],"name":"fibonacci"}"#;
const PERIOD6: &str =
    r#"{"order":2,"initial":["1","1"],"coeffs":[["0"],["1"],["-1"]],"name":"period6"}"#;
const MERSENNE: &str =
    r#"{"order":1,"initial":["1"],"coeffs":[["1"],["2"]],"name":"mersenne-like"}"#;

fn parse(result: Result<String, String>) -> serde_json::Value {
    serde_json::from_str(&result.expect("call should succeed")).expect("result is JSON")
}

#[test]
fn evaluate_returns_terms() {
    let value = parse(api::evaluate(FIBONACCI, 6));
    assert_eq!(value["name"], "fibonacci");
    let terms: Vec<&str> = value["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(terms, ["1", "1", "2", "3", "5", "8"]);
}

#[test]
fn evaluate_rejects_bad_input() {
    let err = api::evaluate(FIBONACCI, 0).unwrap_err();
    assert!(err.contains("at least 1"), "{err}");

    let err = api::evaluate("{not json", 5).unwrap_err();
    assert!(err.contains("JSON"), "{err}");

    let bad = r#"{"order":1,"initial":["1//2"],"coeffs":[["0"],["1"]]}"#;
    let err = api::evaluate(bad, 5).unwrap_err();
    assert!(err.contains("initial[0]"), "{err}");
}

#[test]
fn reach_agrees_across_methods() {
    let value = parse(api::reach(PERIOD6, "0", 10));
    assert_eq!(value["found"], true);
    assert_eq!(value["index"], 3);
    assert_eq!(value["methods"]["oracle"], 3);
    assert_eq!(value["methods"]["product"], 3);
    assert_eq!(value["methods"]["cramer"], 3);
    assert_eq!(value["agreement"], true);

    let value = parse(api::reach(FIBONACCI, "0", 30));
    assert_eq!(value["found"], false);
    assert_eq!(value["agreement"], true);
    assert_eq!(value["integer_exempt"], true);

    let value = parse(api::reach(MERSENNE, "7", 10));
    assert_eq!(value["index"], 3);
}

#[test]
fn reach_normalizes_target() {
    let value = parse(api::reach(FIBONACCI, "6/2", 10));
    assert_eq!(value["target"], "3");
    assert_eq!(value["index"], 4);
}

#[test]
fn omega_matrix_returns_grid() {
    let value = parse(api::omega_matrix(FIBONACCI, 5, "0", false));
    assert_eq!(value["omega"], "5");
    let matrix = value["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 5);
    assert_eq!(matrix[0].as_array().unwrap().len(), 5);
    assert!(value["shifted"].is_null());
    assert!(value["augmented_matrix"].is_null());
}

#[test]
fn omega_matrix_with_augmented_layout() {
    let value = parse(api::omega_matrix(MERSENNE, 4, "7", true));
    assert_eq!(value["omega"], "15");
    assert_eq!(value["shifted"], "8");
    let aug = value["augmented_matrix"].as_array().unwrap();
    assert_eq!(aug.len(), 5);
    let last: Vec<&str> = aug[4]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(last, ["-7", "0", "0", "0", "1"]);
}

#[test]
fn omega_matrix_rejects_zero_index() {
    let err = api::omega_matrix(FIBONACCI, 0, "0", false).unwrap_err();
    assert!(err.contains("at least 1"), "{err}");
}
