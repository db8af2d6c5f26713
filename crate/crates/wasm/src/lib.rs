//! Browser bindings for the recurrence toolkit. The exported functions
//! take the same JSON spec format as the CLI, do all arithmetic exactly,
//! and hand results back as JSON strings for the demo page in `www/` to
//! render. All real work lives in [`api`], which is plain Rust and is
//! tested natively; the `#[wasm_bindgen]` exports are one-line wrappers.

use wasm_bindgen::prelude::wasm_bindgen;

pub mod api;

/// First N terms of the recurrence described by `spec_json`.
#[wasm_bindgen]
pub fn evaluate(spec_json: &str, n: usize) -> Result<String, String> {
    api::evaluate(spec_json, n)
}

/// Bounded reachability verdict for the target rational `r`, decided by
/// all three mechanisms and cross-checked.
#[wasm_bindgen]
pub fn reach(spec_json: &str, r: &str, n: usize) -> Result<String, String> {
    api::reach(spec_json, r, n)
}

/// The determinant family at index i: value, optional shifted value, and
/// the matrix layout as a grid of canonical rational strings.
#[wasm_bindgen]
pub fn omega_matrix(spec_json: &str, i: usize, r: &str, augmented: bool) -> Result<String, String> {
    api::omega_matrix(spec_json, i, r, augmented)
}
