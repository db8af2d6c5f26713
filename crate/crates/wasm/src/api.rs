//! The demo operations as plain Rust: JSON spec text in, JSON result
//! string out, errors as human-readable strings. Keeping this free of
//! wasm types lets the whole surface run under native `cargo test`.

use serde::Serialize;

use reachrec::certificate::{build_system, cramer_reach};
use reachrec::determinant::{build_augmented, build_omega, omega_value, partial_product};
use reachrec::matrix::ExactMatrix;
use reachrec::rational::{format_rational, parse_rational, Rational};
use reachrec::recurrence::{eval_terms, oracle_reach, RecurrenceSpec};
use reachrec::specfile::load_spec;

#[derive(Serialize)]
struct EvaluateResult {
    name: Option<String>,
    terms: Vec<String>,
}

#[derive(Serialize)]
struct MethodResults {
    oracle: Option<usize>,
    product: Option<usize>,
    cramer: Option<usize>,
}

#[derive(Serialize)]
struct ReachResult {
    target: String,
    depth: usize,
    found: bool,
    index: Option<usize>,
    methods: MethodResults,
    agreement: bool,
    caveat_flag: bool,
    integer_exempt: bool,
    product_bits: u64,
}

#[derive(Serialize)]
struct OmegaResult {
    index: usize,
    omega: String,
    shifted: Option<String>,
    matrix: Vec<Vec<String>>,
    augmented_matrix: Option<Vec<Vec<String>>>,
}

fn parse_spec(spec_json: &str) -> Result<(RecurrenceSpec, Option<String>), String> {
    let (spec, echo) = load_spec(spec_json).map_err(|e| e.to_string())?;
    Ok((spec, echo.name))
}

fn parse_target(raw: &str) -> Result<Rational, String> {
    parse_rational(raw).map_err(|e| e.to_string())
}

fn require_positive(value: usize, what: &str) -> Result<usize, String> {
    if value == 0 {
        Err(format!("{what} must be at least 1"))
    } else {
        Ok(value)
    }
}

fn grid(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("demo results always serialize")
}

pub fn evaluate(spec_json: &str, n: usize) -> Result<String, String> {
    let n = require_positive(n, "depth N")?;
    let (spec, name) = parse_spec(spec_json)?;
    let terms = eval_terms(&spec, n);
    Ok(render(&EvaluateResult {
        name,
        terms: terms.terms().iter().map(format_rational).collect(),
    }))
}

pub fn reach(spec_json: &str, r: &str, n: usize) -> Result<String, String> {
    let n = require_positive(n, "depth N")?;
    let r = parse_target(r)?;
    let (spec, _) = parse_spec(spec_json)?;

    let oracle = oracle_reach(&spec, &r, n);
    let product = partial_product(&spec, &r, n);
    let cramer = cramer_reach(&build_system(&spec, n, &r));
    let agreement = oracle == product.first_zero_index && oracle == cramer;

    Ok(render(&ReachResult {
        target: format_rational(&r),
        depth: n,
        found: oracle.is_some(),
        index: oracle,
        methods: MethodResults {
            oracle,
            product: product.first_zero_index,
            cramer,
        },
        agreement,
        caveat_flag: product.caveat_flag,
        integer_exempt: product.integer_exempt,
        product_bits: product.product_bits,
    }))
}

pub fn omega_matrix(spec_json: &str, i: usize, r: &str, augmented: bool) -> Result<String, String> {
    let i = require_positive(i, "index i")?;
    let r = parse_target(r)?;
    let (spec, _) = parse_spec(spec_json)?;

    let omega = omega_value(&spec, i);
    Ok(render(&OmegaResult {
        index: i,
        omega: format_rational(&omega),
        shifted: augmented.then(|| format_rational(&(&omega - &r))),
        matrix: grid(&build_omega(&spec, i)),
        augmented_matrix: augmented.then(|| grid(&build_augmented(&spec, i, &r))),
    }))
}
