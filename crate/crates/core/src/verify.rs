//! Cross-module invariant suites, run against one spec at a time. The CLI
//! exposes these as its `verify` command; the same checks back the
//! property tests.
//!
//! Each suite is exact: any failure is a broken identity, not a tolerance
//! issue. Internal sweep depths are clamped (determinant sweeps are cubic
//! in the index) so the suites stay fast at any caller-supplied depth;
//! the clamps are recorded in each outcome's detail line.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{
    build_system, certify, collapse, cramer_indicator, eval_q, eval_sum, forcing_rank, witness,
    DMatrix,
};
use crate::determinant::{
    build_augmented, build_mu, build_omega, convergence_monitor, omega_values, partial_product,
    verify_theorem1, DEFAULT_CAVEAT_WINDOW,
};
use crate::fixtures::random_rational;
use crate::matrix::{det_elimination, det_laplace, ExactMatrix, ExactVector};
use crate::rational::{int, rat, Rational};
use crate::recurrence::{eval_scaled, eval_terms, oracle_reach, RecurrenceSpec};

/// Result of one named suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            pass: false,
            detail: detail.into(),
        }
    }
}

pub fn all_pass(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.pass)
}

/// Run every suite against one spec at depth `n`.
pub fn run_invariant_suites(spec: &RecurrenceSpec, n: usize) -> Vec<CheckOutcome> {
    assert!(n >= 1, "depth must be at least 1");
    vec![
        suite_theorem1(spec, n),
        suite_shift_identity(spec, n),
        suite_minor_identity(spec, n),
        suite_laplace_agreement(spec, n),
        suite_scale_linearity(spec, n),
        suite_product_mu(spec, n),
        suite_product_oracle(spec, n),
        suite_cramer(spec, n),
        suite_witness(spec, n),
        suite_forcing_rank(spec, n),
        suite_collapse_duality(spec, n),
        suite_certificate_assignment(spec, n),
        suite_q_vanishing(spec, n),
        suite_caveat(spec, n),
    ]
}

fn suite_theorem1(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "three-way determinant identity";
    let depth = n.min(25);
    let report = verify_theorem1(spec, depth);
    match report.first_failure {
        None => CheckOutcome::pass(NAME, format!("all indices up to {depth} agree")),
        Some(f) => CheckOutcome::fail(
            NAME,
            format!(
                "index {}: {} (expected {}, got {})",
                f.index, f.check, f.expected, f.actual
            ),
        ),
    }
}

fn suite_shift_identity(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "shifted determinant equals omega minus target";
    let depth = n.min(12);
    let omegas = omega_values(spec, depth);
    let targets = [int(0), rat(2, 3), omegas[depth - 1].clone() + int(1)];
    for i in 1..=depth {
        for r in &targets {
            let det = det_elimination(&build_augmented(spec, i, r)).expect("square");
            let expected = &omegas[i - 1] - r;
            if det != expected {
                return CheckOutcome::fail(
                    NAME,
                    format!("i = {i}, r = {r}: expected {expected}, got {det}"),
                );
            }
        }
    }
    CheckOutcome::pass(
        NAME,
        format!("{} (index, target) pairs up to depth {depth}", depth * targets.len()),
    )
}

fn suite_minor_identity(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "augmented minor recovers the square layout";
    let depth = n.min(10);
    for i in 1..=depth {
        let aug = build_augmented(spec, i, &int(0));
        if aug.minor(i, i) != build_omega(spec, i) {
            return CheckOutcome::fail(NAME, format!("mismatch at size {i}"));
        }
    }
    CheckOutcome::pass(NAME, format!("sizes 1..={depth}"))
}

fn suite_laplace_agreement(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "cofactor oracle agrees with elimination";
    let depth = n.min(7);
    for i in 1..=depth {
        let m = build_omega(spec, i);
        let lap = det_laplace(&m).expect("within oracle bound");
        let elim = det_elimination(&m).expect("square");
        if lap != elim {
            return CheckOutcome::fail(NAME, format!("omega size {i}: {lap} vs {elim}"));
        }
        if i < depth {
            let a = build_augmented(spec, i, &rat(1, 2));
            let lap = det_laplace(&a).expect("within oracle bound");
            let elim = det_elimination(&a).expect("square");
            if lap != elim {
                return CheckOutcome::fail(NAME, format!("augmented size {i}: {lap} vs {elim}"));
            }
        }
    }
    CheckOutcome::pass(NAME, format!("both layouts up to size {depth}"))
}

fn suite_scale_linearity(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "scaled system is a linear multiple";
    let depth = n.min(20);
    let base = eval_terms(spec, depth);
    for scale in [int(0), int(1), rat(-5, 7)] {
        let scaled = eval_scaled(spec, &scale, depth);
        for k in 1..=depth {
            let expected = &scale * base.term(k);
            if scaled.term(k) != &expected {
                return CheckOutcome::fail(
                    NAME,
                    format!("scale {scale}, index {k}: expected {expected}"),
                );
            }
        }
    }
    CheckOutcome::pass(NAME, format!("three scales at depth {depth}"))
}

fn suite_product_mu(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "block-diagonal determinant equals partial product";
    let depth = n.min(8);
    for r in [int(0), rat(1, 3)] {
        let report = partial_product(spec, &r, depth);
        let mu_det = det_elimination(&build_mu(spec, &r, depth)).expect("square");
        if mu_det != report.value {
            return CheckOutcome::fail(
                NAME,
                format!("r = {r}: product {} vs mu det {mu_det}", report.value),
            );
        }
    }
    CheckOutcome::pass(NAME, format!("two targets at depth {depth}"))
}

fn suite_product_oracle(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "product zero index matches direct iteration";
    let terms = eval_terms(spec, n);
    let targets = [int(0), terms.term(n.div_ceil(2)).clone()];
    for r in &targets {
        let report = partial_product(spec, r, n);
        let oracle = oracle_reach(spec, r, n);
        if report.first_zero_index != oracle {
            return CheckOutcome::fail(
                NAME,
                format!("r = {r}: product says {:?}, oracle says {oracle:?}", report.first_zero_index),
            );
        }
        if report.value.is_zero() != report.first_zero_index.is_some() {
            return CheckOutcome::fail(NAME, format!("r = {r}: zero value without zero index"));
        }
    }
    CheckOutcome::pass(NAME, format!("two targets at depth {n}"))
}

fn suite_cramer(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "column-replacement determinant equals solution entry";
    let depth = n.min(15);
    for r in [int(0), rat(2, 5)] {
        let sys = build_system(spec, depth, &r);
        let beta = sys.beta();
        let terms = eval_terms(spec, depth);
        for t in 1..=depth {
            let ind = cramer_indicator(&sys, t);
            if ind != beta[t - 1] {
                return CheckOutcome::fail(NAME, format!("r = {r}, t = {t}: {ind} vs solve"));
            }
            let expected = terms.term(t) - &r;
            if ind != expected {
                return CheckOutcome::fail(
                    NAME,
                    format!("r = {r}, t = {t}: {ind} vs shifted term {expected}"),
                );
            }
        }
    }
    CheckOutcome::pass(NAME, format!("all indices at depth {depth}, two targets"))
}

fn suite_witness(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "witness row annihilates all columns but its own";
    let depth = n.min(10);
    let sys = build_system(spec, depth, &rat(1, 2));
    let beta = sys.beta();
    for t in 1..=depth {
        let w = witness(&sys, t);
        for k in 1..=depth {
            let dot = w.dot(&sys.a().column(k - 1));
            let expected = if k == t { int(1) } else { int(0) };
            if dot != expected {
                return CheckOutcome::fail(NAME, format!("t = {t}, column {k}: {dot}"));
            }
        }
        if w.dot(sys.b()) != beta[t - 1] {
            return CheckOutcome::fail(NAME, format!("t = {t}: witness dot b mismatch"));
        }
    }
    CheckOutcome::pass(NAME, format!("all indices at depth {depth}"))
}

fn suite_forcing_rank(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "full stacked rank exactly at missed indices";
    let depth = n.min(12);
    let r = int(0);
    let sys = build_system(spec, depth, &r);
    let terms = eval_terms(spec, depth);
    for t in 1..=depth {
        let missed = terms.term(t) != &r;
        let (rank_value, forced) = forcing_rank(&sys, t);
        if forced != missed {
            return CheckOutcome::fail(
                NAME,
                format!("t = {t}: rank {rank_value}, forced {forced}, missed {missed}"),
            );
        }
    }
    CheckOutcome::pass(NAME, format!("all indices at depth {depth}"))
}

fn suite_collapse_duality(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "collapsed coefficients match direct evaluation";
    let depth = n.min(8);
    let sys = build_system(spec, depth, &rat(1, 3));
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for _ in 0..3 {
        let mut grid = ExactMatrix::zeros(depth, depth);
        for i in 0..depth {
            for j in 0..depth {
                grid.set(i, j, random_rational(&mut rng, 9, false));
            }
        }
        let d = DMatrix::new(grid);
        let collapsed = collapse(&sys, &d);
        for _ in 0..3 {
            let z = nonzero_point(&mut rng, depth);
            let direct = eval_sum(&sys, &d, &z).expect("nonzero point");
            let via_collapse = collapsed.eval(&z).expect("nonzero point");
            if direct != via_collapse {
                return CheckOutcome::fail(NAME, format!("{direct} vs {via_collapse}"));
            }
        }
    }
    CheckOutcome::pass(NAME, format!("3 grids x 3 points at depth {depth}"))
}

fn suite_certificate_assignment(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "certificate assignment collapses correctly";
    let depth = n.min(12);
    let r = int(0);
    let report = certify(spec, depth, &r);
    let sys = build_system(spec, depth, &r);
    let mut rng = ChaCha8Rng::seed_from_u64(0xFEED);
    for v in &report.verdicts {
        let d = DMatrix::certificate_assignment(&sys, v.index);
        let collapsed = collapse(&sys, &d);
        if v.reaches {
            if !collapsed.is_constant_one() {
                return CheckOutcome::fail(NAME, format!("t = {} should collapse to 1", v.index));
            }
            let z = nonzero_point(&mut rng, depth);
            let value = eval_sum(&sys, &d, &z).expect("nonzero point");
            if !value.is_one() {
                return CheckOutcome::fail(NAME, format!("t = {}: sum {value} at sample", v.index));
            }
        } else {
            let expected = -v.cramer_value.clone();
            if collapsed.linear[v.index - 1] != expected {
                return CheckOutcome::fail(
                    NAME,
                    format!("t = {}: linear term should be {expected}", v.index),
                );
            }
        }
    }
    CheckOutcome::pass(NAME, format!("all indices at depth {depth}"))
}

fn suite_q_vanishing(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "rational expressions vanish at reciprocal points";
    let depth = n.min(15);
    let terms = eval_terms(spec, depth);
    // A target no term attains, so every x_k = 1/(E_k - r) is defined.
    let r = terms
        .terms()
        .iter()
        .max()
        .expect("depth is at least 1")
        .clone()
        + int(1);
    let x: ExactVector = terms
        .terms()
        .iter()
        .map(|term| Rational::one() / (term - &r))
        .collect();
    match eval_q(spec, depth, &r, &x) {
        Ok(q) if q.is_zero() => {
            CheckOutcome::pass(NAME, format!("zero vector at depth {depth}"))
        }
        Ok(q) => CheckOutcome::fail(NAME, format!("nonzero entries: {:?}", q.as_slice())),
        Err(e) => CheckOutcome::fail(NAME, format!("evaluation error: {e}")),
    }
}

fn suite_caveat(spec: &RecurrenceSpec, n: usize) -> CheckOutcome {
    const NAME: &str = "convergence caveat bookkeeping";
    let window = DEFAULT_CAVEAT_WINDOW.min(n);
    let report = convergence_monitor(spec, &int(0), n, window);
    if spec.is_integer() {
        if !report.integer_exempt {
            return CheckOutcome::fail(NAME, "integer spec not marked exempt".to_string());
        }
        if report.caveat_flag {
            return CheckOutcome::fail(NAME, "caveat flagged on an integer spec".to_string());
        }
    } else if report.integer_exempt {
        return CheckOutcome::fail(NAME, "non-integer spec marked exempt".to_string());
    }
    let one = Rational::one();
    let expected = report
        .values
        .iter()
        .all(|v| !v.is_zero() && num_traits::Signed::abs(v) < one);
    if report.caveat_flag != expected {
        return CheckOutcome::fail(NAME, "flag disagrees with window values".to_string());
    }
    CheckOutcome::pass(NAME, format!("window {window} at depth {n}"))
}

fn nonzero_point<R: Rng>(rng: &mut R, len: usize) -> ExactVector {
    (0..len)
        .map(|_| loop {
            let v = random_rational(rng, 9, false);
            if !v.is_zero() {
                break v;
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_pass_all_suites() {
        for (name, spec) in fixtures::named() {
            let outcomes = run_invariant_suites(&spec, 16);
            for o in &outcomes {
                assert!(o.pass, "{name} / {}: {}", o.name, o.detail);
            }
            assert!(all_pass(&outcomes));
        }
    }

    #[test]
    fn random_specs_pass_all_suites() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let params = fixtures::RandomSpecParams::default();
        for _ in 0..5 {
            let spec = fixtures::random_spec(&mut rng, &params);
            let outcomes = run_invariant_suites(&spec, 12);
            for o in &outcomes {
                assert!(o.pass, "{}: {} ({spec:?})", o.name, o.detail);
            }
        }
    }
}
