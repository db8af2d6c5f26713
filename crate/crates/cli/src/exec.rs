//! Subcommand implementations. Each returns the rendered JSON report, a
//! one-line summary for standard error, and the process exit code, or an
//! input-error message that `main` maps to exit code 2.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use reachrec::certificate::{
    build_system, certify, collapse, cramer_reach, witness, DMatrix,
};
use reachrec::determinant::{
    build_augmented, build_omega, build_mu, convergence_monitor, omega_value, partial_product,
    DEFAULT_CAVEAT_WINDOW,
};
use reachrec::fixtures::{random_spec, RandomSpecParams};
use reachrec::matrix::{det_elimination, ExactMatrix, ExactVector};
use reachrec::rational::{format_rational, parse_rational, Rational};
use reachrec::recurrence::{eval_terms, oracle_reach, RecurrenceSpec};
use reachrec::specfile::{load_spec, SpecFile};
use reachrec::verify::run_invariant_suites;

use crate::report::{
    AssignmentJson, CertifyVerdict, CheckJson, CollapseJson, EvalVerdict, IndexVerdictJson,
    MethodOutcomes, OmegaVerdict, RandomSpecJson, ReachVerdict, Report, VerifyVerdict, TOOL,
    VERSION,
};
use crate::{CertifyArgs, Cli, Command, EvalArgs, Method, OmegaArgs, ReachArgs, VerifyArgs};

pub struct Outcome {
    pub json: String,
    pub summary: String,
    pub exit: i32,
}

pub fn run(cli: Cli) -> Result<Outcome, String> {
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Reach(args) => cmd_reach(args),
        Command::Omega(args) => cmd_omega(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn read_spec(path: &Path) -> Result<(RecurrenceSpec, SpecFile), String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read spec file {}: {e}", path.display()))?;
    load_spec(&text).map_err(|e| error_chain(&e))
}

fn error_chain(err: &dyn std::error::Error) -> String {
    let mut message = err.to_string();
    let mut cause = err.source();
    while let Some(next) = cause {
        let text = next.to_string();
        if !message.contains(&text) {
            message.push_str(": ");
            message.push_str(&text);
        }
        cause = next.source();
    }
    message
}

fn parse_target(raw: &str) -> Result<Rational, String> {
    parse_rational(raw).map_err(|e| e.to_string())
}

fn positive(value: usize, what: &str) -> Result<usize, String> {
    if value == 0 {
        Err(format!("{what} must be at least 1"))
    } else {
        Ok(value)
    }
}

fn spec_label(echo: &SpecFile) -> String {
    echo.name.clone().unwrap_or_else(|| "recurrence".to_string())
}

fn vector_strings(v: &ExactVector) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matrix_strings(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn finish<V: Serialize>(
    command: &'static str,
    spec: Option<SpecFile>,
    depth: Option<usize>,
    target: Option<String>,
    verdict: V,
    exit: i32,
    summary: String,
    started: Instant,
) -> Result<Outcome, String> {
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command,
        spec,
        depth,
        target,
        verdict,
        timing_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome {
        json: report.render(),
        summary,
        exit,
    })
}

fn cmd_eval(args: EvalArgs) -> Result<Outcome, String> {
    let started = Instant::now();
    let n = positive(args.depth, "depth N")?;
    let (spec, echo) = read_spec(&args.spec)?;
    let terms = eval_terms(&spec, n);
    let verdict = EvalVerdict {
        terms: terms.terms().iter().map(format_rational).collect(),
    };
    let summary = format!("computed {n} terms of {}", spec_label(&echo));
    finish("eval", Some(echo), Some(n), None, verdict, 0, summary, started)
}

fn cmd_reach(args: ReachArgs) -> Result<Outcome, String> {
    let started = Instant::now();
    let n = positive(args.depth, "depth N")?;
    let r = parse_target(&args.target)?;
    let window = match args.window {
        Some(w) => positive(w, "caveat window")?.min(n),
        None => DEFAULT_CAVEAT_WINDOW.min(n),
    };
    let (spec, echo) = read_spec(&args.spec)?;

    let wants = |m: Method| args.method == Method::All || args.method == m;
    let oracle = wants(Method::Oracle).then(|| oracle_reach(&spec, &r, n));
    let product = wants(Method::Product).then(|| partial_product(&spec, &r, n));
    let cramer = wants(Method::Cramer).then(|| cramer_reach(&build_system(&spec, n, &r)));
    let monitor = convergence_monitor(&spec, &r, n, window);

    let answers: Vec<Option<usize>> = [
        oracle,
        product.as_ref().map(|p| p.first_zero_index),
        cramer,
    ]
    .into_iter()
    .flatten()
    .collect();
    let agreement = answers.windows(2).all(|pair| pair[0] == pair[1]);
    let index = answers[0];
    let found = index.is_some();

    let verdict = ReachVerdict {
        method: method_name(args.method),
        found,
        index,
        methods: (args.method == Method::All).then(|| MethodOutcomes {
            oracle: answers[0],
            product: answers[1],
            cramer: answers[2],
        }),
        agreement: (args.method == Method::All).then_some(agreement),
        caveat_flag: monitor.caveat_flag,
        integer_exempt: monitor.integer_exempt,
        caveat_window: window,
        product_bits: product.as_ref().map(|p| p.product_bits),
    };

    let target = format_rational(&r);
    let (exit, summary) = if !agreement {
        (
            4,
            format!("methods disagree on target {target}; this must never happen"),
        )
    } else if let Some(i) = index {
        (0, format!("target {target} reached at index {i}"))
    } else {
        (1, format!("target {target} not reached within depth {n}"))
    };
    finish(
        "reach",
        Some(echo),
        Some(n),
        Some(target),
        verdict,
        exit,
        summary,
        started,
    )
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Oracle => "oracle",
        Method::Product => "product",
        Method::Cramer => "cramer",
        Method::All => "all",
    }
}

fn cmd_omega(args: OmegaArgs) -> Result<Outcome, String> {
    let started = Instant::now();
    let i = positive(args.index, "index i")?;
    let r = parse_target(&args.target)?;
    let (spec, echo) = read_spec(&args.spec)?;

    let omega = omega_value(&spec, i);
    let shifted = args.augmented.then(|| &omega - &r);
    let matrix = args.matrix.then(|| build_omega(&spec, i).dump());
    let augmented_matrix =
        (args.matrix && args.augmented).then(|| build_augmented(&spec, i, &r).dump());
    let (mu_depth, mu_det) = match args.mu {
        Some(depth) => {
            let depth = positive(depth, "mu depth")?;
            let det = det_elimination(&build_mu(&spec, &r, depth))
                .expect("the block-diagonal layout is square by construction");
            (Some(depth), Some(format_rational(&det)))
        }
        None => (None, None),
    };

    let summary = format!("omega_{i} = {}", format_rational(&omega));
    let verdict = OmegaVerdict {
        index: i,
        omega: format_rational(&omega),
        shifted: shifted.as_ref().map(format_rational),
        matrix,
        augmented_matrix,
        mu_depth,
        mu_det,
    };
    finish(
        "omega",
        Some(echo),
        None,
        Some(format_rational(&r)),
        verdict,
        0,
        summary,
        started,
    )
}

fn cmd_certify(args: CertifyArgs) -> Result<Outcome, String> {
    let started = Instant::now();
    let n = positive(args.depth, "depth N")?;
    let r = parse_target(&args.target)?;
    if let Some(t) = args.at {
        if t == 0 || t > n {
            return Err(format!("index t = {t} is outside 1..=N = {n}"));
        }
    }
    let (spec, echo) = read_spec(&args.spec)?;

    let report = certify(&spec, n, &r);
    let indices = report
        .verdicts
        .iter()
        .map(|v| IndexVerdictJson {
            index: v.index,
            cramer_value: format_rational(&v.cramer_value),
            reaches: v.reaches,
            forcing_rank: v.forcing_rank,
            forced_trivial: v.forced_trivial,
            witness: v.witness.as_ref().map(vector_strings),
        })
        .collect();

    let assignment = args.at.map(|t| {
        let sys = build_system(&spec, n, &r);
        let d = DMatrix::certificate_assignment(&sys, t);
        let collapsed = collapse(&sys, &d);
        AssignmentJson {
            index: t,
            witness: vector_strings(&witness(&sys, t)),
            collapse: CollapseJson {
                constant: format_rational(&collapsed.const_term),
                cross: matrix_strings(&collapsed.cross),
                linear: vector_strings(&collapsed.linear),
            },
        }
    });

    let reached = report.reached_indices();
    let summary = if reached.is_empty() {
        format!(
            "no index up to {n} reaches {}",
            format_rational(&r)
        )
    } else {
        format!(
            "{} reaches {} at {} of {n} indices",
            spec_label(&echo),
            format_rational(&r),
            reached.len()
        )
    };
    let exit = if report.sum_can_equal_one { 0 } else { 1 };
    let verdict = CertifyVerdict {
        sum_can_equal_one: report.sum_can_equal_one,
        reached_indices: reached,
        indices,
        assignment,
    };
    finish(
        "certify",
        Some(echo),
        Some(n),
        Some(format_rational(&r)),
        verdict,
        exit,
        summary,
        started,
    )
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome, String> {
    let started = Instant::now();
    let n = positive(args.depth, "depth N")?;
    match (&args.spec, args.random_specs) {
        (Some(path), None) => {
            let (spec, echo) = read_spec(path)?;
            let checks: Vec<CheckJson> = run_invariant_suites(&spec, n)
                .into_iter()
                .map(|c| CheckJson {
                    name: c.name,
                    pass: c.pass,
                    detail: c.detail,
                })
                .collect();
            let all_pass = checks.iter().all(|c| c.pass);
            let summary = if all_pass {
                format!("all {} identity suites passed at depth {n}", checks.len())
            } else {
                let failed: Vec<&str> =
                    checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
                format!("identity suites failed: {}", failed.join(", "))
            };
            let verdict = VerifyVerdict {
                mode: "spec",
                checks: Some(checks),
                random_specs: None,
                seed: None,
                specs: None,
                all_pass,
            };
            let exit = if all_pass { 0 } else { 4 };
            finish("verify", Some(echo), Some(n), None, verdict, exit, summary, started)
        }
        (None, Some(count)) => {
            let count = positive(count, "random spec count")?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let params = RandomSpecParams::default();
            let mut specs = Vec::with_capacity(count);
            let mut all_pass = true;
            for index in 0..count {
                let spec = random_spec(&mut rng, &params);
                let failed: Vec<&'static str> = run_invariant_suites(&spec, n)
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name)
                    .collect();
                all_pass &= failed.is_empty();
                specs.push(RandomSpecJson {
                    index,
                    order: spec.order(),
                    all_pass: failed.is_empty(),
                    failed,
                });
            }
            let summary = if all_pass {
                format!("{count} random specs passed every identity suite at depth {n}")
            } else {
                "identity suites failed on a random spec".to_string()
            };
            let verdict = VerifyVerdict {
                mode: "random",
                checks: None,
                random_specs: Some(count),
                seed: Some(args.seed),
                specs: Some(specs),
                all_pass,
            };
            let exit = if all_pass { 0 } else { 4 };
            finish("verify", None, Some(n), None, verdict, exit, summary, started)
        }
        // clap enforces the one-of relationship; these are backstops.
        (Some(_), Some(_)) => Err("choose one of --spec or --random-specs, not both".to_string()),
        (None, None) => Err("one of --spec or --random-specs is required".to_string()),
    }
}
