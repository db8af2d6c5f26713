//! Shared harness for driving the compiled binary.

// Each integration test binary compiles this module separately and uses
// a different subset of it.
#![allow(dead_code)]

use std::process::Command;

pub struct RunResult {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

pub fn run(args: &[&str]) -> RunResult {
    let output = Command::new(env!("CARGO_BIN_EXE_reachrec"))
        .args(args)
        .output()
        .expect("the binary should run");
    RunResult {
        stdout: String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(output.stderr).expect("stderr is UTF-8"),
        exit: output.status.code().unwrap_or(-1),
    }
}

pub fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {path}: {e}"))
}

/// Pin the millisecond timing to zero so reports from different runs
/// compare byte-for-byte. Everything else is left untouched.
pub fn normalize_timing(report: &str) -> String {
    let mut out = String::with_capacity(report.len());
    for line in report.lines() {
        if line.starts_with("  \"timing_ms\": ") {
            out.push_str("  \"timing_ms\": 0");
        } else {
            out.push_str(line);
        }
        out.push('\n');
    }
    out
}

pub fn parse_report(result: &RunResult) -> serde_json::Value {
    serde_json::from_str(&result.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not valid JSON ({e}); stderr was: {}",
            result.stderr
        )
    })
}
