//! End-to-end tests of the command-line interface.
//!
//! Heavy suites (the genus-2 convolution and the derived-table checks)
//! are exercised by the core crate's own tests; here we drive the
//! binary through the cheap suites, the series printer, the parameter
//! pipes, and the exit-code contract.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hecke-series"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin handle")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout is JSON")
}

#[test]
fn series_rejects_unsupported_genus() {
    let out = run(&["series", "--genus", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("unsupported genus"));
}

#[test]
fn series_rejects_power_zero() {
    let out = run(&["series", "--power", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("power must be at least 1"));
}

#[test]
fn series_genus1_prints_the_closed_form() {
    let out = run(&["series", "--genus", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("x0^2*x1*X^2"), "unexpected output: {}", text);
}

#[test]
fn series_genus2_coefficients_are_exact() {
    let out = run(&[
        "series", "--genus", "2", "--terms", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["coefficients"][0], "1");
    // x0 (1 + x1)(1 + x2), expanded in descending canonical order.
    assert_eq!(v["coefficients"][1], "x0*x1*x2 + x0*x1 + x0*x2 + x0");
}

#[test]
fn series_latex_output_renders_a_fraction() {
    let out = run(&["series", "--genus", "1", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.starts_with("\\frac{1}{"), "unexpected output: {}", text);
    assert!(text.contains("x_{0}^{2} x_{1} X^{2}"));
}

#[test]
fn verify_passes_on_a_cheap_suite() {
    let out = run(&["verify", "eq3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).contains("3 passed, 0 failed"));
}

#[test]
fn verify_rejects_unknown_suites() {
    let out = run(&["verify", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("unknown suite"));
}

#[test]
fn verify_json_output_is_byte_identical_across_runs() {
    let a = run(&["verify", "eq3", "--format", "json"]);
    let b = run(&["verify", "eq3", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_numeric_prime_agrees_with_symbolic_statuses() {
    let sym = run(&["verify", "symsquare", "--format", "json"]);
    let num = run(&["verify", "symsquare", "--prime", "3", "--format", "json"]);
    assert_eq!(sym.status.code(), Some(0));
    assert_eq!(num.status.code(), Some(0));
    let (s, n) = (json_of(&sym), json_of(&num));
    assert_eq!(s["config"]["prime"], "symbolic");
    assert_eq!(n["config"]["prime"], 3);
    let status_of = |v: &serde_json::Value| {
        v["checks"]
            .as_array()
            .expect("checks array")
            .iter()
            .map(|c| (c["id"].to_string(), c["status"].to_string()))
            .collect::<Vec<_>>()
    };
    assert_eq!(status_of(&s), status_of(&n));
}

#[test]
fn verify_rejects_primes_below_two() {
    let out = run(&["verify", "eq3", "--prime", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("prime must be at least 2"));
}

#[test]
fn hodge_pairs_match_the_rank_four_table() {
    let out = run(&["lfactor", "hodge", "--genus", "2", "--weight", "k"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let expected = serde_json::json!([
        ["0", "2k-3"],
        ["k-2", "k-1"],
        ["k-1", "k-2"],
        ["2k-3", "0"]
    ]);
    assert_eq!(v["pairs"], expected);
    assert_eq!(v["warning"], serde_json::Value::Null);
}

#[test]
fn eisenstein_parameters_pipe_into_the_spinor_polynomial() {
    let params = run(&["lfactor", "eisenstein", "--genus", "2", "--weight", "k"]);
    assert_eq!(params.status.code(), Some(0));
    let spin = run_with_stdin(&["lfactor", "spin"], &stdout_str(&params));
    assert_eq!(spin.status.code(), Some(0));
    let v = json_of(&spin);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["factors"].as_array().expect("factors").len(), 4);
    assert_eq!(
        v["product"],
        "(1 - X)(1 - p^{k-2}X)(1 - p^{k-1}X)(1 - p^{2k-3}X)"
    );
}

#[test]
fn standard_polynomial_has_odd_degree() {
    let params = run(&["lfactor", "eisenstein", "--genus", "2", "--weight", "k"]);
    let std_out = run_with_stdin(&["lfactor", "standard"], &stdout_str(&params));
    assert_eq!(std_out.status.code(), Some(0));
    let v = json_of(&std_out);
    assert_eq!(v["factors"].as_array().expect("factors").len(), 5);
}

#[test]
fn merge_accepts_the_lift_weight_relation() {
    let f = stdout_str(&run(&["lfactor", "eisenstein", "--genus", "2", "--weight", "k"]));
    let g = stdout_str(&run(&[
        "lfactor",
        "eisenstein",
        "--genus",
        "2",
        "--weight",
        "k-2",
    ]));
    let input = format!("{{\"f\": {}, \"g\": {}}}", f, g);
    let out = run_with_stdin(&["lfactor", "merge"], &input);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["params"]["genus"], 4);
    assert_eq!(v["warning"], serde_json::Value::Null);
}

#[test]
fn merge_rejects_mismatched_weights() {
    let f = stdout_str(&run(&["lfactor", "eisenstein", "--genus", "2", "--weight", "k"]));
    let input = format!("{{\"f\": {}, \"g\": {}}}", f, f);
    let out = run_with_stdin(&["lfactor", "merge"], &input);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("weight"));
}

#[test]
fn malformed_stdin_is_a_usage_error() {
    let out = run_with_stdin(&["lfactor", "spin"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("not valid JSON"));
}
