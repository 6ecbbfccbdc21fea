use std::process::Command;

use mixmult_cli::{run_cli, EXIT_ASSERTION, EXIT_GENERICITY, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}.mm", env!("CARGO_MANIFEST_DIR"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["mixmult"];
    full.extend_from_slice(args);
    let out = run_cli(full);
    (
        out.code,
        serde_json::from_str(&out.stdout).unwrap_or(Value::Null),
    )
}

fn write_temp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("mixmult-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn bigraded_e_on_three_components() {
    let f = fixture("bigraded_three_components");
    let (code, doc) = json(&[
        "bigraded-e",
        "--file",
        &f,
        "--ideal",
        "I",
        "--i",
        "2",
        "--j",
        "2",
        "--verify",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["command"], "bigraded-e");
    assert_eq!(doc["result"]["e"], "1");
    assert_eq!(doc["result"]["table_entry"], "1");
    assert_eq!(doc["inputs"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn ideal_mixed_on_counterexample() {
    let f = fixture("rigidity_counterexample");
    let (code, doc) = json(&[
        "ideal-mixed",
        "--file",
        &f,
        "--ambient",
        "A",
        "--ideal",
        "J",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["result"]["e"], serde_json::json!(["1", "0"]));
    assert_eq!(doc["result"]["rho"], 0);
    let (_, doc) = json(&[
        "ideal-mixed",
        "--file",
        &f,
        "--ambient",
        "A",
        "--ideal",
        "J",
        "--upto",
        "1",
    ]);
    assert_eq!(doc["result"]["dims"], serde_json::json!([3, 1]));
}

#[test]
fn rees_and_diagonal_on_twisted_cubic() {
    let f = fixture("twisted_cubic");
    let (_, doc) = json(&["rees-mult", "--file", &f, "--ideal", "J", "--verify"]);
    assert_eq!(doc["result"]["rees_mult"], "4");
    assert_eq!(doc["certificates"]["crosscheck"]["agree"], true);
    let (_, doc) = json(&["diagonal-degree", "--file", &f, "--ideal", "J"]);
    assert_eq!(doc["result"]["diagonal_degree"], "10");
}

#[test]
fn closed_forms_are_reported_for_three_points() {
    let f = fixture("three_points");
    let (_, doc) = json(&[
        "ideal-mixed",
        "--file",
        &f,
        "--ideal",
        "J",
        "--generic-ci",
        "--least-degrees",
        "2,2",
    ]);
    let forms = doc["certificates"]["closed_forms"].as_array().unwrap();
    assert!(forms
        .iter()
        .any(|x| x["formula"] == "e2" && x["value"] == "1"));
    assert!(forms.iter().all(|x| x["matches"] == true));
}

#[test]
fn mixed_degree_generators_use_the_rees_route() {
    let f = fixture("mixed_degree");
    let (code, doc) = json(&["ideal-mixed", "--file", &f, "--ideal", "J"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["certificates"]["route"], "rees");
    assert_eq!(doc["result"]["e"], serde_json::json!(["1", "1"]));
}

#[test]
fn sv_on_lines_and_conics() {
    let (_, doc) = json(&[
        "sv",
        "--file",
        &fixture("two_lines"),
        "--x",
        "X",
        "--y",
        "Y",
        "--degrees",
        "1,1",
    ]);
    assert_eq!(doc["result"]["sum"], "1");
    let (_, doc) = json(&[
        "sv",
        "--file",
        &fixture("two_conics"),
        "--x",
        "X",
        "--y",
        "Y",
        "--verify",
    ]);
    assert_eq!(doc["result"]["sum"], "4");
}

#[test]
fn gb_and_hilbert() {
    let f = fixture("segre");
    let (_, doc) = json(&["gb", "--file", &f, "--ideal", "I", "--verify"]);
    assert_eq!(doc["result"]["basis"].as_array().unwrap().len(), 1);
    assert_eq!(doc["certificates"]["buchberger_criterion"], true);
    let (_, doc) = json(&["hilbert", "--file", &f, "--ideal", "I"]);
    assert_eq!(
        doc["result"]["table"]["diagonal"],
        serde_json::json!(["1", "1"])
    );
}

#[test]
fn bigraded_report_detects_zero_polynomial() {
    let (code, doc) = json(&[
        "bigraded-report",
        "--file",
        &fixture("bigraded_nilpotent"),
        "--ideal",
        "I",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["result"]["polynomial_zero"], true);
    assert_eq!(doc["result"]["r"], Value::Null);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let f = fixture("twisted_cubic");
    let args = [
        "mixmult",
        "ideal-mixed",
        "--file",
        &f,
        "--ideal",
        "J",
        "--seed",
        "7",
    ];
    assert_eq!(run_cli(args).stdout, run_cli(args).stdout);
}

#[test]
fn exit_codes() {
    let bad = write_temp("bad.mm", "ring R vars x:1\nideal I in R = x +\n");
    let (code, doc) = json(&["gb", "--file", &bad, "--ideal", "I"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(doc["error"]["kind"], "parse");
    assert_eq!(run_cli(["mixmult", "frobnicate"]).code, EXIT_USAGE);

    let inhom = write_temp(
        "inhom.mm",
        "ring R vars x:(1,0) y:(0,1)\nideal I in R = x + 1\n",
    );
    let (code, doc) = json(&["hilbert", "--file", &inhom, "--ideal", "I"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(doc["error"]["kind"], "inhomogeneous");

    // Over F_2 the only candidate coefficients are 0 and 1, and one retry is allowed.
    let tiny = write_temp(
        "tiny.mm",
        "field F 2\nring R vars x:1 y:1\nideal A in R = x*y\nideal J in R = x ; y\n",
    );
    let (code, _) = json(&[
        "ideal-mixed",
        "--file",
        &tiny,
        "--ambient",
        "A",
        "--ideal",
        "J",
        "--max-retries",
        "1",
        "--seed",
        "3",
    ]);
    assert!(code == EXIT_OK || code == EXIT_GENERICITY);
    assert_ne!(code, EXIT_ASSERTION);
}

#[test]
fn environment_overrides_defaults() {
    let f = fixture("two_lines");
    let out = Command::new(env!("CARGO_BIN_EXE_mixmult"))
        .args(["sv", "--file", &f, "--x", "X", "--y", "Y"])
        .env("MIXMULT_SEED", "42")
        .env("MIXMULT_PRIME", "101")
        .env("MIXMULT_MAX_RETRIES", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["seed"], 42);
    assert_eq!(doc["config"]["prime"], 101);
    assert_eq!(doc["config"]["max_retries"], 5);
    assert_eq!(doc["result"]["sum"], "1");
}

#[test]
fn rationals_when_prime_is_zero() {
    let f = fixture("twisted_cubic");
    let (code, doc) = json(&["gb", "--file", &f, "--ideal", "J", "--prime", "0"]);
    assert_eq!(code, EXIT_OK);
    assert!(doc["result"]["ring"].as_str().unwrap().contains("R"));
}
