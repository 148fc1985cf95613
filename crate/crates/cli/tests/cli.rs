//! Golden-file tests for the command-line interface: byte-for-byte output
//! and exit codes for fixed arguments.

use std::process::{Command, Output};

fn ngon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ngon")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn radical_5_text_golden() {
    let out = ngon(&["radical", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(-1 + sqrt(5))/4\n");
}

#[test]
fn radical_5_latex_and_sexpr() {
    let out = ngon(&["radical", "5", "--format", "latex"]);
    assert_eq!(stdout(&out), "\\frac{-1+\\sqrt{5}}{4}\n");
    let out = ngon(&["radical", "5", "--format", "sexpr"]);
    assert_eq!(stdout(&out), "(div (add -1 (sqrt 5)) 4)\n");
}

#[test]
fn radical_3_folds_to_rational() {
    let out = ngon(&["radical", "3"]);
    assert_eq!(stdout(&out), "-1/2\n");
}

#[test]
fn radical_output_is_deterministic() {
    let a = stdout(&ngon(&["radical", "17", "--format", "sexpr"]));
    let b = stdout(&ngon(&["radical", "17", "--format", "sexpr"]));
    assert_eq!(a, b);
    assert!(!a.trim().is_empty());
}

#[test]
fn radical_verify_numeric_prints_intervals() {
    let out = ngon(&["radical", "17", "--verify", "numeric", "--precision", "64"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("value     [0.93247222940435580"), "got: {text}");
    assert!(text.contains("reference [0.93247222940435580"), "got: {text}");
    assert!(text.contains("numeric check: pass"));
}

#[test]
fn radical_rejects_non_fermat_and_gated_65537() {
    let out = ngon(&["radical", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ngon(&["radical", "65537"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ngon(&["radical", "65537", "--verify", "exact", "--enable-65537"]);
    assert_eq!(out.status.code(), Some(2), "exact verification is capped at p = 257");
}

#[test]
fn constructible_exit_codes_and_text() {
    let out = ngon(&["constructible", "289"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "n = 289: not constructible (obstruction: 17^2 divides 289)\n");

    let out = ngon(&["constructible", "60"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n = 60: constructible (60 = 2^2 * 3 * 5)\n");

    let out = ngon(&["constructible", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "n = 7: not constructible (obstruction: 7 divides 7)\n");

    let out = ngon(&["constructible", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn constructible_json_round_trips() {
    let out = ngon(&["constructible", "289", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["n"], 289);
    assert_eq!(doc["constructible"], false);
    assert_eq!(doc["two_power_part"], 0);
    assert_eq!(doc["obstruction"]["kind"], "repeated_odd_prime");
    assert_eq!(doc["obstruction"]["prime"], 17);
    assert_eq!(doc["obstruction"]["divisor"], 289);

    let out = ngon(&["constructible", "60", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["constructible"], true);
    assert_eq!(doc["fermat_primes"], serde_json::json!([3, 5]));
    assert_eq!(doc["obstruction"], serde_json::Value::Null);
}

#[test]
fn primitive_root_golden() {
    let out = ngon(&["primitive-root", "13"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
    let out = ngon(&["primitive-root", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn phi_golden() {
    let out = ngon(&["phi", "289"]);
    assert_eq!(stdout(&out), "272\n");
    let out = ngon(&["phi", "1"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn periods_level_listing() {
    let out = ngon(&["periods", "5", "--level", "1", "--precision", "64"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("p = 5, g = 2, level 1: 2 period(s)\n"));
    assert!(text.contains("0: terms = [1, 4], value = [0.61803398874989484"), "got: {text}");
    assert!(text.contains("1: terms = [2, 3], value = [-1.6180339887498948"), "got: {text}");
    // level out of range
    let out = ngon(&["periods", "5", "--level", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn periods_json_shape() {
    let out = ngon(&["periods", "17", "--level", "1", "--format", "json", "--precision", "64"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["p"], 17);
    assert_eq!(doc["generator"], 3);
    let periods = doc["periods"].as_array().unwrap();
    assert_eq!(periods.len(), 2);
    assert_eq!(periods[0]["terms"], serde_json::json!([1, 2, 4, 8, 9, 13, 15, 16]));
}

#[test]
fn eisenstein_golden() {
    let out = ngon(&["eisenstein", "13"]);
    assert_eq!(
        stdout(&out),
        "Phi_13(x+1): Eisenstein criterion holds at q = 13; Phi_13 is irreducible over Q\n"
    );
    let out = ngon(&["eisenstein", "17", "--square", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["index"], 289);
    assert_eq!(doc["eisenstein"], true);
    let out = ngon(&["eisenstein", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cos_commands() {
    let out = ngon(&["cos", "4"]);
    assert_eq!(stdout(&out), "0\n");
    let out = ngon(&["cos", "8", "--format", "sexpr"]);
    assert_eq!(stdout(&out), "(sqrt 1/2)\n");
    // non-constructible n is a usage error with the obstruction named
    let out = ngon(&["cos", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("3^2"), "got: {err}");
    // the sexpr output of a composite case round-trips through the parser
    let out = ngon(&["cos", "15", "--format", "sexpr"]);
    let text = stdout(&out);
    let parsed = ngon_core::parse_sexpr(text.trim()).expect("parses back");
    let value = parsed.eval_interval(96).unwrap();
    assert!(value.intersect(&ngon_core::cos_two_pi(1, 15, 96)).is_some());
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = ngon(&["frobnicate", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
