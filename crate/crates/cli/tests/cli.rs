use std::process::{Command, Output};

use padic_core::HenselCertificate;

fn padic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = padic(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end_matches('\n').to_string()
}

fn code(args: &[&str]) -> (i32, String) {
    let out = padic(args);
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn valuation_and_norm() {
    assert_eq!(ok(&["val", "-p", "2", "3/8"]), "-3");
    assert_eq!(ok(&["val", "-p", "5", "--", "-50/3"]), "2");
    assert_eq!(ok(&["norm", "-p", "5", "0"]), "0");
    assert_eq!(ok(&["norm", "-p", "5", "50"]), "1/25 = 5^-2 = 0.04");
    assert_eq!(ok(&["norm", "-p", "2", "3/8"]), "8 = 2^3 = 8");
}

#[test]
fn non_prime_and_parse_errors() {
    let (c, err) = code(&["val", "-p", "4", "2"]);
    assert_eq!(c, 3);
    assert!(err.contains("p must be prime"));
    assert_eq!(code(&["val", "-p", "5", "1/0"]).0, 2);
    assert_eq!(code(&["val", "-p", "five", "1"]).0, 2);
    assert_eq!(code(&["val", "2"]).0, 2);
    assert_eq!(code(&["digits", "-p", "5", "-N", "0", "1"]).0, 2);
    assert_eq!(code(&["eval", "-p", "5", "--poly", "x^^2", "1"]).0, 2);
    assert_eq!(code(&["lift", "-p", "5", "--poly", "x^2 - 6", "--seed", "1"]).0, 2);
}

#[test]
fn digits_layout() {
    assert_eq!(ok(&["digits", "-p", "5", "-N", "6", "--", "-1"]), "...444444");
    assert_eq!(ok(&["digits", "-p", "5", "-N", "6", "1/3"]), "...313132");
    assert_eq!(ok(&["digits", "-p", "3", "-N", "3", "9"]), "...001 × 3^2");
    assert_eq!(ok(&["digits", "-p", "5", "-N", "3", "1/10"]), "...223 × 5^-1");
    let (c, err) = code(&["digits", "-p", "5", "0"]);
    assert_eq!(c, 4);
    assert!(err.contains("zero has no canonical expansion"));
}

#[test]
fn digits_json_is_little_endian() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["--json", "digits", "-p", "5", "-N", "6", "1/3"])).unwrap();
    assert_eq!(v["digits"], serde_json::json!([2, 3, 1, 3, 1, 3]));
    assert_eq!(v["start"], 0);
    assert_eq!(v["display"], "...313132");
}

#[test]
fn eval_reports_precision() {
    let out = ok(&["eval", "-p", "5", "-N", "6", "--poly", "x^2 - 6", "1"]);
    assert_eq!(out, "p=5 form=unit v=1 unit=3124 N=5\n...44444 × 5^1");
    let out = ok(&["eval", "-p", "5", "-N", "4", "--poly", "x^2 - 6", "516"]);
    assert_eq!(out, "p=5 form=zero-at-least v=4");
}

#[test]
fn lift_sqrt6() {
    let text = ok(&["lift", "-p", "5", "-K", "4", "--poly", "x^2 - 6", "--seed", "1"]);
    assert!(text.contains("root: 516"));
    assert!(text.contains("  n=2 a_n="));
    assert!(text.contains("checks_passed: true"));

    let json = ok(&["lift", "-p", "5", "-K", "4", "--poly", "x^2 - 6", "--seed", "1", "--json"]);
    let cert = HenselCertificate::from_json(&json).unwrap();
    assert_eq!(cert.root, 516.into());
    assert_eq!(cert.to_json(), json);
    assert_eq!(cert.to_text().trim_end(), text);
}

#[test]
fn lift_degenerate_and_failing() {
    let text = ok(&["lift", "-p", "5", "-K", "3", "--poly", "x^2 - 1", "--seed", "1"]);
    assert!(text.contains("degenerate: true"));
    assert!(text.contains("root: 1"));

    let (c, err) = code(&["lift", "-p", "2", "-K", "5", "--poly", "x^2 - 3", "--seed", "1"]);
    assert_eq!(c, 5);
    assert!(err.contains("f(1) = -2 (m = 1)"), "{err}");
    assert!(err.contains("f'(1) = 2 (e = 1)"), "{err}");
    assert_eq!(code(&["lift", "-p", "5", "-K", "3", "--poly", "x^2 + 1", "--seed", "1"]).0, 5);
}

#[test]
fn oracle_output() {
    assert_eq!(ok(&["oracle", "-p", "5", "-k", "4", "--poly", "x^2 - 6"]), "109 516");
    assert_eq!(ok(&["oracle", "-p", "3", "-k", "2", "--poly", "x^2 + 1"]), "");
    let (c, _) = code(&["oracle", "-p", "2", "-k", "30", "--poly", "x"]);
    assert_eq!(c, 7);
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["--json", "oracle", "-p", "5", "-k", "4", "--poly", "x^2 - 6"])).unwrap();
    assert_eq!(v["roots"], serde_json::json!([109, 516]));
}

#[test]
fn crosscheck_passes() {
    assert_eq!(ok(&["crosscheck", "-p", "5", "-k", "4", "--trials", "1000"]), "p=5 k=4 trials=1004 mismatches=0");
    let v: serde_json::Value = serde_json::from_str(&ok(&["crosscheck", "-p", "2", "-k", "6", "--json"])).unwrap();
    assert_eq!(v["mismatches"], serde_json::json!([]));
}
