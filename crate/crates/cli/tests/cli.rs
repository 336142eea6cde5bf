//! End-to-end tests of the qspectra binary: flag handling, exit codes,
//! output formats.

use std::process::{Command, Output};

fn qspectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = qspectra(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn compute_weights_rank_one_zero() {
    assert_eq!(stdout_of(&["compute", "weights", "--m", "1", "--n", "0"]), "d1 = q^-1\n");
}

#[test]
fn compute_weights_rank_zero_one() {
    assert_eq!(stdout_of(&["compute", "weights", "--m", "0", "--n", "1"]), "dtilde1 = -q\n");
}

#[test]
fn compute_p_image_vanishes_at_equal_rank() {
    assert_eq!(
        stdout_of(&["compute", "p-image", "--m", "1", "--n", "1", "--k", "0"]),
        "0\n"
    );
}

#[test]
fn compute_lr_coefficient() {
    assert_eq!(
        stdout_of(&["compute", "lr", "--lam", "(2,1)", "--mu", "(2,1)", "--nu", "(3,2,1)"]),
        "2\n"
    );
    // JSON partition syntax is accepted too.
    assert_eq!(
        stdout_of(&["compute", "lr", "--lam", "[2,1]", "--mu", "[2,1]", "--nu", "[3,2,1]"]),
        "2\n"
    );
}

#[test]
fn compute_spectral_images() {
    assert_eq!(
        stdout_of(&["compute", "pik", "--m", "1", "--n", "1", "--k", "1"]),
        "q^-1*mu1 - q*nu1\n"
    );
    assert_eq!(
        stdout_of(&["compute", "ak", "--m", "0", "--n", "1", "--k", "2"]),
        "q^2*nu1^2\n"
    );
    assert_eq!(stdout_of(&["compute", "ek", "--m", "2", "--k", "2"]), "mu1*mu2\n");
}

#[test]
fn compute_remaining_quantities_render() {
    assert_eq!(stdout_of(&["compute", "hk", "--m", "1", "--k", "2"]), "mu1^2\n");
    assert_eq!(
        stdout_of(&["compute", "pk-classical", "--m", "2", "--k", "2"]),
        "mu1^2 + mu2^2\n"
    );
    assert_eq!(
        stdout_of(&["compute", "sk", "--m", "0", "--n", "1", "--k", "1"]),
        "-q*nu1\n"
    );
    // Canonical term order keeps spectral variables ahead of formal
    // ones, so the denominator normalizes onto mu1.
    assert_eq!(
        stdout_of(&["compute", "f", "--m", "1", "--n", "0"]),
        "(q^-2*mu1 - z) / (mu1 - z)\n"
    );
    let u = stdout_of(&["compute", "u", "--m", "1", "--n", "0"]);
    assert!(u.contains("q^-1*mu1"), "u output: {u}");
    // schur of the excluded rectangle vanishes
    assert_eq!(
        stdout_of(&["compute", "schur", "--lam", "(2,2)", "--m", "1", "--n", "1"]),
        "0\n"
    );
    // JSON output for compute
    let raw = stdout_of(&["compute", "weights", "--m", "1", "--n", "0", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&raw).expect("valid JSON");
    assert_eq!(parsed["value"][0], "d1 = q^-1");
}

#[test]
fn verify_exit_codes() {
    // Success.
    let ok = qspectra(&["verify", "p0", "--m", "0", "--n", "2"]);
    assert_eq!(ok.status.code(), Some(0));

    // Usage errors.
    for bad in [
        vec!["verify", "no-such-identity"],
        vec!["verify"],
        vec!["compute", "ek", "--m", "zebra"],
        vec!["compute", "no-such-quantity"],
        vec!["compute", "lr", "--lam", "(1,2)"],
        vec!["frobnicate"],
        vec!["verify", "lemma2", "--kmax", "9", "--order", "8", "--m", "1", "--n", "1"],
        vec!["verify", "newton-anti", "--m", "0", "--n", "0"],
    ] {
        let out = qspectra(&bad);
        assert_eq!(out.status.code(), Some(2), "args {bad:?}");
    }
}

#[test]
fn verify_p0_report_shows_closed_form_sides() {
    // p_0 at (0,2) equals q^2 (-2)_q = -q^3 - q; the text report records a
    // passing cell at that rank.
    let text = stdout_of(&["verify", "p0", "--m", "0", "--n", "2"]);
    assert!(text.contains("(m=0, n=2, k=0) pass"));
    let value = stdout_of(&["compute", "p-image", "--m", "0", "--n", "2", "--k", "0"]);
    assert_eq!(value, "-q^3 - q\n");
}

#[test]
fn json_reports_parse_and_follow_the_schema() {
    let raw = stdout_of(&[
        "verify", "lemma2", "--m", "1", "--n", "1", "--kmax", "3", "--format", "json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&raw).expect("valid JSON");
    assert_eq!(parsed["identity"], "lemma2");
    assert_eq!(parsed["mode"], "symbolic");
    assert_eq!(parsed["seed"], 0);
    assert_eq!(parsed["cells"].as_array().unwrap().len(), 3);
    assert_eq!(parsed["summary"]["pass"], 3);
    assert_eq!(parsed["summary"]["fail"], 0);
    for cell in parsed["cells"].as_array().unwrap() {
        assert_eq!(cell["status"], "pass");
        assert!(cell.get("ms").is_none(), "ms only appears with --timing");
        assert!(cell.get("witness").is_none());
    }
    // Field order is part of the contract.
    assert!(raw.starts_with("{\"identity\":\"lemma2\",\"mode\":\"symbolic\",\"seed\":0,\"cells\":[{\"m\":1,\"n\":1,\"k\":1,"));
}

#[test]
fn timing_flag_controls_ms_field() {
    let raw = stdout_of(&[
        "verify", "p0", "--m", "1", "--n", "0", "--format", "json", "--timing",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&raw).expect("valid JSON");
    assert!(parsed["cells"][0].get("ms").is_some());
}

#[test]
fn verify_all_at_one_rank_in_evaluated_mode() {
    let out = qspectra(&[
        "verify", "all", "--m", "1", "--n", "1", "--kmax", "4", "--mode", "evaluated", "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn report_command_emits_json_array_of_all_identities() {
    let raw = stdout_of(&["report", "--order", "4", "--kmax", "4", "--mode", "evaluated"]);
    let parsed: serde_json::Value = serde_json::from_str(&raw).expect("valid JSON");
    let reports = parsed.as_array().expect("array of reports");
    assert_eq!(reports.len(), 16);
    for r in reports {
        assert_eq!(r["summary"]["fail"], 0, "identity {}", r["identity"]);
    }
}

#[test]
fn env_var_sets_default_order() {
    // QSPECTRA_ORDER caps the default kmax, so only 2 cells appear.
    let out = Command::new(env!("CARGO_BIN_EXE_qspectra"))
        .args(["verify", "wronski", "--m", "1", "--n", "1", "--format", "json"])
        .env("QSPECTRA_ORDER", "2")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(parsed["cells"].as_array().unwrap().len(), 2);
}

#[test]
fn help_is_available() {
    let out = stdout_of(&["help"]);
    assert!(out.contains("usage: qspectra"));
    assert!(out.contains("verify <identity>"));
}
