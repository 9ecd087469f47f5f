//! End-to-end tests of the command-line surface: output formats, config
//! handling, and exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn freeprob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freeprob"))
        .args(args)
        .env_remove("FREEPROB_CONFIG")
        .output()
        .expect("binary should spawn")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be utf-8")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("freeprob_cli_{}_{name}", std::process::id()))
}

#[test]
fn cumulants_secant_prints_pinned_line() {
    let out = freeprob(&["cumulants", "secant", "--order", "10"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert_eq!(stdout_of(&out).trim(), "0 1 0 3 0 38 0 947 0 37394");
}

#[test]
fn moments_file_output_is_one_rational_per_line() {
    let path = temp_path("moments.txt");
    let out = freeprob(&[
        "moments",
        "secant",
        "--order",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let lines: Vec<String> = fs::read_to_string(&path)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    fs::remove_file(&path).ok();
    assert_eq!(lines, ["0", "1", "0", "5", "0", "61"]);
}

#[test]
fn eval_g_prints_value_and_error_estimate() {
    let out = freeprob(&["eval-g", "logistic", "--z", "0+1i"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let line = stdout_of(&out);
    let fields: Vec<&str> = line.trim().split(',').collect();
    assert_eq!(fields.len(), 3, "line: {line}");
    let re: f64 = fields[0].parse().unwrap();
    let im: f64 = fields[1].parse().unwrap();
    assert!(re.abs() < 1e-12);
    assert!((im - -0.9348022005446793).abs() < 1e-12);
}

#[test]
fn freeconv_semicircle_matches_pinned_moments() {
    let out = freeprob(&["freeconv", "semicircle", "semicircle", "--order", "6"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert_eq!(stdout_of(&out).trim(), "0 2 0 8 0 40");
}

#[test]
fn psd_check_accepts_secant_and_rejects_bad_file() {
    let out = freeprob(&["psd-check", "secant", "--size", "3"]);
    assert!(out.status.success(), "{}", stderr_of(&out));

    let path = temp_path("bad_cumulants.txt");
    fs::write(&path, "0\n-1\n0\n-1\n").unwrap();
    let out = freeprob(&["psd-check", path.to_str().unwrap(), "--size", "2"]);
    fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1), "{}", stderr_of(&out));
}

#[test]
fn charfn_json_reports_closed_form() {
    let out = freeprob(&["charfn", "--t", "0.5", "--zeta", "1", "--json"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let closed = v["closed_form"].as_f64().unwrap();
    assert!((closed - 0.886819).abs() < 1e-5);
    let re = v["re"].as_f64().unwrap();
    assert!((re - closed).abs() < 1e-6);
}

#[test]
fn scan_curve_csv_round_trips_at_full_precision() {
    let out = freeprob(&["scan-curve", "logistic", "--depth", "0.5", "--points", "40"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,re_G,im_G,re_F,im_F");
    let mut rows = 0;
    let mut last_x = f64::NEG_INFINITY;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5, "row: {line}");
        for token in &fields {
            let value: f64 = token.parse().unwrap();
            assert_eq!(format!("{value:.16e}"), *token, "token {token}");
        }
        let x: f64 = fields[0].parse().unwrap();
        assert!(x > last_x, "rows must be sorted by x");
        last_x = x;
        rows += 1;
    }
    // --points counts samples per side of the curve
    assert_eq!(rows, 80);
}

#[test]
fn check_fid_exit_code_follows_verdict() {
    let out = freeprob(&["check-fid", "meixner:t=0.5", "--depth", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["overall_pass"], serde_json::Value::Bool(true));

    let out = freeprob(&["check-fid", "twopoint", "--depth", "0.5"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr_of(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["overall_pass"], serde_json::Value::Bool(false));
}

#[test]
fn check_fid_report_is_deterministic() {
    let a = freeprob(&["check-fid", "meixner:t=0.3", "--depth", "0.3"]);
    let b = freeprob(&["check-fid", "meixner:t=0.3", "--depth", "0.3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout_of(&a), stdout_of(&b));
}

#[test]
fn config_file_with_unknown_key_names_the_known_ones() {
    let path = temp_path("bad_key.conf");
    fs::write(&path, "grid.pts = 7\n").unwrap();
    let out = freeprob(&[
        "--config",
        path.to_str().unwrap(),
        "cumulants",
        "secant",
        "--order",
        "4",
    ]);
    fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("grid.points"), "stderr: {err}");
}

#[test]
fn config_file_with_invalid_value_is_rejected() {
    let path = temp_path("bad_value.conf");
    fs::write(&path, "grid.points = -5\n").unwrap();
    let out = freeprob(&[
        "--config",
        path.to_str().unwrap(),
        "cumulants",
        "secant",
        "--order",
        "4",
    ]);
    fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
}

#[test]
fn empty_config_file_means_defaults() {
    let path = temp_path("empty.conf");
    fs::write(&path, "").unwrap();
    let out = freeprob(&[
        "--config",
        path.to_str().unwrap(),
        "cumulants",
        "secant",
        "--order",
        "10",
    ]);
    fs::remove_file(&path).ok();
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert_eq!(stdout_of(&out).trim(), "0 1 0 3 0 38 0 947 0 37394");
}

#[test]
fn config_can_come_from_the_environment() {
    let path = temp_path("env.conf");
    fs::write(&path, "quadrature.tol = 1e-9\nseries.tol = 1e-11\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_freeprob"))
        .args(["eval-g", "logistic", "--z", "0+1i"])
        .env("FREEPROB_CONFIG", &path)
        .output()
        .expect("binary should spawn");
    fs::remove_file(&path).ok();
    assert!(out.status.success(), "{}", stderr_of(&out));
}

#[test]
fn usage_errors_exit_with_two() {
    let out = freeprob(&["eval-g", "no_such_measure", "--z", "0+1i"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));

    let out = freeprob(&["eval-g", "logistic", "--z", "not a number"]);
    assert_eq!(out.status.code(), Some(2));

    let out = freeprob(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));

    // cataloged but unimplemented tags get a usage error, not a crash
    let out = freeprob(&["eval-g", "gaussian", "--z", "0+1i"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("not implemented"));
}

#[test]
fn lower_half_plane_points_are_domain_errors() {
    let out = freeprob(&["eval-g", "logistic", "--z", "1-2i", "--method", "quadrature"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
}
