//! End-to-end tests of the cl3 binary: worked examples, JSON schema
//! conformance, exit codes, configuration handling, and output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn cl3() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cl3"))
}

fn run(args: &[&str]) -> Output {
    cl3().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file exists"))
        .expect("schema parses")
}

fn assert_valid(schema_name: &str, instance: &serde_json::Value) {
    let schema = schema(schema_name);
    if let Err(error) = jsonschema::validate(&schema, instance) {
        panic!("{schema_name} validation failed: {error}");
    }
}

#[test]
fn compton_backscatter_natural_units() {
    let out = run(&[
        "compton",
        "--lambda-i",
        "1",
        "--theta",
        "3.14159265",
        "--m",
        "1",
        "--units",
        "natural",
    ]);
    let json = stdout_json(&out);
    assert_valid("compton.json", &json);
    // theta ~ pi: shift = 2 h / (m c) = 2 in natural units.
    assert!((json["shift"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((json["lambda_f"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert!(json["ledger_residual_norm"].as_f64().unwrap() < 1e-10);
}

#[test]
fn boost_field_induces_expected_magnetic_field() {
    let out = run(&[
        "boost",
        "--speed",
        "0.6",
        "--axis",
        "1,0,0",
        "--field",
        r#"{"E":[0,1,0],"B":[0,0,0]}"#,
    ]);
    let json = stdout_json(&out);
    assert_valid("boost.json", &json);
    let e_y = json["output"]["E"][1].as_f64().unwrap();
    let b_z = json["output"]["B"][2].as_f64().unwrap();
    assert!((e_y - 1.25).abs() < 1e-12, "E'_y = {e_y}");
    assert!((b_z + 0.75).abs() < 1e-12, "B'_z = {b_z}");
    assert!((json["gamma"].as_f64().unwrap() - 1.25).abs() < 1e-12);
}

#[test]
fn boost_event_reports_conjugation_method() {
    let out = run(&[
        "boost",
        "--speed",
        "0.6",
        "--axis",
        "1,0,0",
        "--event",
        r#"{"x":[1.0,1.0,0.0],"t":[0.0,0.0,-0.8],"c":1.0}"#,
    ]);
    let json = stdout_json(&out);
    assert_valid("boost.json", &json);
    assert_eq!(json["method"], "conjugation");
    // gamma (x1 - v t) with t read along -e3: 1.25 (1 - 0.6 * 0.8) = 0.65.
    let x1 = json["output"]["x"][0].as_f64().unwrap();
    assert!((x1 - 0.65).abs() < 1e-12, "x1' = {x1}");
}

#[test]
fn boost_event_degenerate_position_uses_fallback() {
    let out = run(&[
        "boost",
        "--phi",
        "0.5",
        "--axis",
        "1,0,0",
        "--event",
        r#"{"x":[2.0,0.0,0.0],"t":[0.0,1.0,0.0],"c":1.0}"#,
    ]);
    let json = stdout_json(&out);
    assert_valid("boost.json", &json);
    assert_eq!(json["method"], "components");
}

#[test]
fn boost_multivector_accepts_json_and_csv_forms() {
    let json_in = run(&[
        "boost", "--phi", "0.8", "--axis", "0,0,1", "--multivector",
        r#"{"s":1,"v":[0.5,0,0],"b":[0,0.25,0],"p":-1}"#,
    ]);
    let json = stdout_json(&json_in);
    assert_valid("boost.json", &json);
    assert_eq!(json["kind"], "multivector");
    // The (e1, e31) pair mixes hyperbolically under a boost along e3.
    let cosh = 0.8f64.cosh();
    let sinh = 0.8f64.sinh();
    let v1 = json["output"]["v"][0].as_f64().unwrap();
    let b2 = json["output"]["b"][1].as_f64().unwrap();
    assert!((v1 - (0.5 * cosh - 0.25 * sinh)).abs() < 1e-12);
    assert!((b2 - (0.25 * cosh - 0.5 * sinh)).abs() < 1e-12);

    // CSV input with CSV output round-trips through the same transform.
    let csv_out = run(&[
        "boost", "--phi", "0.8", "--axis", "0,0,1", "--format", "csv", "--multivector",
        "1,0.5,0,0,0,0.25,0,-1",
    ]);
    assert!(csv_out.status.success());
    let row = String::from_utf8(csv_out.stdout).unwrap();
    let fields: Vec<f64> = row.trim().split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(fields.len(), 8);
    assert!((fields[1] - v1).abs() < 1e-15);
    assert!((fields[5] - b2).abs() < 1e-15);

    // Malformed CSV rows are usage errors.
    let bad = run(&["boost", "--phi", "0.8", "--axis", "0,0,1", "--multivector", "1,2,3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn rotate_quarter_turn() {
    let out = run(&["rotate", "--vector", "1,0,0", "--theta", "90", "--deg", "--axis", "0,0,1"]);
    let json = stdout_json(&out);
    assert_valid("rotate.json", &json);
    let rotated = json["rotated"].as_array().unwrap();
    assert!(rotated[0].as_f64().unwrap().abs() < 1e-12);
    assert!((rotated[1].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn check_reports_match_schema_and_pass() {
    let out = run(&["check", "--suite", "algebra", "--seed", "42"]);
    let json = stdout_json(&out);
    assert_valid("check.json", &json);
    assert!(json.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn check_output_is_deterministic() {
    let a = run(&["check", "--suite", "all", "--seed", "42"]);
    let b = run(&["check", "--suite", "all", "--seed", "42"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "same argv and seed must be byte-identical");
}

#[test]
fn wavepacket_fit_matches_schema() {
    let out = run(&[
        "wavepacket", "--sigma", "1", "--k0", "10", "--m", "1", "--hbar", "1", "--t", "1.0",
        "--fit",
    ]);
    let json = stdout_json(&out);
    assert_valid("wavepacket_fit.json", &json);
    let rate = json["phase_rate_fit"].as_f64().unwrap();
    let w0 = json["w0"].as_f64().unwrap();
    assert!((w0 - 50.0).abs() < 1e-12);
    assert!((rate - w0).abs() / w0 < 0.01);
}

#[test]
fn wavepacket_csv_has_expected_shape() {
    let out = run(&[
        "wavepacket", "--sigma", "1", "--k0", "10", "--m", "1", "--hbar", "1", "--t", "0.5",
        "--samples", "20",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,re,im,modulus,analytic_modulus");
    assert_eq!(lines.len(), 21);
    // Numerical and analytic moduli agree in the CSV too; the absolute
    // floor covers the far tail where the signal sits near the quadrature
    // noise level.
    for line in &lines[1..] {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields.len(), 5);
        let (modulus, analytic) = (fields[3], fields[4]);
        assert!((modulus - analytic).abs() <= 1e-8 * analytic + 1e-12);
    }
}

#[test]
fn compton_sweep_csv() {
    let out = run(&[
        "compton", "--lambda-i", "1", "--theta", "0", "--m", "1", "--sweep", "10",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,lambda_f,shift,ledger_residual_norm");
    assert_eq!(lines.len(), 11);
}

#[test]
fn usage_errors_exit_two() {
    // Unknown flag.
    let out = run(&["compton", "--nope", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // Malformed field JSON names the offending field.
    let out = run(&[
        "boost", "--speed", "0.5", "--axis", "1,0,0", "--field", r#"{"E":[0,1,0],"Q":[0,0,0]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("Q"), "stderr should name the field: {stderr}");

    // Superluminal speed.
    let out = run(&[
        "boost", "--speed", "1.5", "--axis", "1,0,0", "--field", r#"{"E":[0,1,0],"B":[0,0,0]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Missing boost parameter.
    let out = run(&[
        "boost", "--axis", "1,0,0", "--field", r#"{"E":[0,1,0],"B":[0,0,0]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_sets_units_and_rejects_unknown_keys() {
    let dir = std::env::temp_dir();
    let good = dir.join("cl3_cli_good.conf");
    std::fs::write(&good, "units = si\n").unwrap();
    let out = cl3()
        .args(["compton", "--lambda-i", "1e-11", "--theta", "3.141592653589793", "--m", "9.1093837015e-31"])
        .arg("--config")
        .arg(&good)
        .output()
        .unwrap();
    let json = stdout_json(&out);
    // Backscatter shift = 2 h / (m c) ~ 4.85 pm in SI units.
    let shift = json["shift"].as_f64().unwrap();
    assert!((shift - 4.853e-12).abs() < 1e-14, "shift = {shift}");
    std::fs::remove_file(&good).ok();

    let bad = dir.join("cl3_cli_bad.conf");
    std::fs::write(&bad, "does_not_exist = 1\n").unwrap();
    let out = cl3()
        .args(["check", "--suite", "algebra"])
        .arg("--config")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does_not_exist"));
    std::fs::remove_file(&bad).ok();
}

#[test]
fn environment_variable_sets_default_units() {
    let out = cl3()
        .env("CL3_UNITS", "si")
        .args(["boost", "--speed", "0.5", "--axis", "0,1,0", "--field", r#"{"E":[1,0,0],"B":[0,0,0]}"#])
        .output()
        .unwrap();
    let json = stdout_json(&out);
    assert_eq!(json["units"], "si");
    // Explicit flag still wins.
    let out = cl3()
        .env("CL3_UNITS", "si")
        .args([
            "boost", "--units", "natural", "--speed", "0.5", "--axis", "0,1,0", "--field",
            r#"{"E":[1,0,0],"B":[0,0,0]}"#,
        ])
        .output()
        .unwrap();
    let json = stdout_json(&out);
    assert_eq!(json["units"], "natural");
}

#[test]
fn check_failure_exits_one() {
    // An absurdly tight tolerance forces failures in the tolerance-scaled
    // checks.
    let out = run(&["check", "--suite", "compton", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid("check.json", &json);
    assert!(json.as_array().unwrap().iter().any(|r| r["pass"] == false));
}
