use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyineq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn float(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn schur_equality_case() {
    let report = json(&[
        "schur",
        "--poly",
        r#"{"roots":[[-1,0],[-1,0],[-1,0]],"leading":[1,0]}"#,
        "--weight",
        "power:1",
    ]);
    assert_eq!(report["equality_case"], Value::Bool(true));
    assert_eq!(report["holds"], Value::Bool(true));
    // n = 3, alpha = 1: a = 3/5 and the constant is 2^3 / ((8/5)^3 (16/25)).
    let constant = 8.0 / (1.6f64.powi(3) * 0.64);
    assert!((float(&report["constant"]) - constant).abs() <= 1e-12);
    assert!((float(&report["ratio"]) - constant).abs() <= 1e-9);
}

#[test]
fn nonconvex_example() {
    let report = json(&["reproduce-nonconvex", "--a", "0.5"]);
    assert!((float(&report["root_modulus"]) - (2.0f64 / 3.0).sqrt()).abs() <= 1e-10);
    assert_eq!(report["lorentz_degree_r"], 3);
    assert_eq!(report["r_zero_free"], Value::Bool(false));
    let r: Vec<f64> = report["r_coeffs"].as_array().unwrap().iter().map(float).collect();
    assert_eq!(r, vec![1.0, -0.5, 1.5]);
}

#[test]
fn halasz_csv_row() {
    let out = run(&["halasz", "--n", "41", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "n,circle_norm,P_at_minus1,dP_at_minus1,ratio_nlogn");
    let cells: Vec<f64> = lines[1].split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(cells[0], 41.0);
    assert!((cells[2] - 2.0).abs() <= 1e-12);
    assert!(cells[4] > 0.0);
}

#[test]
fn floats_carry_seventeen_digits() {
    let out = run(&["schur-constant", "--n", "2", "--weight", "power:0.5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    // The maximizer 2/3 is not exactly representable, so all 17 digits show.
    let line = text
        .lines()
        .find(|l| l.trim_start().starts_with("\"a\":"))
        .unwrap();
    let digits = line.split(": ").nth(1).unwrap().trim_end_matches(',');
    assert_eq!(digits.trim_start_matches("0.").len(), 17, "{line}");
    assert!((digits.parse::<f64>().unwrap() - 2.0 / 3.0).abs() <= 1e-15);
}

#[test]
fn roots_output_round_trips() {
    let poly = r#"{"coeffs": [[2, 0.5], [-1, 1], [0.25, 0], [1, -0.5]]}"#;
    let roots = run(&["roots", "--poly", poly]);
    assert!(roots.status.success());
    let emitted = String::from_utf8(roots.stdout).unwrap();
    let direct = json(&["norm", "--poly", poly, "--weight", "logbern"]);
    let again = json(&["norm", "--poly", &emitted, "--weight", "logbern"]);
    // Norm values agree to 1e-12. A maximizer is only determined to about the
    // square root of the rounding error, since the maximum is flat.
    for (key, field, tol) in [
        ("norm", "value", 1e-12),
        ("weighted_norm", "value", 1e-12),
        ("norm", "argmax", 1e-7),
        ("weighted_norm", "argmax", 1e-7),
    ] {
        let (x, y) = (float(&direct[key][field]), float(&again[key][field]));
        assert!(
            (x - y).abs() <= tol * x.abs().max(1.0),
            "{key}.{field}: {x} vs {y}"
        );
    }
    let schur_direct = json(&[
        "schur",
        "--poly",
        r#"{"roots": [[1.5, 0.2], [-1, 0], [0.3, -1.1]]}"#,
        "--weight",
        "power:0.5",
    ]);
    let emitted = String::from_utf8(
        run(&[
            "roots",
            "--poly",
            r#"{"roots": [[1.5, 0.2], [-1, 0], [0.3, -1.1]]}"#,
        ])
        .stdout,
    )
    .unwrap();
    let schur_again = json(&["schur", "--poly", &emitted, "--weight", "power:0.5"]);
    for field in ["constant", "norm_p", "norm_pw", "ratio"] {
        let (x, y) = (float(&schur_direct[field]), float(&schur_again[field]));
        assert!((x - y).abs() <= 1e-12 * x.abs(), "{field}: {x} vs {y}");
    }
}

#[test]
fn runs_are_byte_identical() {
    let args = [
        "extremal",
        "--n",
        "2",
        "--weight",
        "power:0.5",
        "--trials",
        "8",
        "--seed",
        "5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = run(&[
        "extremal",
        "--n",
        "2",
        "--weight",
        "power:0.5",
        "--trials",
        "8",
        "--seed",
        "6",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn quick_selftest_is_deterministic() {
    let a = run(&["selftest", "--quick", "--seed", "3"]);
    let b = run(&["selftest", "--quick", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
            .count(),
        12
    );
    let code = a.status.code().unwrap();
    let all_pass = text.lines().all(|l| !l.starts_with("FAIL"));
    assert_eq!(code == 0, all_pass);
}

fn assert_fails(args: &[&str], code: i32) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_with_two() {
    assert_fails(&["frobnicate"], 2);
    assert_fails(&["norm", "--poly", r#"{"coeffs":[1]}"#, "--bogus"], 2);
    assert_fails(&["norm", "--poly", "not json"], 2);
    assert_fails(&["norm", "--poly", r#"{"coeffs":[1],"roots":[]}"#], 2);
    assert_fails(
        &["schur", "--poly", r#"{"coeffs":[1,1]}"#, "--weight", "gauss"],
        2,
    );
    assert_fails(
        &[
            "schur",
            "--poly",
            r#"{"coeffs":[1,1]}"#,
            "--weight",
            "power:1",
            "--csv",
        ],
        2,
    );
    assert_fails(&["halasz", "--n", "2"], 2);
    assert_fails(&["reproduce-nonconvex", "--a", "1.5"], 2);
    assert_fails(&["markov", "--n", "2"], 2);
    assert_fails(
        &[
            "schur",
            "--poly",
            "{\"coeffs\":[1,1]}",
            "--weight",
            "table:/nonexistent/table",
        ],
        2,
    );
}

#[test]
fn class_failures_exit_with_three() {
    // Root at 1/2 lies inside the disk.
    assert_fails(
        &["schur", "--poly", r#"{"roots":[[0.5,0]]}"#, "--weight", "power:1"],
        3,
    );
    // Sign change inside (-1, 1).
    assert_fails(&["lorentz-degree", "--poly", r#"{"coeffs":[[0,0],[1,0]]}"#], 3);
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("selftest"));
}
