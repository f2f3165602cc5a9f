use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouploc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_targets_pass() {
    for (target, group) in [
        ("clifford", "su2"),
        ("rmatrix", "t2"),
        ("rmatrix", "su3"),
        ("restriction", "su3"),
        ("quantization", "su2"),
    ] {
        let out = run(&["verify", target, "--group", group]);
        assert_eq!(
            code(&out),
            0,
            "{target} {group}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report = json(&out);
        assert_eq!(report["passed"], true);
        assert_eq!(report["schema_version"], 1);
        for check in report["checks"].as_array().unwrap() {
            assert!(check["residual"].as_f64().unwrap() < check["threshold"].as_f64().unwrap());
        }
    }
}

#[test]
fn torus_r_matrix_vanishes() {
    let report = json(&run(&["verify", "rmatrix", "--group", "t2"]));
    for check in report["checks"].as_array().unwrap() {
        assert_eq!(check["residual"].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn unsupported_quantization_is_a_config_error() {
    assert_eq!(code(&run(&["verify", "quantization", "--group", "su3"])), 2);
}

#[test]
fn localize_class_against_characters() {
    let out = run(&[
        "localize",
        "--model",
        "c-theta:1.0",
        "--lambda-max",
        "20",
        "--oracle",
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    for row in rows {
        assert!(row["abs_diff"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn localize_orbit_against_sphere_quadrature() {
    let out = run(&[
        "localize",
        "--model",
        "orbit:1.5",
        "--xi-grid",
        "0.1:5:0.1",
        "--oracle",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("p1,value_re"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 50);
    for row in rows {
        let abs: f64 = row.split(',').nth(7).unwrap().parse().unwrap();
        assert!(abs < 1e-8, "{row}");
    }
}

#[test]
fn localize_single_row() {
    let report = json(&run(&[
        "localize",
        "--model",
        "c-theta:1.0",
        "--lambda-max",
        "0",
    ]));
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    let value = rows[0]["value_re"].as_f64().unwrap();
    assert!((value - 1f64.sin() / std::f64::consts::PI).abs() < 1e-14);
}

#[test]
fn oracle_discrepancy_fails_with_named_identity() {
    let out = run(&[
        "localize",
        "--model",
        "c-theta:1.0",
        "--lambda-max",
        "5",
        "--oracle",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr)
        .contains("violated: fixed-point value agrees with the oracle"));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn pairing_is_cauchy() {
    let out = run(&[
        "pairing",
        "--model",
        "c-theta:1.0",
        "--C",
        "1.0",
        "--sigma",
        "0.01",
        "--box",
        "64",
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert!(report["cauchy_difference"].as_f64().unwrap() < 1e-4);
    assert_eq!(report["converged"], true);
}

#[test]
fn pairing_outside_the_class_is_negligible() {
    let report = json(&run(&[
        "pairing",
        "--model",
        "c-theta:1.0",
        "--C",
        "2.0",
        "--sigma",
        "0.01",
        "--box",
        "64",
    ]));
    assert!(report["value_re"].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn non_convergent_pairing_keeps_diagnostics() {
    let out = run(&[
        "pairing",
        "--model",
        "c-theta:1.0",
        "--sigma",
        "0.0001",
        "--box",
        "2",
    ]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["converged"], false);
    assert!(!report["rows"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not Cauchy"));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        vec!["localize", "--model", "sphere"],
        vec!["localize", "--cocycle", "volume"],
        vec!["localize", "--xi-grid", "1:0:0.1"],
        vec!["localize", "--lambda-max", "3", "--xi-grid", "0.1:1:0.1"],
        vec!["pairing", "--sigma", "-1"],
        vec!["verify", "clifford", "--group", "so3"],
        vec!["localize", "--config", "/nonexistent/run.conf"],
        vec!["fourier", "--source", "gaussian"],
    ] {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "localize",
        "--model",
        "orbit:0.7",
        "--xi-grid",
        "0.2:2:0.2",
        "--oracle",
        "--format",
        "both",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn flags_override_the_config_file() {
    let path = scratch("override.conf");
    std::fs::write(&path, "# class run\nmodel = c-theta:0.5\nlambda-max = 3\n").unwrap();
    let file_only = json(&run(&["localize", "--config", path.to_str().unwrap()]));
    assert_eq!(file_only["rows"].as_array().unwrap().len(), 4);
    assert_eq!(file_only["metadata"]["model"], "c-theta:0.5");
    let overridden = json(&run(&[
        "localize",
        "--config",
        path.to_str().unwrap(),
        "--lambda-max",
        "5",
    ]));
    assert_eq!(overridden["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn out_writes_both_formats() {
    let stem = scratch("orbit-report");
    let out = run(&[
        "localize",
        "--model",
        "orbit:1.0",
        "--xi-grid",
        "0.5:1:0.5",
        "--format",
        "both",
        "--out",
        stem.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let json_text = std::fs::read_to_string(stem.with_extension("json")).unwrap();
    let csv_text = std::fs::read_to_string(stem.with_extension("csv")).unwrap();
    assert_eq!(
        serde_json::from_str::<Value>(&json_text).unwrap()["rows"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
    assert_eq!(csv_text.lines().count(), 3);
}

#[test]
fn fourier_tables() {
    let out = run(&[
        "fourier",
        "--group",
        "su2",
        "--source",
        "point-mass",
        "--C",
        "0.0",
        "--box",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# rank=1 box=4 hardy=true"));
    let table = json(&run(&[
        "fourier",
        "--group",
        "su3",
        "--source",
        "character:1,0",
        "--box",
        "3",
    ]));
    for row in table["coefficients"].as_array().unwrap() {
        let expected = if row["weight"] == serde_json::json!([2, 1]) {
            1.0 / 3.0
        } else {
            0.0
        };
        assert!(
            (row["re"].as_f64().unwrap() - expected).abs() < 1e-10,
            "{row}"
        );
        assert!(row["im"].as_f64().unwrap().abs() < 1e-10);
    }
}
