use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(dir: &Path, job: &Value, extra: &[&str]) -> Output {
    let path = dir.join("job.json");
    fs::write(&path, serde_json::to_string_pretty(job).unwrap()).unwrap();
    Command::new(env!("CARGO_BIN_EXE_hyperbolica"))
        .arg("--job")
        .arg(&path)
        .args(extra)
        .env_remove("HYPERBOLICA_MAX_REFINE")
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn unit() -> Value {
    json!({ "lo": { "e1": 0.0, "e2": 0.0 }, "hi": { "e1": 1.0, "e2": 1.0 } })
}

fn cell(a1: f64, a2: f64, b1: f64, b2: f64) -> Value {
    json!({ "lo": { "e1": a1, "e2": a2 }, "hi": { "e1": b1, "e2": b2 } })
}

/// The nine cells of a 3×3 grid on the unit square.
fn nine_cells() -> Vec<Value> {
    let t = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];
    let mut cells = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            cells.push(cell(t[i], t[j], t[i + 1], t[j + 1]));
        }
    }
    cells
}

#[test]
fn weak_example_fails_with_length_mismatch() {
    let dir = TempDir::new().unwrap();
    let job = json!({ "task": "validate-weak", "payload": { "interval": unit(), "subintervals": nine_cells() } });
    let out = run(dir.path(), &job, &[]);
    assert_eq!(out.status.code(), Some(2));
    let report = stdout_json(&out);
    assert_eq!(report["code"], "LengthMismatch");
    assert_eq!(report["status"], "invalid");
}

#[test]
fn regular_example_passes() {
    let dir = TempDir::new().unwrap();
    let job = json!({ "task": "validate-regular", "payload": { "interval": unit(), "cells": nine_cells() } });
    let out = run(dir.path(), &job, &[]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert!((report["total_area"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn riemann_of_identity() {
    let dir = TempDir::new().unwrap();
    let job = json!({ "task": "riemann", "payload": { "F": { "f1": "x", "f2": "y" }, "interval": unit() } });
    let out = run(dir.path(), &job, &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["converged"], true);
    assert!((r["value"]["e1"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((r["value"]["e2"].as_f64().unwrap() - 0.5).abs() < 1e-6);
}

#[test]
fn shared_jump_exits_not_converged() {
    let dir = TempDir::new().unwrap();
    let f = json!({ "f1": "H(x - 0.5)", "f2": "0" });
    let job = json!({ "task": "integrate", "payload": { "F": f, "G": f, "interval": unit(), "mode": "signed" } });
    let out = run(dir.path(), &job, &[]);
    assert_eq!(out.status.code(), Some(3));
    let r = stdout_json(&out);
    assert_eq!(r["converged"], false);
    assert!(r["tag_gap"]["e1"].as_f64().unwrap() >= 0.5);
}

#[test]
fn substitution_in_both_modes() {
    let dir = TempDir::new().unwrap();
    for mode in ["paper-abs", "signed"] {
        let job = json!({ "task": "check-substitution", "payload": {
            "F": { "f1": "x", "f2": "y" },
            "G": { "f1": "x^2", "f2": "y^2" },
            "interval": unit(),
            "tol": 1e-6,
        } });
        let out = run(dir.path(), &job, &["--mode", mode]);
        assert_eq!(out.status.code(), Some(0), "{mode}");
        let r = stdout_json(&out);
        assert_eq!(r["pass"], true);
        assert_eq!(r["g_nondecreasing"], true);
    }
}

#[test]
fn paper_abs_substitution_fails_for_decreasing_integrator() {
    let dir = TempDir::new().unwrap();
    let job = json!({ "task": "check-substitution", "payload": {
        "F": { "f1": "x", "f2": "y" },
        "G": { "f1": "-x", "f2": "y" },
        "interval": unit(),
    } });
    let out = run(dir.path(), &job, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["g_nondecreasing"], false);
    let out = run(dir.path(), &job, &["--mode", "signed"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_go_to_stderr() {
    let dir = TempDir::new().unwrap();
    let job = json!({ "task": "variation", "payload": { "F": { "f1": "x^", "f2": "y" }, "interval": unit() } });
    let out = run(dir.path(), &job, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "SyntaxError");

    let job = json!({ "task": "riemann", "payload": { "F": { "f1": "x", "f2": "y" }, "interval": unit(), "bogus": 1 } });
    let out = run(dir.path(), &job, &[]);
    assert_eq!(out.status.code(), Some(1));

    let job = json!({ "task": "riemann", "payload": {}, "extra": true });
    let out = run(dir.path(), &job, &[]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "JobSyntaxError");
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let points = json!([
        { "e1": 0.0, "e2": 0.0 }, { "e1": 0.25, "e2": 0.5 }, { "e1": 0.5, "e2": 0.5 }, { "e1": 1.0, "e2": 1.0 }
    ]);
    let jobs = [
        json!({ "task": "render", "payload": { "interval": unit(), "points": points } }),
        json!({ "task": "integrate", "payload": {
            "F": { "f1": "sin(x)", "f2": "y^2" }, "G": "identity", "interval": unit() } }),
        json!({ "task": "variation-set", "payload": {
            "F": { "f1": "x^2", "f2": "H(y - 0.5)" }, "interval": unit(), "grid": [3, 3] } }),
    ];
    for job in &jobs {
        for format in ["json", "csv", "svg"] {
            let a = run(dir.path(), job, &["--format", format]);
            let b = run(dir.path(), job, &["--format", format]);
            assert_eq!(a.status.code(), b.status.code());
            assert_eq!(a.stdout, b.stdout, "{format}");
        }
    }
    let svg = run(dir.path(), &jobs[0], &[]);
    assert!(String::from_utf8_lossy(&svg.stdout).starts_with("<svg"));
}

#[test]
fn csv_history_for_integrals() {
    let dir = TempDir::new().unwrap();
    let job = json!({ "task": "riemann", "payload": { "F": { "f1": "x^2", "f2": "sin(y)" }, "interval": unit() } });
    let out = run(dir.path(), &job, &["--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("level,points_e1,e1,tag_gap_e1,points_e2,e2,tag_gap_e2")
    );
    assert!(lines.count() >= 2);
}

#[test]
fn output_file_and_svg_side_artifact() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("result.json");
    let svg_path = dir.path().join("partition.svg");
    let job = json!({
        "task": "merge",
        "payload": { "p": [0.0, 0.5, 1.0], "q": [0.0, 1.0], "mode": "e1-first" },
        "output": out_path,
        "svg": svg_path,
    });
    let out = run(dir.path(), &job, &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r["points"].as_array().unwrap().len(), 4);
    assert!(fs::read_to_string(&svg_path).unwrap().contains("<polyline"));
}

#[test]
fn sample_jobs_run() {
    let dir = TempDir::new().unwrap();
    for task in [
        "validate-strong",
        "merge",
        "variation",
        "variation-set",
        "riemann",
        "integrate",
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_hyperbolica"))
            .args(["--sample", task, "--seed", "7"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let job: Value = serde_json::from_slice(&out.stdout).unwrap();
        let again = Command::new(env!("CARGO_BIN_EXE_hyperbolica"))
            .args(["--sample", task, "--seed", "7"])
            .output()
            .unwrap();
        assert_eq!(out.stdout, again.stdout);
        let result = run(dir.path(), &job, &[]);
        assert!(
            matches!(result.status.code(), Some(0 | 3)),
            "{task}: {:?}",
            result.status
        );
    }
}

#[test]
fn refinement_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("job.json");
    let job = json!({ "task": "riemann", "payload": { "F": { "f1": "x^2", "f2": "y" }, "interval": unit(), "tol": 1e-12 } });
    fs::write(&path, job.to_string()).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hyperbolica"))
        .arg("--job")
        .arg(&path)
        .env("HYPERBOLICA_MAX_REFINE", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let r = stdout_json(&out);
    assert_eq!(r["refinements"], 2);
}
