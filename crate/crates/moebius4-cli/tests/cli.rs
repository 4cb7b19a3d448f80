//! Command-line behavior: exit codes, diagnostics, and report content.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_moebius4")
}

fn write_input(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("moebius4-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn json_stdout(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON report")
}

#[test]
fn audit_single_square_passes_with_coxeter_orders_2_and_3() {
    let input = write_input(
        "audit_square.json",
        r#"{"squares":[{"anchor":[0,0,0,0],"axes":[0,1]}]}"#,
    );
    let output = run(&["audit", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let report = json_stdout(&output);
    assert_eq!(report["status"], "pass");
    let counts = report["audit"]["class_counts"].as_object().unwrap();
    let keys: Vec<&String> = counts.keys().collect();
    assert_eq!(keys, vec!["disjoint", "intersecting pi/2", "intersecting pi/3"]);
    // every finite Coxeter entry is 2 or 3
    for row in report["audit"]["coxeter_matrix"].as_array().unwrap() {
        for entry in row.as_array().unwrap() {
            let e = entry.as_str().unwrap();
            assert!(matches!(e, "1" | "2" | "3" | "inf"), "unexpected entry {e}");
        }
    }
}

#[test]
fn enumerate_two_disjoint_balls_growth() {
    let input = write_input(
        "enumerate_balls.json",
        r#"{"balls":[{"center":[0,0,0,0],"radius_sq":"1/6"},{"center":[1,0,0,0],"radius_sq":"1/6"}]}"#,
    );
    let output = run(&["enumerate", input.to_str().unwrap(), "--max-length", "5"]);
    assert_eq!(output.status.code(), Some(0));
    let report = json_stdout(&output);
    let growth: Vec<u64> = report["growth"]["matrix_growth"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(growth, vec![1, 2, 2, 2, 2, 2]);
    assert_eq!(report["growth"]["growth_agrees"], true);
}

#[test]
fn audit_vertex_condition_failure_names_the_vertex() {
    // a square plus a far-away square would pass; build a complex with a
    // dangling edge via the balls... the squares-only schema cannot express
    // one, so use a complex whose vertex condition fails after generation:
    // that cannot happen for square closures, so drive the error through a
    // non-square cell instead
    let input = write_input(
        "bad_cell.json",
        r#"{"squares":[{"anchor":[0,0,0,0],"axes":[2]}]}"#,
    );
    let output = run(&["audit", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("not a square"), "stderr: {stderr}");
}

#[test]
fn malformed_json_reports_line_and_column() {
    let input = write_input("broken.json", "{\"squares\": [{\"anchor\": [0,0,0\n");
    let output = run(&["audit", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line"), "stderr: {stderr}");
    assert!(stderr.contains("column"), "stderr: {stderr}");
}

#[test]
fn perpendicular_squares_audit_finds_counterexample() {
    let input = write_input(
        "perp.json",
        r#"{"squares":[{"anchor":[0,0,0,0],"axes":[0,1]},{"anchor":[0,0,0,0],"axes":[0,2]}]}"#,
    );
    let output = run(&["audit", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2), "counterexamples exit with 2");
    let report = json_stdout(&output);
    assert_eq!(report["status"], "findings");
    assert_eq!(report["audit"]["canonical_map"]["isomorphic"], false);
    assert_eq!(
        report["audit"]["canonical_map"]["counterexample"]["kind"],
        "nerve_simplex_not_in_subdivision"
    );
    // violations stay empty: every angle is still Coxeter
    assert_eq!(report["audit"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn quotient_rejects_prime_three() {
    let input = write_input(
        "quotient_square.json",
        r#"{"squares":[{"anchor":[0,0,0,0],"axes":[0,1]}]}"#,
    );
    let output = run(&[
        "quotient",
        input.to_str().unwrap(),
        "--prime",
        "3",
        "--max-length",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("excluded"), "stderr: {stderr}");
}

#[test]
fn tile_rejects_probe_inside_a_ball() {
    let input = write_input(
        "tile_square.json",
        r#"{"squares":[{"anchor":[0,0,0,0],"axes":[0,1]}]}"#,
    );
    let output = run(&[
        "tile",
        input.to_str().unwrap(),
        "--probe",
        "0,0,0,0",
        "--max-length",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("closed ball"), "stderr: {stderr}");
}

#[test]
fn tile_accepts_infinity_probe() {
    let input = write_input(
        "tile_balls.json",
        r#"{"balls":[{"center":[0,0,0,0],"radius_sq":"1/6"},{"center":[1,0,0,0],"radius_sq":"1/6"}]}"#,
    );
    let output = run(&[
        "tile",
        input.to_str().unwrap(),
        "--probe",
        "inf",
        "--max-length",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let report = json_stdout(&output);
    // inversions send ∞ to the ball centers
    let points = report["tiling"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 3);
    assert_eq!(points[1]["image"].as_array().unwrap()[0], "0");
    assert_eq!(points[2]["image"].as_array().unwrap()[0], "1");
}

#[test]
fn enumerate_writes_growth_csv_next_to_output() {
    let input = write_input(
        "csv_balls.json",
        r#"{"balls":[{"center":[0,0,0,0],"radius_sq":"1/6"},{"center":[1,0,0,0],"radius_sq":"1/6"}]}"#,
    );
    let out = std::env::temp_dir()
        .join(format!("moebius4-cli-tests-{}", std::process::id()))
        .join("growth_report.json");
    let output = run(&[
        "enumerate",
        input.to_str().unwrap(),
        "--max-length",
        "3",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("length,matrix_elements,abstract_elements"));
    assert_eq!(lines.next(), Some("0,1,1"));
    assert_eq!(lines.next(), Some("1,2,2"));
}

#[test]
fn generate_reports_balls_with_exact_and_shadow_values() {
    let input = write_input(
        "generate_square.json",
        r#"{"squares":[{"anchor":[0,0,0,0],"axes":[0,1]}]}"#,
    );
    let output = run(&["generate", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let report = json_stdout(&output);
    assert_eq!(report["ball_count"], 9);
    let balls = report["balls"].as_array().unwrap();
    assert_eq!(balls.len(), 9);
    let first = &balls[0];
    assert_eq!(first["center"].as_array().unwrap()[0], "0");
    assert!(first["center_approx"].as_array().unwrap()[0].is_number());
    assert_eq!(first["radius_sq"], "1/6");
}

#[test]
fn plinv_command_checks_involution() {
    let input = write_input("cube.json", r#"{"center":[0,0,0,0],"half_width":"1/2"}"#);
    let output = run(&["plinv", input.to_str().unwrap(), "--samples", "100"]);
    assert_eq!(output.status.code(), Some(0));
    let report = json_stdout(&output);
    assert_eq!(report["involution"]["ok"], true);
    assert_eq!(report["involution"]["samples_checked"], 122);
}
