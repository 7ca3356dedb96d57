//! End-to-end tests against the compiled binary: exit codes, JSON
//! round-trips, reproducibility across thread counts, and the sample dump.

use std::io::Write;
use std::process::{Command, Output};

use toeplitz_sharp_core::bounds::{self, BoundOutcome};
use toeplitz_sharp_core::classes::{phi_named, FamilySpec, DEFAULT_ORDER};
use toeplitz_sharp_core::oracle::OracleReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toeplitz-sharp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn bounds_json_round_trips_field_for_field() {
    let output = run(&[
        "bounds",
        "--family",
        "starlike",
        "--phi",
        "janowski:A=1,B=-1",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let parsed: Vec<BoundOutcome> = serde_json::from_value(doc["reports"].clone()).unwrap();

    let phi = phi_named("janowski", &[("A", 1.0), ("B", -1.0)], DEFAULT_ORDER).unwrap();
    let expected = bounds::family_bounds(&FamilySpec::Starlike(phi)).unwrap();
    assert_eq!(parsed, expected);
    assert_eq!(doc["family"]["b1"], serde_json::json!(2.0));
}

#[test]
fn bounds_examples_from_the_known_classes() {
    let output = run(&[
        "bounds", "--family", "ctc", "--g", "koebe", "--format", "json",
    ]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    let t31 = &reports[2];
    assert_eq!(t31["quantity"], "T31");
    assert_eq!(t31["value"], serde_json::json!(8.0));
    let t22 = &reports[3];
    assert_eq!(t22["quantity"], "ABS_T22");
    assert_eq!(t22["value"], serde_json::json!(13.0));
}

#[test]
fn verify_passes_and_is_byte_identical_across_thread_counts() {
    let args = [
        "verify",
        "--family",
        "starlike",
        "--phi",
        "order:a=0.5",
        "--grid",
        "100,32,32",
        "--samples",
        "200000",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let one = bin()
        .args(args)
        .env("TOEPLITZ_SHARP_THREADS", "1")
        .output()
        .unwrap();
    let three = bin()
        .args(args)
        .env("TOEPLITZ_SHARP_THREADS", "3")
        .output()
        .unwrap();
    assert!(one.status.success());
    assert_eq!(
        one.stdout, three.stdout,
        "reports must not depend on the worker count"
    );

    let doc: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    let report: OracleReport = serde_json::from_value(doc["report"].clone()).unwrap();
    assert_eq!(report.violations_total, 0);
    // Sharp lower bound 0 is attained at p1 = 2, which lies on the grid.
    assert!(report.emp_min.abs() <= 1e-9);
    assert!(report.sharp_gaps["f1:T31:lower"] < 1e-9);
}

#[test]
fn verify_rejects_inapplicable_generator_with_exit_2() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("toeplitz-sharp-bad-{}.json", std::process::id()));
    let mut file = std::fs::File::create(&path).unwrap();
    // B2 > B1^2 voids the lower-bound hypothesis.
    write!(file, "[[1.0,0.0],[0.4,0.0],[0.2,0.0]]").unwrap();
    drop(file);

    let output = run(&[
        "verify",
        "--family",
        "starlike",
        "--phi-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_64() {
    let output = run(&["bounds", "--family", "starlike", "--phi", "nosuchphi"]);
    assert_eq!(output.status.code(), Some(64));

    let output = run(&[
        "bounds", "--family", "starlike", "--phi", "sin", "--g", "id",
    ]);
    assert_eq!(output.status.code(), Some(64));

    let output = run(&["bounds", "--family", "ctc", "--phi", "sin"]);
    assert_eq!(output.status.code(), Some(64));

    let output = run(&[
        "verify", "--family", "starlike", "--phi", "sin", "--grid", "10,10",
    ]);
    assert_eq!(output.status.code(), Some(64));

    let output = run(&["extremal", "f9", "--phi", "sin"]);
    assert_eq!(output.status.code(), Some(64));

    let output = run(&["extremal", "f5", "--family", "starlike", "--g", "f1-base"]);
    assert_eq!(output.status.code(), Some(64));
}

#[test]
fn extremal_values_match_the_known_cases() {
    let output = run(&[
        "extremal",
        "f1",
        "--phi",
        "janowski:A=1,B=-1",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["coefficients"][0]["re"], serde_json::json!(2.0));
    assert_eq!(doc["det_t31"], serde_json::json!(8.0));

    let output = run(&["extremal", "f5", "--g", "f1-base", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let det31 = doc["det_t31"].as_f64().unwrap();
    assert!((det31 - 11.0 / 9.0).abs() < 1e-9);

    let output = run(&["extremal", "f7", "--g", "f1-base", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let t22 = doc["abs_det_t22"].as_f64().unwrap();
    assert!((t22 - 181.0 / 36.0).abs() < 1e-9);
}

#[test]
fn classes_list_shows_the_registry() {
    let output = run(&["classes", "list", "--format", "json"]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let names: Vec<&str> = doc["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["name"].as_str().unwrap())
        .collect();
    for expected in [
        "janowski",
        "order",
        "strongly",
        "sin",
        "parabolic",
        "sigmoid",
        "nephroid",
        "lemniscate",
    ] {
        assert!(names.contains(&expected), "missing {expected}");
    }
    let bases = doc["bases"].as_array().unwrap();
    assert_eq!(bases.len(), 5);
}

#[test]
fn dump_samples_writes_csv_with_matching_report() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("toeplitz-sharp-dump-{}.csv", std::process::id()));
    let args = [
        "verify",
        "--family",
        "convex",
        "--phi",
        "janowski:A=1,B=-1",
        "--grid",
        "11,5,8",
        "--samples",
        "500",
        "--format",
        "json",
        "--dump-samples",
        path.to_str().unwrap(),
    ];
    let with_dump = bin().args(args).output().unwrap();
    assert!(with_dump.status.success());
    let without_dump = run(&args[..args.len() - 2]);
    assert_eq!(
        with_dump.stdout, without_dump.stdout,
        "dumping must not change the report"
    );

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p1,re_zeta,im_zeta,re_a2,im_a2,re_a3,im_a3,det31"
    );
    assert_eq!(lines.count(), 11 * 5 * 8 + 500);
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_round_trips_the_report() {
    let output = run(&[
        "verify",
        "--family",
        "ctc",
        "--g",
        "f2-base",
        "--grid",
        "21,7,8",
        "--samples",
        "1000",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let report: OracleReport = serde_json::from_value(doc["report"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), doc["report"]);
    assert!(report.passed());
}
