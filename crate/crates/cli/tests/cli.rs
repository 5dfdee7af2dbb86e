//! End-to-end tests of the binary: exit codes, JSON schema, determinism.

use std::process::{Command, Output};

use braidcover::report::{CheckStatus, VerificationReport};

fn braidcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidcover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn parse_report(output: &Output) -> VerificationReport {
    serde_json::from_slice(&output.stdout).expect("stdout is a report")
}

#[test]
fn relations_pass_and_round_trip() {
    let output = braidcover(&["relations", "--n", "3", "--d", "2"]);
    assert!(output.status.success());
    let report = parse_report(&output);
    assert_eq!(report.schema, "braidcover/1");
    assert_eq!(report.command, "relations");
    assert_eq!(report.summary.fail, 0);
    assert!(report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("relator["))
        .all(|c| c.status == CheckStatus::Pass));

    // summary counts partition the checks
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for check in &report.checks {
        match check.status {
            CheckStatus::Pass => pass += 1,
            CheckStatus::Fail => fail += 1,
            CheckStatus::Skip => skip += 1,
        }
        if check.status == CheckStatus::Fail {
            assert!(check.witness.is_some());
        }
    }
    assert_eq!(
        (pass, fail, skip),
        (
            report.summary.pass,
            report.summary.fail,
            report.summary.skip
        )
    );

    // byte-identical re-serialization through the typed representation
    let text = String::from_utf8(output.stdout.clone()).unwrap();
    assert_eq!(format!("{}\n", report.to_json()), text);
}

#[test]
fn invariants_emit_values() {
    let output = braidcover(&["invariants", "--d", "3", "--n", "6"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let witness = &value["checks"][0]["witness"];
    assert_eq!(witness["g"], 4);
    assert_eq!(witness["k"], 3);
}

#[test]
fn polygon_case_three_reports_empty_classification() {
    let output = braidcover(&["polygon", "--h", "0", "--b", "3"]);
    assert!(output.status.success());
    let report = parse_report(&output);
    let check = report
        .checks
        .iter()
        .find(|c| c.name == "classification_empty")
        .unwrap();
    assert_eq!(check.status, CheckStatus::Pass);
}

#[test]
fn cube_command_passes() {
    for d in ["2", "3", "4"] {
        let output = braidcover(&["cube", "--d", d]);
        assert!(output.status.success(), "cube --d {d} failed");
    }
}

#[test]
fn failed_checks_exit_one() {
    // on the trivial cover the cube relation does hold, so the inequality
    // check honestly fails and the failure carries its witness
    let output = braidcover(&["cube", "--d", "1"]);
    assert_eq!(output.status.code(), Some(1));
    let report = parse_report(&output);
    assert_eq!(report.summary.fail, 1);
    let check = report.checks.iter().find(|c| c.name == "cube_relation_fails").unwrap();
    assert_eq!(check.status, CheckStatus::Fail);
    assert!(check.witness.is_some());
}

#[test]
fn ribbon_emits_faces_on_request() {
    let plain = parse_report(&braidcover(&["ribbon", "--n", "3", "--d", "2"]));
    let partition = plain
        .checks
        .iter()
        .find(|c| c.name == "face_partition")
        .unwrap();
    assert!(partition.witness.as_ref().unwrap().is_object());

    let with_faces = parse_report(&braidcover(&[
        "ribbon",
        "--n",
        "3",
        "--d",
        "2",
        "--emit-faces",
    ]));
    let partition = with_faces
        .checks
        .iter()
        .find(|c| c.name == "face_partition")
        .unwrap();
    let faces = partition.witness.as_ref().unwrap().as_array().unwrap();
    assert_eq!(faces.len(), 1);
    assert_eq!(faces[0].as_array().unwrap().len(), 8);
}

#[test]
fn invalid_arguments_exit_two() {
    let missing = braidcover(&["relations", "--n", "3"]);
    assert_eq!(missing.status.code(), Some(2));

    let conflicting = braidcover(&["invariants", "--d", "3", "--n", "6", "--m", "2"]);
    assert_eq!(conflicting.status.code(), Some(2));

    let out_of_domain = braidcover(&["relations", "--n", "1", "--d", "2"]);
    assert_eq!(out_of_domain.status.code(), Some(2));

    let degenerate = braidcover(&["polygon", "--h", "0", "--b", "1"]);
    assert_eq!(degenerate.status.code(), Some(2));

    let over_bound = braidcover(&["polygon", "--h", "5", "--b", "2"]);
    assert_eq!(over_bound.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let first = braidcover(&["operad", "--samples", "40", "--seed", "11"]);
    let second = braidcover(&["operad", "--samples", "40", "--seed", "11"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn sweep_writes_file_and_honors_thread_cap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let output = Command::new(env!("CARGO_BIN_EXE_braidcover"))
        .args(["sweep", "--n-max", "3", "--d-max", "2", "--out"])
        .arg(&path)
        .env("BRAIDCOVER_THREADS", "2")
        .output()
        .unwrap();
    assert!(output.status.success());
    assert!(output.stdout.is_empty());
    let report: VerificationReport =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.command, "sweep");
    assert_eq!(report.summary.fail, 0);
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);

    let bad_env = Command::new(env!("CARGO_BIN_EXE_braidcover"))
        .args(["sweep", "--n-max", "3", "--d-max", "2"])
        .env("BRAIDCOVER_THREADS", "none")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}
