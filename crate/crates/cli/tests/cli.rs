use std::process::{Command, Output};

use serde_json::Value;
use solvrad_cli::report::{deterministic_view, Report};

fn solvrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solvrad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let out = solvrad(&all);
    let report = serde_json::from_slice(&out.stdout).expect("stdout is a report");
    (report, out.status.code().unwrap())
}

#[test]
fn same_seed_gives_identical_reports() {
    for args in [
        &["kappa", "A(6)", "--seed", "7"][..],
        &["radical", "S(4) x A(5)", "--seed", "7", "--k", "2,3"],
        &["suitable", "A(5) wr C2", "--k", "7", "--seed", "3"],
    ] {
        let (a, _) = json_report(args);
        let (b, _) = json_report(args);
        let mut serial = args.to_vec();
        serial.extend(["--threads", "1"]);
        let (c, _) = json_report(&serial);
        assert_eq!(deterministic_view(&a), deterministic_view(&b), "{args:?}");
        assert_eq!(deterministic_view(&a), deterministic_view(&c), "{args:?} serial");
    }
}

#[test]
fn reports_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        &["classes", "PSL(2,7)"][..],
        &["solvable", "A(5)"],
        &["radical", "A(4) wr C2"],
        &["kradical", "S(5)", "--k", "2", "--exhaustive"],
        &["kappa", "S(5)"],
        &["suitable", "S(4) x A(5)", "--k", "7"],
        &["sharpness", "--n", "6"],
        &["rootcheck"],
    ]
    .into_iter()
    .enumerate()
    {
        let path = dir.path().join(format!("r{i}.json"));
        let path = path.to_str().unwrap();
        let mut all = args.to_vec();
        all.extend(["--json", path]);
        let out = solvrad(&all);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let (v, code) = json_report(&["verify", path]);
        assert_eq!(code, 0, "{args:?}");
        assert!(v.ok, "{args:?}");
    }
}

#[test]
fn tampered_report_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    let path = path.to_str().unwrap();
    assert_eq!(solvrad(&["kappa", "A(5)", "--json", path]).status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let kappa = &mut v["payload"]["kappa"]["kappa"];
    *kappa = Value::from(3);
    std::fs::write(path, serde_json::to_string(&v).unwrap()).unwrap();
    let (report, code) = json_report(&["verify", path]);
    assert_eq!(code, 1);
    assert!(!report.ok);
}

#[test]
fn exit_codes() {
    assert_eq!(solvrad(&["group", "Q(5)"]).status.code(), Some(2));
    assert_eq!(solvrad(&["sharpness", "--n", "3"]).status.code(), Some(2));
    assert_eq!(solvrad(&["classes", "A(12)"]).status.code(), Some(3));
    assert_eq!(solvrad(&["group", "PSL(2,7)"]).status.code(), Some(0));
}

#[test]
fn json_to_stdout_replaces_summary() {
    let (report, code) = json_report(&["group", "PSL(2,7)"]);
    assert_eq!(code, 0);
    assert_eq!(report.group.unwrap().order, "168");
    let plain = solvrad(&["group", "PSL(2,7)"]);
    assert!(serde_json::from_slice::<Value>(&plain.stdout).is_err());
    assert!(String::from_utf8_lossy(&plain.stdout).contains("168"));
}
