use std::process::{Command, Output};

use serde_json::Value;
use supertheory::table::{parse_csv, parse_json};

const BIN: &str = env!("CARGO_BIN_EXE_supertheory");

fn run<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

/// `cmd` on B2 Borel with q = 3, followed by `extra`.
fn b2<'a>(cmd: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd, "--family", "B", "--n", "2", "--q", "3"];
    v.extend_from_slice(extra);
    v
}

#[test]
fn spec_reports_orders() {
    let out = run(&b2("spec", &[]));
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order_L"], 8);
    assert_eq!(v["order_U"], 81);
    assert_eq!(v["order_G"], 648);
    assert_eq!(v["dim_u"], 4);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["spec", "--family", "B", "--n", "2", "--q", "4"],
        vec!["spec", "--family", "E", "--n", "2", "--q", "3"],
        vec!["spec", "--family", "B", "--n", "2", "--q", "3", "--blocks", "2,2"],
        vec!["verify", "--family", "B", "--n", "2", "--q", "3", "--suite", "nope"],
        vec!["verify", "--family", "B", "--n", "2", "--q", "3", "--suite", "lemmas", "--inject-fault", "class"],
        vec!["spec", "--family", "B", "--n", "2"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn guard_rejects_large_levi() {
    let out = Command::new(BIN)
        .args(["gtheory", "--family", "C", "--n", "2", "--q", "3"])
        .env("SUPERTHEORY_MAX_LEVI", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_has_one_column_per_class() {
    let json = run(&b2("table", &[]));
    let csv = run(&b2("table", &["--format", "csv"]));
    assert!(json.status.success() && csv.status.success());
    let t = parse_json(std::str::from_utf8(&json.stdout).unwrap()).unwrap();
    let text = std::str::from_utf8(&csv.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header.split(',').count(), 3 + t.doc.superclasses.len());
    let values = parse_csv(text, t.doc.conductor).unwrap();
    assert_eq!(values, t.values);
}

#[test]
fn table_round_trips_and_is_square() {
    for theory in ["ub-u", "ub-g", "gb"] {
        let out = run(&b2("table", &["--theory", theory]));
        assert!(out.status.success(), "{theory}");
        let t = parse_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
        assert_eq!(t.values.len(), t.doc.superclasses.len());
        assert_eq!(t.doc.superclasses[0].size, 1);
        let again = serde_json::to_string_pretty(&t.doc).unwrap() + "\n";
        assert_eq!(again.as_bytes(), out.stdout.as_slice());
    }
}

#[test]
fn orbit_counts_on_u_and_dual_agree_for_gb() {
    let count = |space: &str| {
        let out = run(&b2("orbits", &["--group", "Gb", "--space", space]));
        assert!(out.status.success());
        serde_json::from_slice::<Value>(&out.stdout).unwrap()["count"].as_u64().unwrap()
    };
    assert_eq!(count("u"), count("ustar"));
}

#[test]
fn json_only_commands_reject_csv() {
    let out = run(&b2("spec", &["--format", "csv"]));
    assert_eq!(out.status.code(), Some(2));
}
