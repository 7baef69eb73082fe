use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn chialg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chialg")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = chialg(args);
    let json = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().expect("exit code"), json)
}

#[test]
fn verify_iso_tzitzeica_is_verified() {
    let (code, json) = report(&["verify-iso", "--equation", "tzitzeica", "--degree", "8", "--order", "12"]);
    assert_eq!(code, 0);
    assert_eq!(json["status"], "verified");
    assert_eq!(json["schema"], "chialg-report/1");
    assert_eq!(json["payload"]["tables_identical"], true);
}

#[test]
fn verify_iso_sinh_is_verified() {
    let (code, json) = report(&["verify-iso", "--equation", "sinh", "--degree", "8", "--order", "12"]);
    assert_eq!(code, 0);
    assert_eq!(json["status"], "verified");
}

#[test]
fn charalg_reports_truncation_level() {
    let (code, json) = report(&["charalg", "--equation", "sinh", "--degree", "6", "--order", "9"]);
    assert_eq!(code, 0);
    assert_eq!(json["status"], "zero-up-to");
    let rels: Vec<&str> = json["payload"]["relations"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(rels.contains(&"[X1, X3] = -1*X4"), "{rels:?}");
}

#[test]
fn liouville_is_two_dimensional() {
    let (code, json) = report(&["charalg", "--equation", "liouville", "--degree", "4", "--order", "7"]);
    assert_eq!(code, 0);
    assert_eq!(json["payload"]["basis"].as_array().unwrap().len(), 2);
}

#[test]
fn symmetry_mismatch_exits_two() {
    let (code, json) = report(&["symmetry", "--equation", "sinh", "--phi", "u2"]);
    assert_eq!(code, 2);
    assert_eq!(json["status"], "mismatch");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(chialg(&["charalg", "--equation", "sinh", "--degree", "8", "--order", "5"]).status.code(), Some(1));
    assert_eq!(chialg(&["verify-iso", "--equation", "liouville"]).status.code(), Some(1));
    assert_eq!(chialg(&["nonsense"]).status.code(), Some(1));
    assert_eq!(chialg(&["jacobi", "--algebra", "m0s:4"]).status.code(), Some(1));
    assert_eq!(chialg(&["--help"]).status.code(), Some(0));
}

#[test]
fn loops_table_certifies_printed_typo() {
    let (code, json) = report(&["loops", "--algebra", "sl3t", "--table"]);
    assert_eq!(code, 0);
    let diff = json["payload"]["printed_table_diff"].as_array().unwrap();
    let cells: Vec<(i64, i64)> =
        diff.iter().map(|d| (d["q_residue"].as_i64().unwrap(), d["l_residue"].as_i64().unwrap())).collect();
    assert_eq!(cells, vec![(5, 7), (7, 5)]);
}

#[test]
fn presented_growth_and_jacobi() {
    let (code, json) = report(&["growth", "--algebra", "w+", "--degree", "6"]);
    assert_eq!(code, 0);
    assert_eq!(json["payload"]["values"], serde_json::json!([2, 3, 4, 5, 6, 7]));
    let (code, json) = report(&["jacobi", "--algebra", "m0s:5,7", "--degree", "12"]);
    assert_eq!(code, 0);
    assert_eq!(json["payload"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn out_file_is_byte_deterministic() {
    let dir = std::env::temp_dir().join(format!("chialg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for path in [&a, &b] {
        let out = chialg(&["charalg", "--equation", "tzitzeica", "--degree", "6", "--order", "9", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format_has_header() {
    let out = chialg(&["bell", "--n", "3", "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("# chialg-report/1\ncommand: bell\nstatus: verified\n"), "{s}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn malformed_equations_fail_cleanly(junk in "[a-z()^+*/ 0-9-]{1,12}") {
        prop_assume!(!matches!(junk.trim(), "liouville" | "sinh" | "tzitzeica"));
        let out = chialg(&["charalg", "--equation", &format!("{junk}(("), "--degree", "2", "--order", "5"]);
        prop_assert_eq!(out.status.code(), Some(1));
        let err = String::from_utf8_lossy(&out.stderr);
        prop_assert!(!err.contains("panicked"), "{}", err);
    }

    #[test]
    fn malformed_matrices_fail_cleanly(junk in "[0-9,;a-z-]{0,10}") {
        prop_assume!(junk.split(',').count() != 4 || junk.split(',').any(|t| t.parse::<i64>().is_err()));
        let out = chialg(&["exp2d", "--matrix", &junk]);
        prop_assert_eq!(out.status.code(), Some(1));
        prop_assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
    }
}
