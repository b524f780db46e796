//! End-to-end runs of the `minw` binary.

use std::process::Command;

use serde_json::Value;

fn minw(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_minw")).args(args).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn assert_schema(v: &Value) {
    for key in ["status", "reason", "citation", "data"] {
        assert!(v.get(key).is_some(), "missing {key} in {v}");
    }
}

#[test]
fn simplicity_exit_codes() {
    let (code, v) = minw(&["simplicity", "--algebra", "psl:2|2", "--level", "3"]);
    assert_schema(&v);
    assert_eq!((code, v["status"].as_str().unwrap()), (0, "simple"));
    assert_eq!(v["citation"], "unitary.length_two");

    let (code, v) = minw(&["simplicity", "--algebra", "d21a:-2", "--level", "2"]);
    assert_eq!((code, v["status"].as_str().unwrap()), (0, "not_simple"));
    assert_eq!(v["citation"], "long.d21a");

    let (code, v) = minw(&["simplicity", "--algebra", "spo:2|3", "--level", "1"]);
    assert_eq!((code, v["status"].as_str().unwrap()), (2, "unknown"));
    assert_eq!(v["citation"], "open.unitary_low");

    let (code, v) = minw(&["simplicity", "--algebra", "lie:A1", "--level", "-5/3"]);
    assert_eq!((code, v["status"].as_str().unwrap()), (0, "simple"));
    assert_eq!(v["citation"], "irr.lie");
}

#[test]
fn errors_exit_with_one() {
    for args in [
        vec!["simplicity", "--algebra", "osp:3|2", "--level", "1"],
        vec!["simplicity", "--algebra", "nope", "--level", "1"],
        vec!["central-charge", "--algebra", "lie:A1", "--level", "-2"],
        vec!["superconformal", "--n", "7", "--c", "1"],
    ] {
        let (code, v) = minw(&args);
        assert_schema(&v);
        assert_eq!((code, v["status"].as_str().unwrap()), (1, "error"), "{args:?}");
    }
}

#[test]
fn certify_attaches_the_sl3_witness() {
    let (code, v) = minw(&["simplicity", "--algebra", "lie:A2", "--level", "1", "--certify"]);
    assert_eq!(code, 0);
    let cert = &v["data"]["certificate"];
    assert_eq!(cert["witness_found"], true);
    assert_eq!(cert["report"]["verdict"]["key"], serde_json::json!([9, 3, 6]));
}

#[test]
fn central_charge_and_superconformal() {
    let (_, v) = minw(&["central-charge", "--algebra", "psl:2|2", "--level", "1"]);
    assert_eq!(v["data"]["c"], "-12");
    let (code, v) = minw(&["superconformal", "--n", "2", "--c", "1"]);
    assert_eq!((code, v["status"].as_str().unwrap()), (0, "not_simple"));
    let (code, _) = minw(&["superconformal", "--n", "4", "--c", "-6"]);
    assert_eq!(code, 2);
    let (code, v) = minw(&["superconformal", "--n", "big4:2", "--c", "0"]);
    assert_eq!((code, v["citation"].as_str().unwrap()), (0, "sc.zero_charge"));
}

#[test]
fn computation_subcommands() {
    let (code, v) = minw(&["denom-check", "--algebra", "sl:2|1", "--height", "6"]);
    assert_eq!((code, v["status"].as_str().unwrap()), (0, "ok"));
    let (code, v) = minw(&["jantzen", "--algebra", "lie:A1", "--level", "1", "--ddeg", "4", "--height", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["reason"], "consistent_with_length_two");
    let (code, v) = minw(&["aplus-scan", "--algebra", "spo:2|3", "--level", "2", "--height", "6"]);
    assert_eq!((code, v["status"].as_str().unwrap()), (0, "ok"));
    let (code, v) = minw(&["aplus-scan", "--algebra", "psl:2|2", "--level", "2", "--height", "6"]);
    assert_eq!((code, v["data"]["boundary"]["u_a"].as_str().unwrap()), (0, "12"));
    let (code, v) = minw(&["ysets", "--algebra", "sl:2|1", "--level", "1", "--mu0", "1"]);
    assert_eq!(code, 0);
    assert!(v["data"]["y_l"].is_object());
    let (code, v) = minw(&["sl2-verma", "--k", "1", "--label", "3"]);
    assert_eq!((code, v["data"]["agree"].as_bool().unwrap()), (0, true));
    let (code, v) = minw(&["info", "--algebra", "g3"]);
    assert_eq!((code, v["data"]["h_dual"].as_str().unwrap()), (0, "-3/2"));
}

#[test]
fn text_format_is_flat() {
    let out = Command::new(env!("CARGO_BIN_EXE_minw"))
        .args(["--format", "text", "simplicity", "--algebra", "g3", "--level", "6"])
        .output()
        .unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("status:   simple\n"), "{s}");
    assert!(s.contains("citation: unitary.length_two"));
}
