use std::path::PathBuf;
use std::process::{Command, Output};

use detloci::cli::{run_with, EXIT_FAILED, EXIT_INPUT, EXIT_OK};
use detloci::sweep::Formulas;
use detloci_core::determinantal::GenericShape;
use detloci_core::invariants::lct;
use num_rational::Rational64;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn detloci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detloci")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn mc_check_three_matches() {
    let out = detloci(&["--json", "mc-check", "--a", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v = json_of(&out);
    assert_eq!(v["result"]["matches"].as_array().unwrap().len(), 3);
    assert_eq!(v["status"], "ok");
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["det-invariants", "--a", "2", "--b", "3", "--k", "5"][..],
        &["det-invariants", "--a", "2", "--b", "3", "--k", "1", "--frobnicate"],
        &["det-invariants", "--a", "0", "--b", "3", "--k", "1"],
        &["count-points", "--a", "3", "--b", "3", "--r", "1", "--q", "5", "--brute-force"],
        &["consistency-sweep", "--max", "9"],
        &["bn-invariants", "--genus", "2", "--rank", "1", "--degree", "2", "--aux-deg", "0", "--aux-rank", "1", "--k", "1", "--h0", "3"],
        &["jump-ideal", "--complex", "/nonexistent.json", "--i", "0", "--k", "1"],
        &["resolve", "--a", "2", "--b", "2"],
        &["det-invariants", "--a", "2", "--b", "3", "--k", "1", "--seed", "minus-one"],
    ] {
        let out = detloci(args);
        assert_eq!(out.status.code(), Some(EXIT_INPUT), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn non_square_zeta_is_omitted_not_extrapolated() {
    let v = json_of(&detloci(&["--json", "det-invariants", "--a", "2", "--b", "3", "--k", "1"]));
    assert_eq!(v["result"]["zetaPoles"], Value::Null);
    assert_eq!(v["result"]["mld"], Value::Null);
    assert_eq!(v["result"]["lct"], "2");
    assert_eq!(v["result"]["dimension"], 4);
}

#[test]
fn jump_ideal_examples() {
    let x = data("mult_by_x.json");
    for (i, k, gens) in [("1", "1", vec!["x"]), ("0", "1", vec!["x"]), ("1", "2", vec!["1"])] {
        let out = detloci(&["--json", "jump-ideal", "--complex", &x, "--i", i, "--k", k]);
        assert_eq!(out.status.code(), Some(EXIT_OK));
        assert_eq!(json_of(&out)["result"]["generators"], serde_json::json!(gens), "i={i} k={k}");
    }
    let out = detloci(&["--json", "--seed", "5", "jump-ideal", "--complex", &data("koszul.json"), "--i", "2", "--k", "1", "--check-points", "25"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v = json_of(&out);
    assert_eq!(v["manifest"]["seed"], 5);
    assert_eq!(v["result"]["specialization"]["consistent"], true);

    let out = detloci(&["jump-ideal", "--complex", &data("not_a_complex.json"), "--i", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x*y"));
}

#[test]
fn univ_matrix_examples() {
    let out = detloci(&["--json", "univ-matrix", "--data", &data("cubic_pair.json"), "--order", "4", "--verify-k", "1"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v = json_of(&out);
    assert_eq!(v["result"]["entries"], serde_json::json!([["x1*x2 + x1"]]));
    assert_eq!(v["result"]["certificate"]["verified"], true);
    assert_eq!(
        v["result"]["certificate"]["straightening"],
        serde_json::json!(["x1 -> x1*x2 + x1", "x2 -> x2"])
    );

    let degenerate = data("degenerate_pair.json");
    let out = detloci(&["--json", "univ-matrix", "--data", &degenerate, "--order", "4"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(json_of(&out)["result"]["petriInjective"], false);
    let out = detloci(&["univ-matrix", "--data", &degenerate, "--order", "4", "--verify-k", "1"]);
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Petri map not injective"));
}

#[test]
fn out_path_receives_the_json_report() {
    let dir = std::env::temp_dir().join(format!("detloci-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = detloci(&["resolve", "--a", "1", "--b", "5", "--k", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rec = &v["result"]["records"][0];
    assert_eq!((rec["centerCodim"].as_u64(), rec["multiplicity"].as_u64(), rec["logDiscrepancy"].as_u64()), (Some(5), Some(1), Some(5)));
    // stdout carries the table view
    assert!(String::from_utf8_lossy(&out.stdout).contains("result.records[0].logDiscrepancyDerived"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn stamp_is_opt_in() {
    let plain = json_of(&detloci(&["--json", "mc-check", "--a", "2"]));
    assert!(plain["manifest"].get("timestamp").is_none());
    let stamped = json_of(&detloci(&["--json", "--stamp", "mc-check", "--a", "2"]));
    assert!(stamped["manifest"]["timestamp"].as_u64().unwrap() > 0);
}

fn corrupted_lct(shape: GenericShape, k: usize) -> detloci_core::Result<Rational64> {
    lct(shape, k).map(|v| v * Rational64::new(11, 10))
}

#[test]
fn corrupted_formula_fails_the_sweep() {
    let bad = Formulas { lct: corrupted_lct, ..Formulas::default() };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(["detloci", "--json", "consistency-sweep", "--max", "2"], &bad, &mut out, &mut err);
    assert_eq!(code, EXIT_FAILED);
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["status"], "failed");
    let suites = v["result"]["suites"].as_array().unwrap();
    let failed: Vec<_> = suites.iter().filter(|s| s["failed"].as_u64() != Some(0)).map(|s| s["name"].clone()).collect();
    assert_eq!(failed, [Value::from("lct-vs-tower"), Value::from("b-function-vs-lct")]);
}

#[test]
fn count_points_examples() {
    for (a, b, r, q, n) in [("2", "2", "1", "2", "10"), ("2", "2", "2", "2", "16"), ("2", "3", "1", "2", "22"), ("1", "2", "0", "3", "1")] {
        let out = detloci(&["--json", "count-points", "--a", a, "--b", b, "--r", r, "--q", q, "--brute-force"]);
        assert_eq!(out.status.code(), Some(EXIT_OK));
        let v = json_of(&out);
        assert_eq!(v["result"]["count"], n);
        assert_eq!(v["result"]["bruteForce"], n);
    }
}
