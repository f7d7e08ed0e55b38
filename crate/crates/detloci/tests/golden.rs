//! Reports are byte-for-byte reproducible from their manifest.

use std::path::PathBuf;
use std::process::Command;

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn stdout_of(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_detloci")).args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn reports_match_golden_files() {
    let cases: [(&str, &[&str]); 6] = [
        ("det_invariants_2_2_1.json", &["--json", "det-invariants", "--a", "2", "--b", "2", "--k", "1"]),
        ("mc_check_3.json", &["--json", "mc-check", "--a", "3"]),
        ("resolve_2_3_1.json", &["--json", "resolve", "--a", "2", "--b", "3", "--k", "1"]),
        (
            "bn_invariants_g5_d4_k2.json",
            &["--json", "bn-invariants", "--genus", "5", "--rank", "1", "--degree", "4", "--aux-deg", "0", "--aux-rank", "1", "--k", "2", "--h0", "2"],
        ),
        ("det_ideal_2_3_1.json", &["--json", "det-ideal", "--a", "2", "--b", "3", "--k", "1"]),
        ("sweep_max2_seed7.json", &["--json", "consistency-sweep", "--max", "2", "--seed", "7"]),
    ];
    for (file, args) in cases {
        assert_eq!(stdout_of(args), golden(file), "{file}");
    }
}

#[test]
fn transposed_shape_gives_the_same_result() {
    let a = stdout_of(&["--json", "det-invariants", "--a", "3", "--b", "2", "--k", "1"]);
    let b = stdout_of(&["--json", "det-invariants", "--a", "2", "--b", "3", "--k", "1"]);
    let strip = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["result"].clone();
    assert_eq!(strip(&a), strip(&b));
}
