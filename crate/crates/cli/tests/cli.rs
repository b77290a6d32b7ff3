use std::path::PathBuf;
use std::process::Command;

use biquandle_cli::{parse_matrix, run, serialize_matrix, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use biquandle_core::{enumerate_biquandles, BiquandleTable};
use proptest::prelude::*;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn call(args: &[&str]) -> (u8, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["biquandle"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (u8, Value) {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let (code, out, _) = call(&argv);
    (code, serde_json::from_str(&out).unwrap())
}

fn scratch(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_biquandle");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["check", &fixture("klein.matrix")]), 0);
    assert_eq!(status(&["check", &fixture("trivial2_corrupted.matrix")]), 1);
    assert_eq!(status(&["check", &fixture("malformed.matrix")]), 2);
    assert_eq!(status(&["iso", "--zn", "8", "3", "5", "--zn", "8", "5", "3"]), 1);
    assert_eq!(status(&["iso", "--zn", "8", "3", "5", "--zn", "8", "3", "5"]), 0);
    assert_eq!(status(&["no-such-command"]), 2);
    assert_eq!(status(&["--help"]), 0);
}

#[test]
fn check_reports() {
    let (code, out, _) = call(&["check", &fixture("klein.matrix")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("biquandle: yes"));
    let (code, doc) = json(&["check", &fixture("trivial2_corrupted.matrix")]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(doc["biquandle"], false);
    let axioms: Vec<&str> = doc["violations"].as_array().unwrap().iter().map(|v| v["axiom"].as_str().unwrap()).collect();
    assert!(axioms.contains(&"4.ii"));
    let (code, _, err) = call(&["check", &fixture("out_of_range.matrix")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 8, column 13"), "{err}");
    let (code, _, err) = call(&["check", "/nonexistent/file"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.starts_with("error: /nonexistent/file"));
}

#[test]
fn alexander_outputs_check_clean() {
    let (_, out, _) = call(&["alexander", "--zn", "2", "1", "1"]);
    assert_eq!(out, "2\n1 1 1 1\n2 2 2 2\n1 1 1 1\n2 2 2 2\n");
    let (_, out, _) = call(&["alexander", "--zn", "8", "3", "5"]);
    let path = scratch("z8_3_5.matrix", &out);
    assert_eq!(call(&["check", &path]).0, EXIT_OK);
    let (_, canonical, _) = call(&["alexander", "--zn", "8", "3", "5", "--order", "canonical"]);
    assert_ne!(canonical, out);
    let (code, _, err) = call(&["alexander", "--zn", "8", "2", "5"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("not a unit"), "{err}");
    let (code, _, _) = call(&["alexander", "--zn", "8", "3", "5", "--mod", &fixture("z8_3_5.mod")]);
    assert_eq!(code, EXIT_INPUT);
    let (_, from_file, _) = call(&["alexander", "--mod", &fixture("z8_3_5.mod")]);
    assert_eq!(from_file, out);
}

#[test]
fn iso_operands_mix() {
    let (code, out, _) = call(&["iso", "--mod", &fixture("z8_3_5.mod"), "--zn", "8", "3", "5"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("first: Z_8 (s = 3, t = 5)\nsecond: Z_8 (s = 3, t = 5)\n"));
    let (code, _, err) = call(&["iso", "--matrix", &fixture("klein.matrix"), "--zn", "2", "1", "1", "--method", "structural"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("structural"));
    let (code, out, _) = call(&["iso", "--matrix", &fixture("klein.matrix"), "--mod", &fixture("klein_identity.mod"), "--method", "brute"]);
    assert!(code == EXIT_OK || code == EXIT_NEGATIVE);
    assert!(out.contains("verdict:"));
    let (code, _, _) = call(&["iso", "--zn", "3", "2", "1"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = call(&["iso", "--matrix", &fixture("trivial2_corrupted.matrix"), "--zn", "2", "1", "1", "--method", "brute"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn text_and_json_verdicts_agree() {
    for (a, b) in [(["7", "3", "5"], ["7", "5", "3"]), (["8", "3", "5"], ["8", "5", "3"]), (["5", "2", "3"], ["5", "3", "2"])] {
        let args = ["iso", "--zn", a[0], a[1], a[2], "--zn", b[0], b[1], b[2]];
        let (code, out, _) = call(&args);
        let (jcode, doc) = json(&args);
        assert_eq!(code, jcode);
        let verdict = doc["verdict"].as_str().unwrap();
        assert!(out.ends_with(&format!("verdict: {verdict}\n")));
        assert_eq!(doc["schema"], biquandle_cli::SCHEMA);
        assert_eq!(doc["brute"]["isomorphic"], doc["structural"]["isomorphic"]);
    }
}

#[test]
fn outputs_are_byte_stable() {
    let runs: [&[&str]; 4] = [
        &["iso", "--zn", "7", "3", "5", "--zn", "7", "5", "3"],
        &["--json", "iso", "--zn", "8", "3", "5", "--zn", "8", "3", "5"],
        &["enumerate", "3", "--tables"],
        &["--json", "orbits", "--zn", "8", "5", "3"],
    ];
    for args in runs {
        assert_eq!(call(args), call(args), "{args:?}");
    }
}

#[test]
fn orbit_listings() {
    let (_, out, _) = call(&["orbits", "--zn", "3", "2", "1"]);
    assert!(out.contains("\nA = {0}\n"), "{out}");
    let (_, doc) = json(&["orbits", "--zn", "8", "5", "3"]);
    assert_eq!(doc["submodule"], serde_json::json!(["0", "2", "4", "6"]));
    assert_eq!(doc["kernel"], serde_json::json!(["0", "2", "4", "6"]));
    assert_eq!(doc["reps"], serde_json::json!(["0", "1"]));
    assert_eq!(doc["orbit"], serde_json::json!(["0", "1", "5"]));
}

#[test]
fn counting() {
    let klein = fixture("klein.matrix");
    assert_eq!(call(&["count", "--gauss", "", "--target", &klein]).1, "4\n");
    assert_eq!(call(&["count", "--gauss", "O1+,U1+", "--target", &klein]).1, "4\n");
    let (code, doc) = json(&["count", "--gauss", &fixture("kishino.gauss"), "--target", &klein]);
    assert_eq!(code, EXIT_OK);
    for r in doc["results"].as_array().unwrap() {
        assert_eq!(r["count"], 16);
        assert_eq!(r["semi_arcs"], 8);
    }
    let (code, _, _) = call(&["count", "--gauss", "O1+,U1+", "--target", &fixture("trivial2_corrupted.matrix")]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = call(&["count", "--gauss", "O1+", "--zn", "3", "2", "1"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn enumeration_counts() {
    assert!(call(&["enumerate", "1"]).1.starts_with("order 1: 1 biquandles, 1 isomorphism classes"));
    assert_eq!(call(&["enumerate", "4"]).0, EXIT_INPUT);
    let (_, doc) = json(&["enumerate", "2", "--tables"]);
    assert_eq!(doc["count"], 2);
    let tables: Vec<BiquandleTable> = doc["matrices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| {
            let rows: Vec<String> = m.as_array().unwrap().iter().map(|r| {
                r.as_array().unwrap().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            }).collect();
            parse_matrix(&format!("2\n{}\n", rows.join("\n"))).unwrap()
        })
        .collect();
    assert_eq!(tables, enumerate_biquandles(2, false).unwrap().tables);
}

#[test]
fn switch_command() {
    let (code, out, _) = call(&["switch", &fixture("klein.switch")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse_matrix(&out).unwrap(), parse_matrix(&std::fs::read_to_string(fixture("klein.matrix")).unwrap()).unwrap());
    let (_, doc) = json(&["switch", &fixture("klein.switch")]);
    assert_eq!(doc["c"], serde_json::json!([[1, 0], [1, 1]]));
    assert_eq!(doc["d"], serde_json::json!([[1, 1], [1, 0]]));
    let degenerate = scratch("identity.switch", "2 2\n1 0\n0 1\n1 0\n0 1\n0 0\n");
    assert_eq!(call(&["switch", &degenerate]).0, EXIT_INPUT);
}

proptest! {
    #[test]
    fn matrix_round_trip(which in 0usize..36) {
        let t = &enumerate_biquandles(3, false).unwrap().tables[which];
        prop_assert_eq!(&parse_matrix(&serialize_matrix(t)).unwrap(), t);
    }

    #[test]
    fn arbitrary_tables_round_trip(n in 1usize..6, seed in prop::collection::vec(0usize..1000, 100)) {
        let t = BiquandleTable::from_fn(n, |op, a, b| seed[(op as usize * 25 + a * 5 + b) % 100] % n).unwrap();
        prop_assert_eq!(parse_matrix(&serialize_matrix(&t)).unwrap(), t);
    }
}
