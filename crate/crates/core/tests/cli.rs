//! The command-line contract: exit codes, output shape, and byte stability.

mod common;

use cimset::cli::run_with;
use cimset::graph::GraphJson;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cimset").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    assert!(code != 2, "{args:?} failed: {err}");
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}")))
}

#[test]
fn imset_char_json_and_text() {
    let (code, v) = json(&["imset", "char", "fixture:fig4_left"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "char");
    let values: Vec<i64> = v["entries"].as_array().unwrap().iter().map(|e| e["value"].as_i64().unwrap()).collect();
    assert_eq!(values, cimset::fixtures::FIG4_CHAR);

    let (code, text, _) = run(&["--format", "text", "imset", "std", "fixture:fig4_right"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with('∅'));
    assert_eq!(lines[0].chars().count(), lines[1].chars().count());
}

#[test]
fn equivalence_exit_codes() {
    assert_eq!(run(&["equiv", "imset", "fixture:fig4_left", "fixture:fig4_right"]).0, 0);

    let (code, v) = json(&["equiv", "imset", "fixture:fig7_g", "fixture:fig7_h"]);
    assert_eq!(code, 1);
    assert_eq!(v["skeletons_equal"], true);
    let diffs = v["differences"].as_array().unwrap();
    let d = diffs.iter().find(|d| d["set"] == serde_json::json!([2, 3, 5])).expect("{2,3,5} reported");
    assert_eq!((d["g"].as_i64(), d["h"].as_i64()), (Some(0), Some(1)));

    assert_eq!(run(&["equiv", "dag", "fixture:fig3_left", "fixture:fig3_right"]).0, 0);
    assert_eq!(run(&["equiv", "dag", "n=3\n1 -> 2\n2 -> 3\n", "n=3\n1 -> 2\n3 -> 2\n"]).0, 1);
    let (code, _, err) = run(&["equiv", "dag", "fixture:fig6_g", "fixture:fig6_h"]);
    assert_eq!(code, 2);
    assert!(err.contains("cycle"));

    let (code, v) = json(&["equiv", "numeric", "n=3\n1 -> 2\n2 -> 3\n", "n=3\n2 -> 1\n2 -> 3\n", "--trials", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "EvidenceEquivalent");
    let (code, v) = json(&["equiv", "numeric", "n=3\n1 -> 2\n2 -> 3\n", "n=3\n1 -> 2\n3 -> 2\n", "--trials", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "EvidenceInequivalent");
    assert!(v["note"].is_string());
}

#[test]
fn errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["imset", "char", "n=3\n1 -> 4\n"],
        &["imset", "char", "n=2\n1 => 2\n"],
        &["imset", "char", "/no/such/file"],
        &["kernel", "verify", "--n", "9"],
        &["equiv", "numeric", "fixture:fig6_g", "fixture:fig6_h", "--trials", "0"],
        &["equiv", "numeric", "fixture:fig6_g", "fixture:fig6_h", "--tau", "-1"],
        &["fiber", "fixture:fig6_g", "--moves", "teleport"],
        &["flip", "fixture:fig6_g", "1", "2"],
        &["equiv", "imset", "fixture:fig6_g", "fixture:fig4_left"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn kernel_and_decompose() {
    let (code, v) = json(&["kernel", "verify", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["message"], "flip lattice = integer kernel, rank 17");

    let (code, v) = json(&["decompose", "fixture:fig6_g", "fixture:fig6_h"]);
    assert_eq!(code, 0);
    assert_eq!(v["in_kernel"], true);

    let unit = r#"{"n":2,"entries":[{"parents":[],"child":1,"value":1}]}"#;
    let (code, out, err) = run(&["decompose", unit]);
    if code == 2 {
        panic!("unit vector input rejected: {err}");
    }
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["in_kernel"], false);
}

#[test]
fn fiber_components() {
    let (_, v) = json(&["fiber", "fixture:fig6_g", "--moves", "flips"]);
    assert_eq!(v["graphs"].as_array().unwrap().len(), 2);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    let (_, v) = json(&["fiber", "fixture:fig6_g"]);
    assert_eq!(v["components"].as_array().unwrap().len(), 1);
    let (_, v) = json(&["fiber", "fixture:fig3_left", "--upto-iso"]);
    assert_eq!(v["graphs"].as_array().unwrap().len(), 2);
}

#[test]
fn char_then_fiber_contains_the_graph() {
    let dir = tempfile::tempdir().unwrap();
    for n in 1..=4 {
        for (k, g) in common::all_graphs(n).enumerate().filter(|(k, _)| k % 37 == 0) {
            let gj = serde_json::to_string(&GraphJson::from(&g)).unwrap();
            let (_, imset, _) = run(&["imset", "char", &gj]);
            let path = dir.path().join(format!("c{n}_{k}.json"));
            std::fs::write(&path, imset).unwrap();
            let (code, v) = json(&["fiber", path.to_str().unwrap()]);
            assert_eq!(code, 0);
            let members: Vec<GraphJson> = serde_json::from_value(v["graphs"].clone()).unwrap();
            assert!(members.contains(&GraphJson::from(&g)), "{g:?}");
        }
    }
}

#[test]
fn factor_commands() {
    let (_, q) = json(&["factor", "sample", "fixture:fig3_left", "--seed", "7"]);
    let text = q.to_string();
    let (code, flipped) = json(&["factor", "givens-flip", &text, "4", "3"]);
    assert_eq!(code, 0);
    let labels: Vec<String> = flipped["labels"].as_array().unwrap().iter().map(|l| l.to_string()).collect();
    assert!(labels.contains(&r#"{"child":3,"parents":[]}"#.to_string()), "{labels:?}");
    assert_eq!(run(&["factor", "givens-flip", &text, "1", "2"]).0, 2);
}

#[test]
fn output_is_byte_stable() {
    let cases: &[&[&str]] = &[
        &["imset", "char", "fixture:fig7_g"],
        &["fiber", "fixture:fig5_left"],
        &["factor", "sample", "fixture:fig7_h", "--seed", "3"],
        &["equiv", "numeric", "fixture:fig2_g", "fixture:fig2_h", "--trials", "2", "--seed", "11"],
        &["repro", "fig6"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(a, b, "{args:?}");
    }
    let one = run(&["fiber", "fixture:fig4_left", "--jobs", "1"]);
    let four = run(&["fiber", "fixture:fig4_left", "--jobs", "4"]);
    assert_eq!(one, four);
    let base = ["equiv", "numeric", "fixture:fig6_g", "fixture:fig6_h", "--trials", "3"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let three = run(&[&base[..], &["--jobs", "3"]].concat());
    assert_eq!(one, three);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cimset");
    let st = std::process::Command::new(bin).args(["repro", "fig4"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = std::process::Command::new(bin).args(["equiv", "imset", "fixture:fig7_g", "fixture:fig7_h"]).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = std::process::Command::new(bin).args(["imset", "char", "not-a-file"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}
