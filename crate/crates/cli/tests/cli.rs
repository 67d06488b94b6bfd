//! End-to-end runs of the binary: exit codes, output shape, and
//! bit-for-bit reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_groupoid-lab"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn tetrahedron_passes_and_reports_both_values() {
    let out = run(&["tetrahedron"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("check positive-evaluation: PASS"));
    assert!(text.contains("check negative-evaluation: PASS"));
    assert!(text.contains("check difference-4pi: PASS"));
}

#[test]
fn torus_check_passes_and_flags_the_factor_two() {
    let out = run(&["torus-check"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("no-nonzero-fixed-points: PASS"));
    assert!(text.contains("6t^2 - 6t + 2"));
    assert!(text.contains("twice the displayed quadratic"));
}

#[test]
fn ac_on_z5_reports_five_classes() {
    let z5 = fixture("z5.json");
    let out = run(&["ac", "--file", z5.to_str().unwrap(), "--max-len", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("classes: 5"));
}

#[test]
fn validate_distinguishes_clean_and_broken_tables() {
    let z5 = fixture("z5.json");
    let out = run(&["validate", "--file", z5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // corrupt one unit product
    let text = std::fs::read_to_string(&z5).unwrap();
    let broken = text.replacen("[\n      \"1\",\n      \"0\",\n      \"1\"\n    ]", "[\n      \"1\",\n      \"0\",\n      \"2\"\n    ]", 1);
    assert_ne!(text, broken, "fixture layout changed; update the test");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, broken).unwrap();
    let out = run(&["validate", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("check axioms: FAIL"));
}

#[test]
fn assoc_check_prints_the_witness() {
    let fx = fixture("nonassoc_witness.json");
    let out = run(&["assoc-check", "--file", fx.to_str().unwrap(), "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("witness_tuple: a b c"));
    assert!(text.contains("FAIL"));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["validate", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lace_emits_the_path_and_verifies() {
    let out = run(&["lace", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(0, 0)\n(1, 0)\n(0, 1)\n(0, 0)\n(1, 0)\n(0, 0)"));

    let out = run(&["lace", "--k", "5", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("check face-coverage: PASS"));
}

#[test]
fn h_lambda_accepts_rationals_and_decimals() {
    let out = run(&["h-lambda", "--lambda", "1/2", "--max-len", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("values-in-lattice: PASS"));

    let out = run(&["h-lambda", "--lambda", "0.25", "--max-len", "12"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["h-lambda", "--lambda", "x/y", "--max-len", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ladder_reports_the_associator() {
    let out = run(&["ladder", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("check associator-value: PASS"));
    assert!(text.contains("check inside-out-neutral: PASS"));
}

#[test]
fn json_reports_are_single_documents() {
    let out = run(&["tetrahedron", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["command"], "tetrahedron");
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn runs_are_reproducible_given_seed() {
    for args in [
        vec!["tetrahedron", "--json", "--seed", "7"],
        vec!["h-lambda", "--lambda", "1/2", "--max-len", "10", "--json", "--seed", "7"],
        vec!["lace", "--k", "3", "--verify", "--json", "--seed", "7"],
    ] {
        let a = stdout(&run(&args));
        let b = stdout(&run(&args));
        // wall time differs run to run; compare everything else
        let strip = |text: &str| -> serde_json::Value {
            let mut doc: serde_json::Value = serde_json::from_str(text).unwrap();
            doc.as_object_mut().unwrap().remove("wall_time_ms");
            doc
        };
        assert_eq!(strip(&a), strip(&b), "non-deterministic output for {args:?}");
    }
}
