//! End-to-end tests of the command-line surface, driven through
//! `cli::run` so exit codes and both output streams are observable.

use std::path::PathBuf;

use glp::cli::{run, CliOutcome};
use glp::decide::outcome_from_json;
use glp::hilbert::proof_to_json;
use glp::kripke::{model_from_json, model_to_json, JModel};
use glp::solovay::{schedule_to_json, SolovaySchedule};

fn glp(args: &[&str]) -> CliOutcome {
    let argv = std::iter::once("glp").chain(args.iter().copied());
    run(argv)
}

/// Writes `content` to a unique temp file and returns its path.
fn temp_file(tag: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("glp-test-{}-{tag}.json", std::process::id()));
    std::fs::write(&path, content).expect("write temp file");
    path
}

#[test]
fn ordinal_commands() {
    let out = glp(&["ordinal", "cmp", "w", "w^w"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "Less\n"));

    let out = glp(&["ordinal", "cmp", "w^w*2+3", "w^w*2+3"]);
    assert_eq!(out.stdout, "Equal\n");

    let out = glp(&["ordinal", "omul", "w+1"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "w^2+w\n"));

    let out = glp(&["ordinal", "absorbing", "w^w", "--json"]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (0, "{\"absorbing\":true}\n")
    );
}

#[test]
fn parse_condense_mplus() {
    let out = glp(&["parse", "<1>~p"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "([1]((p->F)->F)->F)\n");

    let out = glp(&["condense", "<w>T -> <1>T"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("map: [1, w]"), "{}", out.stdout);

    let out = glp(&["mplus", "[0]p->[1]p"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("[0]p->[1]p"), "{}", out.stdout);

    // Transfinite indices cannot be relativized.
    let out = glp(&["mplus", "[w]p"]);
    assert_eq!(out.code, 2);
    assert!(
        out.stderr.contains("not a finite ordinal"),
        "{}",
        out.stderr
    );
}

#[test]
fn parse_errors_exit_2() {
    let out = glp(&["parse", "[p]q"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(
        out.stderr.contains("syntax error at byte 1"),
        "{}",
        out.stderr
    );

    // Missing flag value is a usage error.
    let out = glp(&["decide", "<0>T", "--max-worlds"]);
    assert_eq!(out.code, 2);
}

#[test]
fn decide_refutation_and_json_round_trip() {
    let out = glp(&["decide", "<0>T", "--max-worlds", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("NonTheorem"), "{}", out.stdout);

    let out = glp(&["decide", "<0>T", "--max-worlds", "2", "--json"]);
    assert_eq!(out.code, 0);
    let outcome = outcome_from_json(&out.stdout).expect("documented format");
    assert_eq!(outcome.status(), "NonTheorem");

    let again = glp(&["decide", "<0>T", "--max-worlds", "2", "--json"]);
    assert_eq!(out.stdout, again.stdout, "output must be byte-stable");
}

#[test]
fn decide_with_parallel_search_agrees() {
    let sequential = glp(&["decide", "[1]p->[0]p", "--json"]);
    let parallel = glp(&["decide", "[1]p->[0]p", "--parallel", "4", "--json"]);
    assert_eq!(sequential.stdout, parallel.stdout);
}

#[test]
fn decide_unknown_and_stratified_only() {
    let out = glp(&["decide", "[0](p->p)", "--max-worlds", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("Unknown"), "{}", out.stdout);

    let out = glp(&["decide", "<0>T", "--stratified-only"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("NonTheorem"), "{}", out.stdout);
}

#[test]
fn check_proof_accepts_and_flags_rejection() {
    let proof = glp::corpus::index_shift_proof();
    let path = temp_file("proof-ok", &proof_to_json(&proof));
    let out = glp(&["check-proof", path.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "Accepted\n"));

    // Break line 3 and expect a flagged rejection naming it.
    let mut broken = proof.clone();
    broken.lines[2].formula = glp::syntax::Formula::bottom();
    let path = temp_file("proof-bad", &proof_to_json(&broken));
    let out = glp(&["check-proof", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stdout, "Rejected at line 3: mp-mismatch\n");

    let out = glp(&["check-proof", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("\"line\":3"), "{}", out.stdout);

    // The system override is applied before checking.
    let path = temp_file("proof-sys", &proof_to_json(&proof));
    let out = glp(&["check-proof", path.to_str().unwrap(), "--system", "J"]);
    assert_eq!(out.code, 1, "monotonicity is not available in J");

    let out = glp(&["check-proof", "/nonexistent/proof.json"]);
    assert_eq!(out.code, 2);
}

#[test]
fn decide_reads_extra_corpus_from_directory() {
    // [0]r -> [0][0]r is not in the builtin corpus (bodies p, q, p->q are),
    // so deciding its lift needs the extra directory.
    let miss = glp(&["decide", "[w]r->[w][w]r", "--max-worlds", "2"]);
    assert!(miss.stdout.starts_with("Unknown"), "{}", miss.stdout);

    let dir = std::env::temp_dir().join(format!("glp-test-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let proof = glp::corpus::transitivity_proof(glp::syntax::parse_formula("r").unwrap());
    std::fs::write(dir.join("trans-r.json"), proof_to_json(&proof)).unwrap();
    let hit = glp(&["decide", "[w]r->[w][w]r", "--corpus", dir.to_str().unwrap()]);
    assert!(hit.stdout.starts_with("Theorem (proof"), "{}", hit.stdout);
}

#[test]
fn model_validate_and_check() {
    let mut model = JModel::new(2, 2);
    model.add_edge(0, 0, 1);
    model.set_true("p", 0);
    let path = temp_file("model-ok", &model_to_json(&model));
    let out = glp(&["model", "validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("J-frame: true"), "{}", out.stdout);

    let out = glp(&["model", "check", path.to_str().unwrap(), "<0>p"]);
    assert_eq!(out.code, 1, "not valid on all worlds");
    assert_eq!(out.stdout, "worlds: [1]\nvalid: false\n");

    let out = glp(&["model", "check", path.to_str().unwrap(), "[0]p", "--json"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "{\"valid\":true,\"worlds\":[0,1]}\n");

    // A reflexive edge fails validation with exit 1.
    let mut bad = JModel::new(1, 1);
    bad.add_edge(0, 0, 0);
    let path = temp_file("model-bad", &model_to_json(&bad));
    let out = glp(&["model", "validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("condition-1"), "{}", out.stdout);
}

#[test]
fn model_file_format_is_byte_stable() {
    let text = "{\n  \"worlds\": 2,\n  \"relations\": [\n    [\n      [0,\n        1\n      ]\n    ],\n    []\n  ],\n  \"valuation\": {\n    \"p\": [0]\n  }\n}";
    let model = model_from_json(text).unwrap();
    let canonical = model_to_json(&model);
    // Reading back the canonical form reproduces it exactly.
    assert_eq!(
        model_to_json(&model_from_json(&canonical).unwrap()),
        canonical
    );
}

#[test]
fn solovay_run_and_props() {
    let model = JModel::new(1, 2).add_root();
    let model_path = temp_file("solovay-model", &model_to_json(&model));
    let mut schedule = SolovaySchedule::new();
    schedule.insert(0, 0, 1);
    let sched_path = temp_file("solovay-sched", &schedule_to_json(&schedule));

    let out = glp(&[
        "solovay",
        "run",
        model_path.to_str().unwrap(),
        sched_path.to_str().unwrap(),
        "--steps",
        "4",
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "path: [0, 1, 1, 1]\nlimit: 1\n");

    let out = glp(&[
        "solovay",
        "props",
        model_path.to_str().unwrap(),
        "--max-events",
        "2",
        "--max-steps",
        "5",
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("violations: 0"), "{}", out.stdout);

    // Out-of-range target is an input error.
    let mut bad = SolovaySchedule::new();
    bad.insert(0, 0, 7);
    let bad_path = temp_file("solovay-bad", &schedule_to_json(&bad));
    let out = glp(&[
        "solovay",
        "run",
        model_path.to_str().unwrap(),
        bad_path.to_str().unwrap(),
        "--steps",
        "3",
    ]);
    assert_eq!(out.code, 2);
}

#[test]
fn help_exits_zero() {
    let out = glp(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("decide"), "{}", out.stdout);

    let out = glp(&["frobnicate"]);
    assert_eq!(out.code, 2);
}
