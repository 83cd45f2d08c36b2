//! End-to-end tests of the command-line binary: exit codes, output shapes,
//! and byte-for-byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bruhat-strata"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn analyze_single_letter_word() {
    let out = run(&["analyze", "--word", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["word"], serde_json::json!([1]));
    assert_eq!(report["permutation"], "21");
    assert_eq!(report["length"], 1);
    assert_eq!(report["rank"], 1);
    assert_eq!(report["lift_total"], 2);
    assert_eq!(report["components_total"], 2);
    assert_eq!(report["orbits"].as_array().expect("array").len(), 2);
}

#[test]
fn analyze_by_permutation_matches_word_form() {
    let by_perm = run(&["analyze", "--perm", "45132"]);
    assert_eq!(by_perm.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&by_perm)).expect("valid json");
    assert_eq!(report["permutation"], "45132");
    assert_eq!(report["components_total"], 40);
    assert_eq!(report["length"], 7);

    // The canonical word of [45132] must produce the identical report.
    let by_word = run(&["analyze", "--word", "2,1,3,2,4,3,2"]);
    assert_eq!(by_word.status.code(), Some(0));
    assert_eq!(stdout(&by_perm), stdout(&by_word));
}

#[test]
fn analyze_is_deterministic_across_threads() {
    let single = run(&["analyze", "--perm", "4312", "--threads", "1"]);
    let multi = run(&["analyze", "--perm", "4312", "--threads", "3"]);
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(multi.status.code(), Some(0));
    assert_eq!(stdout(&single), stdout(&multi));
}

#[test]
fn analyze_rejects_malformed_input() {
    assert_eq!(run(&["analyze", "--word", "x"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--word", "1", "--perm", "21"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--perm", "122"]).status.code(), Some(2));
}

#[test]
fn analyze_rejects_non_reduced_words() {
    assert_eq!(run(&["analyze", "--word", "1,1"]).status.code(), Some(3));
    assert_eq!(run(&["analyze", "--word", "1,2,1,2"]).status.code(), Some(3));
}

#[test]
fn components_eta_small_ranks() {
    let out = run(&["components-eta", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "6");

    let threaded = run(&["components-eta", "--n", "3", "--threads", "2"]);
    assert_eq!(threaded.status.code(), Some(0));
    assert_eq!(stdout(&threaded).trim(), "20");
}

#[test]
fn components_eta_rejects_out_of_range() {
    assert_eq!(run(&["components-eta", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["components-eta", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn export_dot_is_deterministic() {
    let args = ["export", "--word", "1,2,3,1,2", "--z=--+-+", "--format", "dot"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert!(text.starts_with("graph strata {"), "unexpected header: {text}");
    let vertex_lines = text.lines().filter(|l| l.contains("label=\"") && !l.contains(" -- ")).count();
    let edge_lines = text.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!(vertex_lines, 3);
    assert_eq!(edge_lines, 2);

    let second = run(&args);
    assert_eq!(stdout(&second), text);
}

#[test]
fn export_json_to_file() {
    let path: PathBuf = std::env::temp_dir().join(format!("strata-export-{}.json", std::process::id()));
    let path_text = path.to_str().expect("utf-8 temp path");
    let out = run(&["export", "--word", "1,2,3,1,2", "--z=--+-+", "--out", path_text]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).expect("file written");
    std::fs::remove_file(&path).ok();
    let graph: serde_json::Value = serde_json::from_str(&written).expect("valid json");
    assert_eq!(graph["vertices"].as_array().expect("array").len(), 3);
    assert_eq!(graph["edges"].as_array().expect("array").len(), 2);
    assert_eq!(graph["components"], 1);
}

#[test]
fn export_rejects_unknown_selectors() {
    assert_eq!(
        run(&["export", "--word", "1,2,3,1,2", "--z", "99"]).status.code(),
        Some(4)
    );
    assert_eq!(
        run(&["export", "--word", "1,2,3,1,2", "--z", "bogus"]).status.code(),
        Some(4)
    );
    // Sign vector of the wrong length.
    assert_eq!(
        run(&["export", "--word", "1,2,3,1,2", "--z=--+"]).status.code(),
        Some(4)
    );
}

#[test]
fn check_fast_passes() {
    let out = run(&["check", "--level", "fast"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let passes = text.lines().filter(|l| l.starts_with("[check]") && l.contains("PASS")).count();
    assert_eq!(passes, 8);
    assert!(!text.contains("FAIL"));
}

#[test]
fn check_rejects_unknown_level() {
    assert_eq!(run(&["check", "--level", "bogus"]).status.code(), Some(2));
}
