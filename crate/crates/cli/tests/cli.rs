//! End-to-end tests of the `nestofan` binary: exit codes, byte-determinism
//! of outputs, the frozen rank-2 golden file, rendering, and sweeps.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nestofan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn write_fixture(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("fixture writes");
    path
}

const COMPLETE2: &str = r#"{
  "ground": ["1", "2"],
  "members": [["1"], ["2"], ["1", "2"]],
  "mode": "plain"
}
"#;

const COMPLETE3: &str = r#"{
  "ground": ["1", "2", "3"],
  "members": [["1"], ["2"], ["3"], ["1", "2"], ["1", "3"], ["2", "3"], ["1", "2", "3"]],
  "mode": "plain"
}
"#;

const WEIGHTS_GOOD: &str = r#"{
  "d": 2,
  "n": 6,
  "a": ["1", "1", "3/4", "1/2", "1/4", "1/4"]
}
"#;

const WEIGHTS_OUTSIDE: &str = r#"{
  "d": 2,
  "n": 6,
  "a": ["1", "1", "1", "5/9", "1/4", "1/4"]
}
"#;

#[test]
fn verify_thm1_on_the_figure_instance_passes_with_its_f_vector() {
    let out = run(&["verify", "thm1", "--d", "2", "--n", "5"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"pass\": true"));
    assert!(text.contains("f_vector [1, 6, 6]"));
}

#[test]
fn verify_thm1_rejects_a_degenerate_shape_with_exit_2() {
    let out = run(&["verify", "thm1", "--d", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("requires n > d+2"));
}

#[test]
fn verify_thm3_on_the_smallest_shape_notes_the_case_and_passes() {
    let out = run(&["verify", "thm3", "--d", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("projective line"));
}

#[test]
fn verify_thm3_writes_its_report_even_when_checks_fail() {
    let dir = tempfile::tempdir().expect("tempdir");
    let report = dir.path().join("report.json");
    let out = bin()
        .args(["verify", "thm3", "--d", "2", "--n", "5", "--out"])
        .arg(&report)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(&report).expect("report was written");
    assert!(text.contains("\"excess-over-two\""));
    assert!(text.contains("floor-dominance[1/(n-2)]"));
    assert!(text.contains("floor-dominance[1/(n-d-1)]"));
    assert!(text.contains("coarse-chamber[tail-from-d+3]"));
    assert!(text.contains("coarse-chamber[tail-from-d+2]"));
    assert!(text.contains("\"pass\": false"));
    assert_eq!(text, stdout(&out));
}

#[test]
fn symprod_writes_the_frozen_hexagon_bytes() {
    let dir = tempfile::tempdir().expect("tempdir");
    let set = write_fixture(dir.path(), "complete2.json", COMPLETE2);
    let fan = dir.path().join("fan.json");
    let out = bin()
        .args(["symprod", "--building-set"])
        .arg(&set)
        .args(["--d", "2", "--out"])
        .arg(&fan)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&fan).expect("fan was written");
    assert!(text.starts_with("{\n  \"rank\": 2,"));
    assert!(text.contains("\"2:1\""));
    assert!(text.ends_with("}\n"));
    let expected: Vec<Vec<i64>> = serde_json::from_value(
        serde_json::from_str::<serde_json::Value>(&text).expect("valid JSON")["rays"].clone(),
    )
    .expect("rays decode");
    assert_eq!(
        expected,
        vec![
            vec![-1, -1],
            vec![-1, 0],
            vec![0, -1],
            vec![0, 1],
            vec![1, 0],
            vec![1, 1],
        ]
    );
}

#[test]
fn repeated_runs_produce_byte_identical_output() {
    let dir = tempfile::tempdir().expect("tempdir");
    let set = write_fixture(dir.path(), "complete3.json", COMPLETE3);
    let weights = write_fixture(dir.path(), "weights.json", WEIGHTS_GOOD);

    let nested: Vec<String> = (0..2)
        .map(|_| {
            let out = bin()
                .args(["nested-fan", "--building-set"])
                .arg(&set)
                .output()
                .expect("binary runs");
            assert!(out.status.success());
            stdout(&out)
        })
        .collect();
    assert_eq!(nested[0], nested[1]);

    let verified: Vec<String> = (0..2)
        .map(|_| {
            let out = bin()
                .args(["verify", "thm2", "--weights"])
                .arg(&weights)
                .output()
                .expect("binary runs");
            assert!(out.status.success());
            stdout(&out)
        })
        .collect();
    assert_eq!(verified[0], verified[1]);

    let fans: Vec<String> = (0..2)
        .map(|_| {
            let out = run(&["lm-fan", "--d", "1", "--n", "6"]);
            assert!(out.status.success());
            stdout(&out)
        })
        .collect();
    assert_eq!(fans[0], fans[1]);
}

#[test]
fn lm_fan_matches_blowup_fan_on_the_equal_tail_weights() {
    let dir = tempfile::tempdir().expect("tempdir");
    let weights = write_fixture(
        dir.path(),
        "lm16.json",
        r#"{
  "d": 1,
  "n": 6,
  "a": ["1", "1", "1/4", "1/4", "1/4", "1/4"]
}
"#,
    );
    let direct = run(&["lm-fan", "--d", "1", "--n", "6"]);
    assert!(direct.status.success());
    let via_file = bin()
        .args(["blowup-fan", "--weights"])
        .arg(&weights)
        .output()
        .expect("binary runs");
    assert!(via_file.status.success());
    assert_eq!(stdout(&direct), stdout(&via_file));
}

#[test]
fn verify_thm2_rejects_weights_outside_the_chamber_with_exit_2() {
    let dir = tempfile::tempdir().expect("tempdir");
    let weights = write_fixture(dir.path(), "outside.json", WEIGHTS_OUTSIDE);
    let out = bin()
        .args(["verify", "thm2", "--weights"])
        .arg(&weights)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("toric chamber"));
}

#[test]
fn verify_oracle_and_order_pass_on_a_complete_set() {
    let dir = tempfile::tempdir().expect("tempdir");
    let set = write_fixture(dir.path(), "complete3.json", COMPLETE3);
    for kind in ["oracle", "order"] {
        let out = bin()
            .args(["verify", kind, "--building-set"])
            .arg(&set)
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "{} failed; stderr: {}",
            kind,
            stderr(&out)
        );
        assert!(stdout(&out).contains("\"pass\": true"));
    }
}

#[test]
fn verify_lemma_accepts_every_source_kind() {
    let dir = tempfile::tempdir().expect("tempdir");
    let set = write_fixture(dir.path(), "complete3.json", COMPLETE3);
    let weights = write_fixture(dir.path(), "weights.json", WEIGHTS_GOOD);
    let by_shape = run(&["verify", "lemma", "--d", "2", "--n", "5"]);
    assert!(by_shape.status.success());
    let by_set = bin()
        .args(["verify", "lemma", "--building-set"])
        .arg(&set)
        .output()
        .expect("binary runs");
    assert!(by_set.status.success());
    let by_weights = bin()
        .args(["verify", "lemma", "--weights"])
        .arg(&weights)
        .output()
        .expect("binary runs");
    assert!(by_weights.status.success());
}

#[test]
fn unknown_check_kinds_and_malformed_files_exit_2() {
    let out = run(&["verify", "frobnicate", "--d", "2", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown check"));

    let dir = tempfile::tempdir().expect("tempdir");
    let broken = write_fixture(dir.path(), "broken.json", "{ not json ]");
    let out = bin()
        .args(["nested-fan", "--building-set"])
        .arg(&broken)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("absent.json");
    let out = bin()
        .args(["blowup-fan", "--weights"])
        .arg(&missing)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn render_draws_the_figure_and_refuses_higher_ranks() {
    let dir = tempfile::tempdir().expect("tempdir");
    let set = write_fixture(dir.path(), "complete2.json", COMPLETE2);
    let svg = dir.path().join("figure.svg");
    let out = bin()
        .args(["render", "--building-set"])
        .arg(&set)
        .args(["--d", "2", "--out"])
        .arg(&svg)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&svg).expect("svg was written");
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("class=\"ray\"").count(), 6);
    assert_eq!(text.matches("class=\"dual-vertex\"").count(), 6);

    let out = run(&["simplex-fan", "--n", "5", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("render supports rank-2 fans only"));

    let small = run(&["simplex-fan", "--n", "3", "--format", "svg"]);
    assert!(small.status.success());
    assert_eq!(stdout(&small).matches("class=\"ray\"").count(), 3);
}

#[test]
fn sweep_covers_the_requested_grid_and_honors_the_budget() {
    let dir = tempfile::tempdir().expect("tempdir");
    let report = dir.path().join("sweep.json");
    let out = bin()
        .args(["sweep", "--d", "1-2", "--n", "5-6", "--out"])
        .arg(&report)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&report).expect("report was written");
    for cell in ["d=1 n=5", "d=1 n=6", "d=2 n=5", "d=2 n=6"] {
        assert!(text.contains(&format!("thm1 {cell}")));
        assert!(text.contains(&format!("lemma-join {cell}")));
        assert!(text.contains(&format!("order-independence {cell}")));
    }
    assert!(!text.contains("\"pass\": false"));
    assert!(text.contains("\"timing_ms\""));

    let empty = run(&["sweep", "--d", "2-1", "--n", "5-6"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).contains("\"checks\": []"));

    let refused = bin()
        .args(["sweep", "--d", "1-2", "--n", "5-6"])
        .env("NESTOFAN_BUDGET_MS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(refused.status.code(), Some(2));
    assert!(stderr(&refused).contains("NESTOFAN_BUDGET_MS=1"));
    assert!(stderr(&refused).contains("estimated"));
}

#[test]
fn sweep_reports_are_deterministic_outside_the_timing_block() {
    let strip_timing = |text: &str| -> String {
        let cut = text.find("\"timing_ms\"").expect("report carries timings");
        text[..cut].to_string()
    };
    let runs: Vec<String> = (0..2)
        .map(|_| {
            let out = run(&["sweep", "--d", "1", "--n", "5-6", "--seed", "7"]);
            assert!(out.status.success());
            stdout(&out)
        })
        .collect();
    assert_eq!(strip_timing(&runs[0]), strip_timing(&runs[1]));
}

#[test]
fn comma_ranges_and_single_values_parse() {
    let out = run(&["sweep", "--d", "1", "--n", "5,7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("thm1 d=1 n=5"));
    assert!(text.contains("thm1 d=1 n=7"));
    assert!(!text.contains("n=6"));

    let bad = run(&["sweep", "--d", "x", "--n", "5"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("bad range component"));
}
