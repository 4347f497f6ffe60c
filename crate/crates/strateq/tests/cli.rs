//! End-to-end tests of the binary: exit codes, output shape, and the
//! JSON flag. Exit code policy: 0 clean, 1 a violation or refutation
//! was found, 2 usage or input error.

use std::io::Write;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.game", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strateq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn analyze_prints_report_and_exits_clean() {
    let out = run(&["analyze", &fixture("pd")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("pure equilibria: D,D"));
    assert!(text.contains("pure punishment levels: 1 1"));
    assert!(text.contains("individual rationality levels: 1 1"));
}

#[test]
fn analyze_json_is_valid_json() {
    let out = run(&["--json", "analyze", &fixture("pd")]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["players"], 2);
    assert_eq!(value["pure_equilibria"][0], "D,D");
}

#[test]
fn analyze_missing_file_is_usage_error() {
    let out = run(&["analyze", "/nonexistent/game.game"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn analyze_malformed_file_reports_position() {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    write!(file, "players: 2\nactions: 2 2\npayoffs 1: 1 2 x 4\n").expect("write");
    let out = run(&["analyze", file.path().to_str().expect("utf-8 path")]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn witness_nudi_finds_violation_and_exits_one() {
    let out = run(&["witness", "nudi", &fixture("pd"), "--behavior", "C,C"]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("certificate verifies: yes"));
    assert!(text.contains("payoffs 1: -1 -1 0 0"));
}

#[test]
fn witness_nudi_with_explicit_deviation() {
    let out = run(&[
        "witness",
        "nudi",
        &fixture("pd"),
        "--behavior",
        "C,C",
        "--player",
        "2",
        "--action",
        "D",
    ]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("player 2"));
}

#[test]
fn witness_nudi_on_equilibrium_is_clean() {
    let out = run(&["witness", "nudi", &fixture("pd"), "--behavior", "D,D"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no violation"));
}

#[test]
fn witness_nudi_rejects_half_specified_deviation() {
    let out = run(&[
        "witness",
        "nudi",
        &fixture("pd"),
        "--behavior",
        "C,C",
        "--player",
        "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn witness_pirar_on_uniform_play() {
    let out = run(&[
        "witness",
        "pirar",
        &fixture("pd"),
        "--behavior",
        "1/4@C,C 1/4@C,D 1/4@D,C 1/4@D,D",
    ]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("certificate verifies: yes"));
}

#[test]
fn witness_pirar_on_correlated_equilibrium_is_clean() {
    let out = run(&["witness", "pirar", &fixture("pd"), "--behavior", "D,D"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no violation"));
}

#[test]
fn elevate_equilibrium_exits_clean() {
    let out = run(&["elevate", &fixture("pd"), "--profile", "D,D"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("certificate verifies: yes"));
    assert!(text.contains("payoffs 1: 3 10 4 11"));
}

#[test]
fn elevate_non_equilibrium_is_domain_error() {
    let out = run(&["elevate", &fixture("pd"), "--profile", "C,C"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not a pure Nash equilibrium"));
}

#[test]
fn contradict_two_strict_equilibria() {
    let out = run(&[
        "contradict",
        &fixture("coordination"),
        "--a",
        "A,A",
        "--b",
        "B,B",
    ]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("first certificate"));
    assert!(text.contains("second certificate"));
    assert!(text.contains("no transfer-invariant singleton selection exists"));
}

#[test]
fn contradict_rejects_non_strict_equilibria() {
    let out = run(&["contradict", &fixture("pd"), "--a", "C,C", "--b", "D,D"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not a strict pure Nash equilibrium"));
}

#[test]
fn equiv_accepts_transferred_game() {
    // Same game twice: trivially equivalent with zero offsets.
    let out = run(&["equiv", &fixture("pd"), &fixture("pd")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("equivalent: yes"));
}

#[test]
fn equiv_refutes_unrelated_game() {
    let out = run(&["equiv", &fixture("pd"), &fixture("mp")]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("equivalent: no"));
}

#[test]
fn equiv_rejects_shape_mismatch() {
    let out = run(&["equiv", &fixture("pd"), &fixture("majority")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn audit_violated_axiom_exits_one() {
    let out = run(&[
        "audit",
        "--map",
        "welfare_max",
        "--axiom",
        "pir",
        "--count",
        "20",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("status: violated"));
    assert!(text.contains("counterexample re-verifies: yes"));
}

#[test]
fn audit_passing_axiom_exits_clean() {
    let out = run(&[
        "audit", "--map", "pne", "--axiom", "se", "--count", "8", "--budget", "4", "--seed", "2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("status: passed within budget"));
}

#[test]
fn audit_unknown_map_is_usage_error() {
    let out = run(&["audit", "--map", "nonsense", "--axiom", "se"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("built-ins"));
}

#[test]
fn audit_incompatible_axiom_is_usage_error() {
    let out = run(&[
        "audit", "--map", "pne", "--axiom", "pirar", "--count", "4", "--seed", "3",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cannot be audited"));
}

#[test]
fn verify_statement_exits_clean() {
    let out = run(&[
        "verify",
        "--prop",
        "P1",
        "--count",
        "10",
        "--samples",
        "4",
        "--seed",
        "5",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verified: yes"));
    assert!(text.contains("failures: none"));
}

#[test]
fn verify_json_reports_structure() {
    let out = run(&[
        "--json",
        "verify",
        "--prop",
        "P4",
        "--count",
        "5",
        "--samples",
        "4",
        "--seed",
        "6",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["proposition"], "P4");
    assert_eq!(value["failures"].as_array().expect("array").len(), 0);
}

#[test]
fn verify_unknown_statement_is_usage_error() {
    let out = run(&["verify", "--prop", "P9"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn family_range_flags_reach_the_generator() {
    let out = run(&[
        "verify",
        "--prop",
        "P3",
        "--count",
        "6",
        "--samples",
        "2",
        "--seed",
        "7",
        "--players",
        "2..2",
        "--actions",
        "2..2",
        "--payoffs",
        "-3..3",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("players 2..2, actions 2..2, payoffs -3..3"));
}

#[test]
fn bad_range_flag_is_usage_error() {
    let out = run(&[
        "verify",
        "--prop",
        "P1",
        "--count",
        "2",
        "--players",
        "3..x",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("invalid player range"));
}

#[test]
fn serialized_games_are_accepted_back() {
    // equiv(original, re-serialized copy) must hold with zero offsets.
    let text = std::fs::read_to_string(fixture("stag_hunt")).expect("fixture file exists");
    let file = strateq::gamefile::parse_game_file(&text).expect("fixture parses");
    let mut copy = tempfile::NamedTempFile::new().expect("temp file");
    write!(copy, "{}", strateq::gamefile::serialize_game_file(&file)).expect("write");
    let out = run(&[
        "equiv",
        &fixture("stag_hunt"),
        copy.path().to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("equivalent: yes"));
}

#[test]
fn json_witness_carries_certificate() {
    let out = run(&[
        "--json",
        "witness",
        "nudi",
        &fixture("pd"),
        "--behavior",
        "C,C",
    ]);
    assert_eq!(code(&out), 1);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["violation_found"], true);
    assert!(
        value["certificate"]["checked_inequalities"]
            .as_array()
            .expect("array")
            .len()
            >= 2
    );
}
