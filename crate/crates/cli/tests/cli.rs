//! End-to-end tests driving the built binary against the sample programs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn sample(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../samples")
        .join(name);
    path.to_str().unwrap().to_string()
}

fn tcont(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcont"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn check_prints_the_type() {
    let out = tcont(&["check", &sample("head.systemt")]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "type=(N -> N) -> N\n");
}

#[test]
fn modulus_reports_both_moduli_and_verifies() {
    let out = tcont(&["modulus", &sample("head.systemt"), "--point", "[5;const 0]"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "modulus_bb=1 modulus_oracle=1 verified=true\n");
}

#[test]
fn modulus_shows_divergent_moduli_for_eager_pairs() {
    // the discarded pair component is still evaluated, so the query-log
    // modulus overshoots the derived one
    let out = tcont(&[
        "modulus",
        &sample("pair_fst.systemt"),
        "--point",
        "[0,0,0,0,0;const 0]",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "modulus_bb=2 modulus_oracle=5 verified=true\n");
}

#[test]
fn eval_reports_value_and_queries() {
    let out = tcont(&["eval", &sample("rec_add.systemt"), "--point", "[2,3;const 0]"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "value=5 queries=[0,1] oracle_modulus=2\n");
}

#[test]
fn equiv_runs_clean_on_samples() {
    for file in ["const0.systemt", "rec_compose.systemt", "let_add.systemt"] {
        let out = tcont(&["equiv", &sample(file), "--points", "10"]);
        assert!(out.status.success(), "{file}");
        assert_eq!(stdout_of(&out), "points=10 mismatches=0\n", "{file}");
    }
}

#[test]
fn uc_modulus_of_a_projection() {
    let out = tcont(&["uc-modulus", &sample("proj2.systemt")]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "uc_modulus=3 prefixes_checked=8\n");
}

#[test]
fn uc_search_failure_sets_exit_code_one() {
    let out = tcont(&["uc-modulus", &sample("proj2.systemt"), "--max-depth", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_of(&out), "max_depth_hit=true max_depth=1\n");
}

#[test]
fn translate_emits_reparseable_output() {
    let out = tcont(&["translate", &sample("nested.systemt")]);
    assert!(out.status.success());
    let printed = stdout_of(&out);
    let reparsed = tcont_parse_via_check(&printed);
    assert!(reparsed, "translated output failed to re-check: {printed}");
}

fn tcont_parse_via_check(program: &str) -> bool {
    let dir = std::env::temp_dir().join(format!("tcont-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("translated.systemt");
    std::fs::write(&path, program).unwrap();
    let out = tcont(&["check", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    out.status.success()
}

#[test]
fn modulus_term_output_is_a_program_of_the_right_type() {
    let out = tcont(&["modulus-term", &sample("bump_head.systemt")]);
    assert!(out.status.success());
    let dir = std::env::temp_dir().join(format!("tcont-mt-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("modulus.systemt");
    std::fs::write(&path, stdout_of(&out)).unwrap();
    let check = tcont(&["check", path.to_str().unwrap()]);
    assert_eq!(stdout_of(&check), "type=(N -> N) -> N\n");
    let eval = tcont(&["eval", path.to_str().unwrap(), "--point", "[;const 0]"]);
    let line = stdout_of(&eval);
    assert!(line.starts_with("value=2 "), "got {line}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn json_output_is_valid_json() {
    let invocations: Vec<Vec<String>> = vec![
        vec!["check".into(), sample("head.systemt"), "--json".into()],
        vec![
            "modulus".into(),
            sample("head.systemt"),
            "--point".into(),
            "[5;const 0]".into(),
            "--json".into(),
        ],
        vec!["uc-modulus".into(), sample("proj2.systemt"), "--json".into()],
        vec![
            "equiv".into(),
            sample("nested.systemt"),
            "--points".into(),
            "5".into(),
            "--json".into(),
        ],
        vec!["translate".into(), sample("const0.systemt"), "--json".into()],
    ];
    for owned in invocations {
        let refs: Vec<&str> = owned.iter().map(|s| s.as_str()).collect();
        let out = tcont(&refs);
        assert!(out.status.success(), "{owned:?}");
        let parsed: Result<serde_json::Value, _> = serde_json::from_str(&stdout_of(&out));
        assert!(parsed.is_ok(), "not JSON: {owned:?}");
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "modulus",
        &sample("nested.systemt"),
        "--point",
        "[1,4;cycle 2,0]",
        "--json",
        "--seed",
        "99",
    ];
    let first = tcont(&args);
    let second = tcont(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn input_errors_exit_with_code_two() {
    // missing file
    let out = tcont(&["check", "/nonexistent/nowhere.systemt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    // unparseable point literal
    let out = tcont(&["eval", &sample("head.systemt"), "--point", "oops"]);
    assert_eq!(out.status.code(), Some(2));

    // usage error from the argument parser
    let out = tcont(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ill_typed_programs_are_input_errors() {
    let dir = std::env::temp_dir().join(format!("tcont-illtyped-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.systemt");
    std::fs::write(&path, "fun (x : N) => x x\n").unwrap();
    let out = tcont(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("applied non-function"), "stderr: {stderr}");
    std::fs::remove_file(&path).ok();
}
