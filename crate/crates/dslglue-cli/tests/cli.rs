//! End-to-end tests of the `dslglue` binary: exit codes, output shapes,
//! file outputs, and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn sample(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../samples")
        .join(name)
}

fn dslglue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dslglue"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn validate_reports_ok_for_packaged_dsls() {
    for name in ["dslu.dsl.json", "dslp.dsl.json", "bnu.dsl.json"] {
        let output = dslglue(&["validate", sample(name).to_str().unwrap()]);
        assert_eq!(exit_code(&output), 0, "{name}");
        assert_eq!(stdout_json(&output)["ok"], true, "{name}");
    }
}

#[test]
fn validate_flags_broken_dsls_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.dsl.json");
    std::fs::write(
        &path,
        r#"{"name": "dup", "types": [{"sigil": "a", "base": "unit"}, {"sigil": "a", "base": "unit"}], "functions": []}"#,
    )
    .unwrap();
    let output = dslglue(&["validate", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);
    assert_eq!(stdout_json(&output)["ok"], false);
}

#[test]
fn missing_and_malformed_inputs_exit_two() {
    let output = dslglue(&["validate", "/nonexistent/x.dsl.json"]);
    assert_eq!(exit_code(&output), 2);
    assert_eq!(stdout_json(&output)["error"], "io");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.dsl.json");
    std::fs::write(&path, "{not json").unwrap();
    let output = dslglue(&["validate", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert_eq!(stdout_json(&output)["error"], "parse");
}

#[test]
fn eval_prints_the_bare_result_value() {
    let dsl = sample("dslu.dsl.json");
    let term = sample("firstn.term.json");
    let output = dslglue(&[
        "eval",
        dsl.to_str().unwrap(),
        "--term",
        term.to_str().unwrap(),
        "--args",
        "2",
        "username",
    ]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(String::from_utf8_lossy(&output.stdout), "\"us\"\n");

    let output = dslglue(&[
        "eval",
        dsl.to_str().unwrap(),
        "--symbol",
        "fprint",
        "--args",
        "3",
        "\"username\"",
    ]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(String::from_utf8_lossy(&output.stdout), "\"use\"\n");
}

#[test]
fn eval_requires_exactly_one_evaluation_source() {
    let dsl = sample("dslu.dsl.json");
    let term = sample("firstn.term.json");
    let neither = dslglue(&["eval", dsl.to_str().unwrap(), "--args", "2", "x"]);
    assert_eq!(exit_code(&neither), 2);
    let both = dslglue(&[
        "eval",
        dsl.to_str().unwrap(),
        "--term",
        term.to_str().unwrap(),
        "--symbol",
        "fprint",
    ]);
    assert_eq!(exit_code(&both), 2);
}

#[test]
fn eval_rejects_ill_typed_arguments_with_exit_two() {
    let dsl = sample("dslu.dsl.json");
    let output = dslglue(&[
        "eval",
        dsl.to_str().unwrap(),
        "--symbol",
        "fprint",
        "--args",
        "username",
        "2",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert_eq!(stdout_json(&output)["error"], "type-mismatch");
}

#[test]
fn laws_pass_on_packaged_dsls() {
    let output = dslglue(&[
        "laws",
        sample("bnu.dsl.json").to_str().unwrap(),
        "--bound",
        "2",
        "--depth",
        "1",
    ]);
    assert_eq!(exit_code(&output), 0);
    let json = stdout_json(&output);
    assert_eq!(json["ok"], true);
    assert_eq!(json["axioms"].as_array().unwrap().len(), 4);
}

#[test]
fn glue_writes_the_glued_dsl_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("glued.dsl.json");
    let output = dslglue(&[
        "glue",
        sample("dslu-dslp.glue.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let json = stdout_json(&output);
    assert_eq!(json["kind"], "pushout");
    assert_eq!(json["result"]["type_classes"].as_array().unwrap().len(), 4);

    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["name"], "dslu+dslp");
    let report_path = dir.path().join("glued.pushout.json");
    assert!(report_path.exists());

    // The written DSL must itself validate cleanly.
    let check = dslglue(&["validate", out.to_str().unwrap()]);
    assert_eq!(exit_code(&check), 0);

    // And the written report must satisfy the universal property.
    let universal = dslglue(&[
        "check-universal",
        report_path.to_str().unwrap(),
        "--max-targets",
        "2",
    ]);
    assert_eq!(exit_code(&universal), 0);
    let json = stdout_json(&universal);
    assert_eq!(json["ok"], true);
    assert!(json["cocones"].as_u64().unwrap() > 0);
}

#[test]
fn bad_glue_exits_one_with_a_safety_report() {
    let output = dslglue(&["glue", sample("bad-structstr.glue.json").to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);
    let json = stdout_json(&output);
    assert_eq!(json["error"], "safety-violation");
    let diagnostics = json["report"]["diagnostics"].as_array().unwrap();
    assert_eq!(diagnostics[0]["kind"], "unglueable_types");
}

#[test]
fn colimit_handles_both_packaged_diagrams() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("span-colimit.dsl.json");
    let output = dslglue(&[
        "colimit",
        sample("span.diag.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let json = stdout_json(&output);
    assert_eq!(json["kind"], "colimit");
    assert_eq!(json["result"]["type_classes"].as_array().unwrap().len(), 4);
    let report_path = dir.path().join("span-colimit.colimit.json");
    let universal = dslglue(&[
        "check-universal",
        report_path.to_str().unwrap(),
        "--max-targets",
        "2",
    ]);
    assert_eq!(exit_code(&universal), 0);

    let output = dslglue(&["colimit", sample("pair.diag.json").to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    let json = stdout_json(&output);
    assert_eq!(json["result"]["type_classes"].as_array().unwrap().len(), 5);
}

#[test]
fn check_universal_rejects_caps_above_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.dsl.json");
    dslglue(&[
        "glue",
        sample("dslu-dslp.glue.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let report_path = dir.path().join("g.pushout.json");
    let output = dslglue(&[
        "check-universal",
        report_path.to_str().unwrap(),
        "--max-targets",
        "4",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert_eq!(stdout_json(&output)["error"], "target-cap-exceeded");
}

#[test]
fn quiet_silences_the_summary_but_not_the_report() {
    let noisy = dslglue(&["validate", sample("dslu.dsl.json").to_str().unwrap()]);
    assert!(!noisy.stderr.is_empty());
    let quiet = dslglue(&[
        "validate",
        sample("dslu.dsl.json").to_str().unwrap(),
        "--quiet",
    ]);
    assert!(quiet.stderr.is_empty());
    assert_eq!(noisy.stdout, quiet.stdout);
}
