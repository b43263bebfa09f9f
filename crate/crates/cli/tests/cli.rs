//! End-to-end tests of the command-line interface: report contents,
//! pipelines through curve files, emitter formats, and exit codes.

use assert_cmd::Command;
use predicates::prelude::*;

fn severi() -> Command {
    let mut c = Command::cargo_bin("severi").unwrap();
    c.env_remove("SEVERI_P");
    c
}

#[test]
fn params_reports_the_sextic_family() {
    severi()
        .args(["params", "--n", "6", "--k", "6", "--d", "0"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"genus\": 4"))
        .stdout(predicate::str::contains("\"rho\": 4"))
        .stdout(predicate::str::contains("\"expected_dim\": 15"))
        .stdout(predicate::str::contains("\"expected_moduli\": 7"))
        .stdout(predicate::str::contains("SpecialModuliProp24"));
}

#[test]
fn construct_analyze_normality_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quartic.json");
    severi()
        .args(["construct", "tricuspidal-quartic", "--out"])
        .arg(&path)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"cusps\": 3"))
        .stdout(predicate::str::contains("\"genus\": 0"));
    severi()
        .args(["analyze"])
        .arg(&path)
        .args(["--t", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"cusps\": 3"))
        .stdout(predicate::str::contains("\"verdict\": false"));
    severi()
        .args(["normality"])
        .arg(&path)
        .args(["--t", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"branch\": \"interpolation\""))
        .stdout(predicate::str::contains("\"rank\": 1"))
        .stdout(predicate::str::contains("\"verdict\": false"));
}

#[test]
fn mu_on_the_four_node_sextic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sextic.json");
    severi()
        .args(["construct", "four-node-sextic", "--seed", "11", "--out"])
        .arg(&path)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"nodes\": 4"));
    severi()
        .args(["mu"])
        .arg(&path)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"rank\": 6"))
        .stdout(predicate::str::contains("\"ker_dim\": 0"))
        .stdout(predicate::str::contains("\"surjective\": true"));
    severi()
        .args(["mu"])
        .arg(&path)
        .args(["--delete-point", "0"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"rank_increment_holds\": true"));
}

#[test]
fn census_formats() {
    let dir = tempfile::tempdir().unwrap();
    for (fmt, needle) in [
        ("json", "\"expected_moduli\": 7"),
        ("csv", "6,6,0,4,4,15,9,7"),
        ("md", "| 6 | 6 | 0 |"),
    ] {
        let path = dir.path().join(format!("census.{fmt}"));
        severi()
            .args(["census", "--n", "6..6", "--k", "6..6", "--d", "0..0", "--format", fmt])
            .args(["--out"])
            .arg(&path)
            .assert()
            .success();
        let body = std::fs::read_to_string(&path).unwrap();
        assert!(body.contains(needle), "missing {needle:?} in {fmt} output");
    }
}

#[test]
fn verify_paper_fast_passes() {
    severi()
        .args(["verify-paper", "--fast"])
        .assert()
        .success()
        .stdout(predicate::str::contains("[PASS] criterion  1"))
        .stdout(predicate::str::contains("[SKIP] criterion  2"))
        .stdout(predicate::str::contains("[PASS] criterion 12"))
        .stdout(predicate::str::contains("all criteria passed"));
}

#[test]
fn environment_prime_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    let mut cmd = severi();
    cmd.env("SEVERI_P", "37")
        .args(["construct", "tricuspidal-quartic", "--out"])
        .arg(&path)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"field\": \"F_37\""));
    let mut cmd = severi();
    cmd.env("SEVERI_P", "37")
        .args(["construct", "tricuspidal-quartic", "--p", "41", "--out"])
        .arg(&path)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"field\": \"F_41\""));
}

#[test]
fn usage_errors_exit_2() {
    severi().arg("no-such-subcommand").assert().code(2);
    severi().args(["params", "--n", "6"]).assert().code(2);
    // missing file
    severi()
        .args(["analyze", "/nonexistent/curve.json"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("error"));
    // malformed curve file (unknown field)
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"field":{"type":"rationals"},"degree":1,
           "coefficients":[{"exponents":[1,0,0],"value":"1"}],"extra":true}"#,
    )
    .unwrap();
    severi().arg("analyze").arg(&path).assert().code(2);
    // unknown recipe
    severi()
        .args(["construct", "no-such-recipe", "--out", "/tmp/x.json"])
        .assert()
        .code(2);
}

#[test]
fn non_reduced_input_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("double-line.json");
    std::fs::write(
        &path,
        r#"{"field":{"type":"prime","p":31},"degree":2,
           "coefficients":[{"exponents":[2,0,0],"value":"1"}]}"#,
    )
    .unwrap();
    severi()
        .arg("analyze")
        .arg(&path)
        .assert()
        .failure()
        .stderr(predicate::str::contains("not reduced").or(predicate::str::contains("reduced")));
}
