//! Exit codes, diagnostics and round trips of the command-line tool.

use std::path::{Path, PathBuf};

use assert_cmd::Command;
use predicates::prelude::*;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.json"))
}

fn vpconf() -> Command {
    let mut c = Command::cargo_bin("vpconf").unwrap();
    c.env_remove("VPCONF_ORACLE_LEN");
    c
}

#[test]
fn member_exit_codes() {
    vpconf().args(["member"]).arg(fixture("anbn")).arg("aabb").assert().code(0);
    vpconf().args(["member"]).arg(fixture("anbn")).args(["a", "a", "b", "b"]).assert().code(0);
    vpconf().args(["member"]).arg(fixture("anbn")).arg("aab").assert().code(1).stdout("rejected\n");
    vpconf().args(["member"]).arg(fixture("anbn")).arg("ε").assert().code(0);
    vpconf().args(["member"]).arg(fixture("dispenser")).arg("bcbt").assert().code(0);
}

#[test]
fn unknown_symbol_is_an_input_error() {
    vpconf()
        .args(["member"])
        .arg(fixture("anbn"))
        .args(["a", "zz"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("zz"));
}

#[test]
fn overlapping_partition_is_rejected() {
    let e = fixture("empty_language");
    vpconf()
        .arg("check")
        .args([fixture("overlapping_alphabet"), fixture("faithful_iut"), e.clone(), e])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("overlapping_alphabet.json"));
}

#[test]
fn malformed_json_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("broken.json");
    std::fs::write(&bad, "{\"kind\": \"vpa\"").unwrap();
    vpconf()
        .arg("empty")
        .arg(&bad)
        .assert()
        .code(2)
        .stderr(predicate::str::contains("broken.json").and(predicate::str::contains("malformed JSON")));
}

#[test]
fn nondeterministic_operand_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("desired_anbnx")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["transitions"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"from": "d0", "label": "a", "stack": "A", "to": "d1"}));
    let d = dir.path().join("nondet_d.json");
    std::fs::write(&d, v.to_string()).unwrap();
    vpconf()
        .arg("check")
        .args([fixture("pushdown_spec"), fixture("faithful_iut"), d, fixture("forbidden_a_plus_x")])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("nondet_d.json").and(predicate::str::contains("not deterministic")));
}

#[test]
fn wrong_document_kind() {
    vpconf()
        .arg("complement")
        .arg(fixture("pushdown_spec"))
        .assert()
        .code(2)
        .stderr(predicate::str::contains("expected a vpa"));
}

#[test]
fn validate_reports_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("pushdown_spec")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["states"].as_array_mut().unwrap().push(serde_json::json!("island"));
    let p = dir.path().join("island.json");
    std::fs::write(&p, v.to_string()).unwrap();
    vpconf()
        .arg("validate")
        .arg(&p)
        .assert()
        .code(1)
        .stdout(predicate::str::contains("state island"));
}

#[test]
fn double_complement_keeps_the_language() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    let out = vpconf().arg("complement").arg(fixture("anbn")).output().unwrap();
    std::fs::write(&once, out.stdout).unwrap();
    let out = vpconf().arg("complement").arg(&once).output().unwrap();
    std::fs::write(&twice, out.stdout).unwrap();
    let list = |p: &Path| {
        vpconf()
            .arg("enumerate")
            .arg(p)
            .args(["--max-len", "6"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(list(&twice), list(&fixture("anbn")));
    assert_ne!(list(&once), list(&fixture("anbn")));
}

#[test]
fn oracle_length_comes_from_the_environment() {
    let args = [fixture("pushdown_spec"), fixture("faulty_iut"), fixture("desired_anbnx"), fixture("forbidden_extra_b")];
    vpconf()
        .arg("check")
        .args(&args)
        .env("VPCONF_ORACLE_LEN", "3")
        .assert()
        .code(1)
        .stdout(predicate::str::contains("agrees up to length 3"));
    vpconf()
        .arg("check")
        .args(&args)
        .env("VPCONF_ORACLE_LEN", "0")
        .assert()
        .code(1)
        .stdout(predicate::str::contains("agrees").not());
    vpconf()
        .arg("check")
        .args(&args)
        .env("VPCONF_ORACLE_LEN", "many")
        .assert()
        .code(2);
}

#[test]
fn output_is_canonical() {
    let a = vpconf().arg("to-vpa").arg(fixture("pushdown_spec")).output().unwrap().stdout;
    let b = vpconf().arg("to-vpa").arg(fixture("pushdown_spec")).output().unwrap().stdout;
    assert_eq!(a, b);
}
