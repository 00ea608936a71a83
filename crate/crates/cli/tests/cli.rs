//! End-to-end runs of the binary: golden JSON output and exit codes.
//!
//! `TRIVERIFY_BLESS=1 cargo test -p triverify --test cli` rewrites the golden files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn data(name: &str) -> String {
    root().join("data").join(name).to_string_lossy().into_owned()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_triverify"));
    cmd.args(args).env_remove("TRIVERIFY_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(out.code, 0, "{name}: {}", out.stderr);
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("TRIVERIFY_BLESS").is_some() {
        fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out.stdout, expected, "{name} drifted from its golden file");
}

#[test]
fn golden_chi() {
    golden("chi_720_5_6.json", &["chi", "--order", "720", "--m", "5", "--n", "6"]);
    golden("chi_60_3_6.json", &["chi", "--order", "60", "--m", "3", "--n", "6"]);
}

#[test]
fn golden_ppd() {
    golden("ppd_2_6.json", &["ppd", "--q", "2", "--a", "6"]);
    golden("ppd_4_3.json", &["ppd", "--q", "4", "--a", "3"]);
}

#[test]
fn golden_primegraph() {
    golden("primegraph_a5.json", &["primegraph", "--group", "A_5"]);
}

#[test]
fn golden_scan() {
    golden("scan_psl2_6.json", &["scan-psl2", "--xmax", "6"]);
}

#[test]
fn golden_structconst() {
    let s3 = data("tables/s3.json");
    golden(
        "structconst_s3.json",
        &["structconst", "--table", &s3, "--i", "1", "--j", "1", "--k", "2"],
    );
}

#[test]
fn golden_verify() {
    golden(
        "verify_s6_5_6.json",
        &["verify", "--group", "S_6", "--m", "5", "--n", "6"],
    );
    golden(
        "verify_m10_4_5.json",
        &["verify", "--group", "M_10", "--m", "4", "--n", "5"],
    );
    golden(
        "verify_s9_10_7.json",
        &["verify", "--group", "S_9", "--m", "10", "--n", "7"],
    );
}

#[test]
fn golden_tables() {
    golden("tables_small.json", &["tables", "--rows", &fixture("small_rows.json")]);
}

#[test]
fn text_output() {
    let out = run(&["--format", "text", "chi", "--order", "5040", "--m", "10", "--n", "7"]);
    assert_eq!(out.stdout.trim(), "chi = -1296 = -2^4·3^4");
    let out = run(&["--format", "text", "ppd", "--q", "2", "--a", "6"]);
    assert_eq!(out.stdout.trim(), "none (exception)");
    let out = run(&["--format", "text", "ppd", "--q", "2", "--a", "4"]);
    assert_eq!(out.stdout.trim(), "5");
    let out = run(&["--format", "text", "tables", "--rows", &fixture("small_rows.json")]);
    assert!(out.stdout.contains("3 passed, 0 failed, 0 skipped"), "{}", out.stdout);
}

#[test]
fn pgl2_13_structure_constant() {
    let table = data("tables/pgl2_13.json");
    let out = run(&[
        "--format",
        "text",
        "structconst",
        "--table",
        &table,
        "--i",
        "b^7",
        "--j",
        "b^1",
        "--k",
        "13A",
    ]);
    assert_eq!(out.stdout.trim(), "13");
    let out = run(&["--format", "text", "classes", "--group", "PGL_2(13)"]);
    assert_eq!(out.code, 0);
    // classes 1, 12 and 11 are the outer involutions, an order-14 class and 13A
    let out = run(&[
        "structconst",
        "--group",
        "PGL_2(13)",
        "--i",
        "1",
        "--j",
        "12",
        "--k",
        "11",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["i"]["element_order"], 2);
    assert_eq!(v["i"]["size"], "78");
    assert_eq!(v["j"]["element_order"], 14);
    assert_eq!(v["k"]["element_order"], 13);
    assert_eq!(v["value"], 13);
}

#[test]
fn tables_exit_codes() {
    let out = run(&["tables", "--rows", &fixture("wrong_chi.json")]);
    assert_eq!(out.code, 1);
    let out = run(&["tables", "--rows", &fixture("missing_group.json")]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["summary"]["skipped"], 1);
    assert_eq!(v["rows"][1]["outcome"], "SKIPPED");
    assert_eq!(run(&["tables", "--rows", &fixture("malformed_rows.json")]).code, 2);
    assert_eq!(run(&["tables", "--rows", &fixture("does_not_exist.json")]).code, 2);
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["verify", "--group", "NoSuchGroup", "--m", "2", "--n", "3"],
        vec!["verify", "--group", "S_5", "--m", "1", "--n", "3"],
        vec!["chi", "--order", "abc", "--m", "2", "--n", "3"],
        vec!["chi", "--order", "0", "--m", "2", "--n", "3"],
        vec!["ppd", "--q", "1", "--a", "3"],
        vec!["scan-psl2", "--xmax", "64"],
        vec!["structconst", "--group", "S_4", "--i", "0", "--j", "0", "--k", "99"],
        vec!["primegraph", "--group", "S_12"],
        vec!["export-table", "--group", "A_5", "--out", "/dev/null"],
        vec!["verify", "--m", "2"],
        vec!["--seed", "1", "chi"],
    ] {
        let out = run(&args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(!out.stderr.contains("panicked"), "{args:?}");
    }
    let out = run(&[
        "verify",
        "--catalog",
        &fixture("bad_catalog.json"),
        "--group",
        "S_3",
        "--m",
        "2",
        "--n",
        "3",
    ]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("computed order 6, claimed 12"), "{}", out.stderr);
}

#[test]
fn expectations_and_catalogs() {
    let m10 = ["verify", "--group", "M_10", "--m", "4", "--n", "5"];
    assert_eq!(run(&[&m10[..], &["--expect", "no"]].concat()).code, 0);
    assert_eq!(run(&[&m10[..], &["--expect", "yes"]].concat()).code, 1);
    let out = run(&[
        "verify",
        "--catalog",
        &fixture("tiny_catalog.json"),
        "--group",
        "Sym3",
        "--m",
        "2",
        "--n",
        "3",
    ]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["status"], "PROVEN_YES");
}

#[test]
fn replay_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verdict.json");
    let out = run(&[
        "verify", "--group", "SL_3(3)", "--m", "4", "--n", "13", "--seed", "0x1234",
    ]);
    fs::write(&path, &out.stdout).unwrap();
    let again = run(&["verify", "--replay", path.to_str().unwrap()]);
    assert_eq!(again.code, 0, "{}", again.stderr);
    assert_eq!(again.stdout, out.stdout);
    let tampered = out.stdout.replacen("\"product_hits\": ", "\"product_hits\": 9", 1);
    assert_ne!(tampered, out.stdout);
    fs::write(&path, tampered).unwrap();
    assert_eq!(run(&["verify", "--replay", path.to_str().unwrap()]).code, 1);
}

#[test]
fn budget_environment_variable() {
    let out = run_env(
        &["verify", "--group", "S_6", "--m", "5", "--n", "6"],
        &[("TRIVERIFY_BUDGET", "10")],
    );
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["transcript"]["budgets"]["element_budget"], 10);
    assert_eq!(v["status"], "PROVEN_YES");
    let stages = v["transcript"]["stages"].as_array().unwrap();
    assert!(stages.iter().any(|s| s["name"] == "class-data"));
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["verify", "--group", "A_9", "--m", "10", "--n", "7"];
    let one = run(&[&["--jobs", "1"][..], &args[..]].concat());
    let many = run(&[&["--jobs", "4"][..], &args[..]].concat());
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn shipped_catalog_matches_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    assert_eq!(run(&["export-catalog", "--out", path.to_str().unwrap()]).code, 0);
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        fs::read_to_string(data("catalog.json")).unwrap()
    );
}
