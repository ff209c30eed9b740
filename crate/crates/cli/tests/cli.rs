//! End-to-end tests of the `repgrowth` binary: artifact values, exit codes,
//! byte-identical output, and cache behavior.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn repgrowth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repgrowth"))
        .args(args)
        .env_remove("REPGROWTH_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn repgrowth_cached(args: &[&str], cache: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repgrowth"))
        .args(args)
        .env("REPGROWTH_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn result_of(output: &Output) -> Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let v: Value = serde_json::from_slice(&output.stdout).expect("artifact is json");
    v["result"].clone()
}

#[test]
fn irr_reports_the_metabelian_linear_count() {
    let out = repgrowth(&["irr", "--group", "gstar 7 2", "--field", "4", "--maxdim", "4"]);
    let result = result_of(&out);
    assert_eq!(result["r_star"], serde_json::json!([3, 0, 16, 0]));
    assert_eq!(result["cumulative"], serde_json::json!([3, 3, 19, 19]));
}

#[test]
fn chop_reports_the_sl3_factor_dimensions() {
    let out = repgrowth(&["chop", "--group", "sl 3 2", "--field", "2", "--regular"]);
    let result = result_of(&out);
    let mut dims: Vec<u64> = result["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["dim"].as_u64().unwrap())
        .collect();
    dims.sort();
    assert_eq!(dims, vec![1, 3, 3, 8]);
    assert_eq!(result["total_dim"], 168);
}

#[test]
fn series_evaluates_to_the_pinned_rational() {
    let out = repgrowth(&[
        "series", "--group", "sl 2 5", "--field", "4", "--degree", "4", "--eval-c", "1",
    ]);
    let result = result_of(&out);
    assert_eq!(result["coefficients"], serde_json::json!([1, 2, 0, 1]));
    assert_eq!(result["evaluation"]["value"], "97/64");
}

#[test]
fn lh1_finds_the_sixteen_element_witness() {
    let out = repgrowth(&["lh1", "--group", "alt 5", "--bound", "32"]);
    let w = result_of(&out)["witness"].clone();
    assert_eq!(w["size"], 16);
    assert_eq!(w["p"], 2);
    assert_eq!(w["k"], 2);
    assert_eq!(w["dim"], 2);
}

#[test]
fn artifacts_are_byte_identical_across_runs() {
    let args = ["irr", "--group", "sym 4", "--field", "2", "--maxdim", "4"];
    let first = repgrowth(&args);
    let second = repgrowth(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn cache_hit_matches_fresh_output() {
    let dir = std::env::temp_dir().join(format!("repgrowth-cache-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let args = ["chief", "--group", "sym 4"];
    let fresh = repgrowth(&args);
    let miss = repgrowth_cached(&args, &dir);
    let entries: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(entries.len(), 1, "one content-addressed artifact");
    let hit = repgrowth_cached(&args, &dir);
    assert_eq!(miss.stdout, hit.stdout);
    assert_eq!(fresh.stdout, hit.stdout);
    let other = repgrowth_cached(&["chief", "--group", "sym 4", "--greatest"], &dir);
    assert!(other.status.success());
    let entries: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(entries.len(), 2, "different requests hash to different keys");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn csv_format_has_the_count_columns() {
    let out = repgrowth(&[
        "irr", "--group", "sym 4", "--field", "2", "--maxdim", "3", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# seed=1 cap_enum=100000 cap_chop=2000");
    assert_eq!(lines.next().unwrap(), "n,r,r_star,R");
    assert_eq!(lines.next().unwrap(), "1,1,1,1");
    assert_eq!(lines.next().unwrap(), "2,1,1,2");
    assert_eq!(lines.next().unwrap(), "3,0,0,2");
}

#[test]
fn exit_codes_separate_failure_kinds() {
    let ok = repgrowth(&["verify", "--suite", "classcount"]);
    assert_eq!(ok.status.code(), Some(0));

    let failed_check = repgrowth(&["verify", "--suite", "inequalities"]);
    assert_eq!(failed_check.status.code(), Some(1), "a failing suite exits 1");

    let unknown_suite = repgrowth(&["verify", "--suite", "nosuch"]);
    assert_eq!(unknown_suite.status.code(), Some(2));

    let bad_grammar = repgrowth(&["irr", "--group", "bogus 7", "--field", "2", "--maxdim", "2"]);
    assert_eq!(bad_grammar.status.code(), Some(2));

    let csv_unsupported = repgrowth(&["crown", "--group", "sym 4", "--format", "csv"]);
    assert_eq!(csv_unsupported.status.code(), Some(2));

    let exhausted = repgrowth(&["irr", "--group", "sym 9", "--field", "2", "--maxdim", "2", "--cap-enum", "100"]);
    assert_eq!(exhausted.status.code(), Some(2), "cap overruns exit 2");
}

#[test]
fn out_flag_writes_the_artifact_to_a_file() {
    let path = std::env::temp_dir().join(format!("repgrowth-out-test-{}.json", std::process::id()));
    let _ = std::fs::remove_file(&path);
    let out = repgrowth(&[
        "crown", "--group", "elem 2 3", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["fp1_sup"], 3);
    assert_eq!(v["config"]["seed"], 1);
    let _ = std::fs::remove_file(&path);
}
