use std::collections::BTreeMap;
use std::path::Path;

use rectcount::format::OutputRecord;
use rectcount::run_with;

fn run_in(cache: &Path, args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["rectcount", "--cache-dir", cache.to_str().unwrap()];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn p2_csv_example() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run_in(dir.path(), &["p2", "--max-n", "9", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,value\n0,1\n1,2\n2,4\n3,10\n4,22\n5,44\n6,91\n7,172\n8,326\n9,595\n");
}

#[test]
fn fit_prints_bracket_formula() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run_in(dir.path(), &["fit", "--k", "4", "--terms", "80"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("N = 6, period 12"), "{out}");
    assert!(out.contains("p_{4,1}(2,n) = 1/18 n^3 + 5/12 n^2 + n - 83/72 + "), "{out}");
    assert!(out.contains("reference row: identical"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run_in(dir.path(), &["p2", "--bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"), "{err}");
    assert_eq!(run_in(dir.path(), &["frobnicate"]).0, 2);
    assert_eq!(run_in(dir.path(), &["restricted", "--k", "0"]).0, 2);
    assert_eq!(run_in(dir.path(), &["asym", "--preset", "nope"]).0, 2);
    assert_eq!(run_in(dir.path(), &["benford", "--base", "40"]).0, 2);
    let (code, out, _) = run_in(dir.path(), &["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn long_running_gates() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["p2", "--max-n", "40"][..], &["square", "--max-n", "5"], &["fit", "--k", "7"], &["oracle", "--m", "5", "--max-n", "5"]] {
        let (code, _, err) = run_in(dir.path(), args);
        assert_eq!(code, 2, "{args:?}");
        assert!(err.contains("--long-running"), "{err}");
    }
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run_in(dir.path(), &["verify", "--suite", "core"]);
    assert_eq!(code, 0, "{out}");
    // the n = 2 bound case is a known failure of the stated inequalities
    let (code, out, _) = run_in(dir.path(), &["verify", "--suite", "bounds"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("@2"), "{out}");
}

#[test]
fn congruence_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["mary", "--m", "2", "--i", "2", "--j", "1", "--max-n", "100"]).0, 0);
    assert_eq!(run_in(dir.path(), &["mary", "--m", "3", "--max-n", "200"]).0, 0);
    let (code, out, _) = run_in(dir.path(), &["mary", "--m", "3", "--i", "1", "--j", "1", "--max-n", "5", "--format", "csv"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("n,value,predicted,residue,pass\n"), "{out}");
    assert!(out.contains("3,4,0,1,false"), "{out}");
}

#[test]
fn json_and_csv_agree() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["restricted", "--k", "3", "--l", "2", "--max-n", "30"][..],
        &["oracle", "--m", "2", "--max-n", "5"],
        &["mary", "--m", "2", "--i", "1", "--max-n", "40"],
        &["p2", "--kind", "t", "--max-n", "200"],
    ] {
        let (_, csv, _) = run_in(dir.path(), &[args, &["--format", "csv"]].concat());
        let (_, json, _) = run_in(dir.path(), &[args, &["--format", "json"]].concat());
        let from_json = OutputRecord::from_json(&json).unwrap();
        let from_csv = OutputRecord::from_csv(&csv, &from_json.sequence, from_json.args.clone()).unwrap();
        assert_eq!(from_csv, from_json, "{args:?}");
        assert_eq!(from_json.to_csv().unwrap(), csv);
    }
}

#[test]
fn json_values_are_strings() {
    let dir = tempfile::tempdir().unwrap();
    let (_, json, _) = run_in(dir.path(), &["p2", "--kind", "t", "--max-n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["value"].is_string()));
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["p2", "--max-n", "30"][..],
        &["square", "--max-n", "3", "--format", "json"],
        &["restricted", "--k", "4", "--max-n", "50", "--format", "csv"],
        &["oracle", "--symmetric", "t", "--max-n", "6"],
        &["fit", "--k", "4", "--terms", "90"],
    ] {
        let cold = run_in(dir.path(), args);
        let warm = run_in(dir.path(), args);
        assert_eq!(cold, warm, "{args:?}");
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 5);
    // a shorter request is served from the longer cached table
    let (_, short, _) = run_in(dir.path(), &["p2", "--max-n", "9", "--format", "csv"]);
    assert!(short.ends_with("9,595\n"));
}

#[test]
fn stale_fingerprint_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let (_, first, _) = run_in(dir.path(), &["restricted", "--k", "2", "--max-n", "10", "--format", "csv"]);
    let cache = rectcount::cache::Cache::new(dir.path());
    let args = BTreeMap::from([("k".to_owned(), "2".to_owned()), ("l".to_owned(), "1".to_owned())]);
    let path = cache.path_for("restricted", &args);
    let text = std::fs::read_to_string(&path).unwrap().replace("restrict2-1", "old-generator").replace("\"3\"", "\"999\"");
    std::fs::write(&path, text).unwrap();
    let (_, second, _) = run_in(dir.path(), &["restricted", "--k", "2", "--max-n", "10", "--format", "csv"]);
    assert_eq!(first, second);
}

#[test]
fn oracle_dump_lines() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("tilings.txt");
    let (code, _, _) = run_in(dir.path(), &["oracle", "--m", "2", "--max-n", "2", "--dump", dump.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(dump).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().any(|l| l == "1 1 1 1"));
}

#[test]
fn benford_windows() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run_in(dir.path(), &["benford", "--max-n", "1000", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("n,value,predicted"));
    assert!(out.contains("1000,305,301.030"), "{out}");
}
