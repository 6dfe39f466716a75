//! End-to-end checks of the `hm` binary: output values, exit codes, cache
//! behavior, and output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn hm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn count_g_59() {
    let out = hm(&["count", "--variety", "g", "--prime", "59", "--threads", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("#G(F_59) = 225766"));
}

#[test]
fn count_e_103_is_zero() {
    let out = hm(&["count", "--variety", "e", "--prime", "103"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("#E(F_103) = 0"));
}

#[test]
fn count_rejects_non_prime_with_exit_2() {
    let out = hm(&["count", "--variety", "g", "--prime", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not an odd prime ≠ 5"));
}

#[test]
fn count_rejects_bad_reduction_primes() {
    for p in ["2", "5"] {
        let out = hm(&["count", "--variety", "g", "--prime", p]);
        assert_eq!(out.status.code(), Some(2), "p = {p}");
    }
}

#[test]
fn clap_usage_errors_exit_2() {
    let out = hm(&["count", "--variety", "q", "--prime", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_golden_passes_at_59() {
    let out = hm(&[
        "report",
        "--primes",
        "59",
        "--format",
        "csv",
        "--golden",
        "--threads",
        "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let body = stdout(&out);
    assert!(body.contains("225766"));
    assert!(body.contains("247360"));
    assert!(body.contains(",match"));
    assert!(stderr(&out).contains("golden: p=59 OK"));
}

#[test]
fn report_61_is_inconclusive_but_exits_zero() {
    let out = hm(&[
        "report",
        "--primes",
        "61",
        "--format",
        "csv",
        "--threads",
        "2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("inconclusive"));
}

#[test]
fn report_cache_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.json");
    let args = |cache: &Path| {
        vec![
            "report".to_string(),
            "--primes".to_string(),
            "59".to_string(),
            "--format".to_string(),
            "json".to_string(),
            "--threads".to_string(),
            "2".to_string(),
            "--cache".to_string(),
            cache.display().to_string(),
        ]
    };
    let first = hm(&args(&cache).iter().map(|s| s.as_str()).collect::<Vec<_>>());
    assert!(first.status.success(), "{}", stderr(&first));
    assert!(cache.exists());
    let second = hm(&args(&cache).iter().map(|s| s.as_str()).collect::<Vec<_>>());
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second));

    let parsed: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(parsed[0]["p"], 59);
    assert_eq!(parsed[0]["count_g"], 225766);
    assert_eq!(parsed[0]["status"], "match");

    let cache_body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert_eq!(cache_body["version"], 1);
    assert_eq!(cache_body["counts"]["59"]["G"], 225766);
    assert_eq!(cache_body["counts"]["59"]["E"], 0);
}

#[test]
fn corrupt_cache_warns_and_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.json");
    std::fs::write(&cache, "{broken").unwrap();
    let cache_arg = cache.display().to_string();
    let out = hm(&[
        "report",
        "--primes",
        "59",
        "--format",
        "csv",
        "--threads",
        "2",
        "--cache",
        &cache_arg,
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("corrupt"));
    // The cache is rewritten with good contents.
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert_eq!(body["counts"]["59"]["G"], 225766);
}

#[test]
fn verify_cache_catches_poisoned_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.json");
    std::fs::write(&cache, r#"{"version":1,"counts":{"59":{"G":12345,"E":0}}}"#).unwrap();
    let cache_arg = cache.display().to_string();
    // Without verification the poisoned count flows through.
    let out = hm(&[
        "count",
        "--variety",
        "g",
        "--prime",
        "59",
        "--cache",
        &cache_arg,
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("12345 (cached)"));
    // With verification it is caught.
    let out = hm(&[
        "count",
        "--variety",
        "g",
        "--prime",
        "59",
        "--threads",
        "2",
        "--cache",
        &cache_arg,
        "--verify-cache",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cache mismatch"));
}

#[test]
fn report_verify_cache_exits_1_on_poisoned_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.json");
    std::fs::write(&cache, r#"{"version":1,"counts":{"59":{"G":12345,"E":0}}}"#).unwrap();
    let cache_arg = cache.display().to_string();
    let out = hm(&[
        "report",
        "--primes",
        "59",
        "--threads",
        "2",
        "--cache",
        &cache_arg,
        "--verify-cache",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cache mismatch"));
}

#[test]
fn modularity_check_t_reports_full_coverage() {
    let out = hm(&["modularity", "--check-T"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("7/7"));
}

#[test]
fn modularity_compares_traces_at_59() {
    let out = hm(&["modularity", "--primes", "59", "--threads", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let body = stdout(&out);
    assert!(body.contains("tr V = 500"));
    assert!(body.contains("a_p = 500"));
    assert!(body.contains("[match]"));
}

#[test]
fn nodes_verify_at_101() {
    let out = hm(&["nodes", "--prime", "101", "--verify"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("60 nodes, 60 singular-verified, 60 rulings rational"));
}

#[test]
fn nodes_inventory_at_59() {
    let out = hm(&["nodes", "--prime", "59"]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert!(body.contains("sigma defined 5"));
    assert!(body.contains("tau defined 1"));
    assert!(body.contains("total 6"));
}

#[test]
fn form_coefficients() {
    let out = hm(&["form", "--coeff", "59"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "500");

    let out = hm(&["form", "--upto", "7"]);
    assert!(out.status.success());
    let body = stdout(&out);
    for line in [
        "a_1 = 1", "a_2 = -4", "a_3 = 2", "a_4 = 8", "a_5 = -5", "a_6 = -8", "a_7 = 6",
    ] {
        assert!(body.contains(line), "missing {line:?} in {body}");
    }
}

#[test]
fn chern_prints_both_euler_characteristics() {
    let out = hm(&["chern"]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert!(body.contains("chi(X') = -100"));
    assert!(body.contains("chi(X~) = 140"));
    assert!(body.contains("c3(X') = -5*X^2*Y - 5*X*Y^2"));
}
