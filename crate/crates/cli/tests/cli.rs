//! End-to-end checks that spawn the binary: outputs, exit codes and the cache.

use std::path::Path;
use std::process::{Command, Output};

use alderlab_cli::cache::{CacheKey, CountCache, CountKind};
use alderlab_core::Variant;
use num_bigint::BigUint;

fn run_with(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_alderlab"));
    cmd.args(args);
    match cache {
        Some(p) => cmd.env("ALDERLAB_CACHE", p),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("spawn alderlab")
}

fn run(args: &[&str]) -> Output {
    run_with(None, args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn count_examples() {
    let o = run(&["count", "--fn", "q", "--a", "2", "--d", "254", "--n", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["values"][0]["value"], "1");

    let o = run(&["count", "--fn", "Q", "--a", "2", "--d", "254", "--n", "0"]);
    assert_eq!(json(&o)["values"][0]["value"], "1");

    let o = run(&["count", "--fn", "Q", "--a", "2", "--d", "255", "--n", "256", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,value\n256,2\n");

    let o = run(&["count", "--fn", "Q-", "--a", "2", "--d", "255", "--n-range", "250..260", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("256,1\n"));
}

#[test]
fn parameter_errors_exit_2() {
    for args in [
        &["count", "--fn", "Q", "--a", "3", "--d", "2", "--n", "5"][..],
        &["count", "--fn", "q", "--a", "1", "--n", "5"],
        &["verify", "table", "--id", "nope", "--d", "130"],
        &["verify", "table", "--id", "Qdm2", "--d", "100"],
        &["series", "--fn", "g", "--d", "10", "--nmax", "20"],
        &["count", "--fn", "z", "--d", "3", "--n", "1"],
        &["frobnicate"],
        &["count", "--fn", "q", "--d", "3", "--n", "1", "--format", "xml"],
        &["scan", "--conjecture", "c", "--a", "3", "--d", "10..12"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "theorem1", "--d", "254", "--nmax", "600"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "pass");

    let o = run(&["verify", "theorem1", "--d", "255", "--nmax", "600"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "pass-with-expected-exceptions");

    let o = run(&["verify", "table", "--id", "Qdm2", "--d", "130"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["all_match"], true);

    let o = run(&["verify", "injection", "--kind", "psi-shift2", "--d", "130", "--n", "648"]);
    assert_eq!(o.status.code(), Some(0));
    let cert = json(&o);
    assert_eq!(cert["images_distinct"], true);
    assert_eq!(cert["image_valid"], true);

    let o = run(&["verify", "chain", "--a", "3", "--d", "381", "--n", "1780", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dilation identity"));

    let o = run(&["verify", "small-n", "--a", "3", "--d", "381"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["inequality"]["verdict"], "pass-with-expected-exceptions");

    let o = run(&["verify", "domination", "--d", "130"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["domination"]["holds"], true);
}

#[test]
fn findings_exit_1() {
    // Level two at odd d = 5 has violations beyond d+1, d+3, d+5.
    let o = run(&["verify", "theorem1", "--d", "5", "--nmax", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verdict"], "fail");

    let o = run(&["scan", "--conjecture", "b", "--d", "6", "--nmax", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["summary"]["failing_d"], serde_json::json!([6]));
    assert_eq!(v["summary"]["consistent_with_conjecture"], true);
}

#[test]
fn scan_examples() {
    let o = run(&["scan", "--conjecture", "a", "--d-even", "2..40", "--nmax", "auto"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"]["pass"], 20);

    let o = run(&["scan", "--conjecture", "c", "--a", "4", "--d", "14..30"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"]["fail"], 0);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for format in ["json", "csv", "table"] {
        let args = ["scan", "--conjecture", "b", "--d", "4..20", "--format", format];
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{format}");
    }
}

#[test]
fn cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("counts.bin");
    let args = ["verify", "table", "--id", "Qd1", "--d", "130"];
    let plain = run(&args);
    let cold = run_with(Some(&path), &args);
    assert!(path.exists());
    let warm = run_with(Some(&path), &args);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);
    assert_eq!(warm.status.code(), Some(0));

    // A longer request extends the stored table; a shorter one reuses it.
    let long = run_with(Some(&path), &["count", "--fn", "q", "--a", "1", "--d", "130", "--n", "900"]);
    let short = run_with(Some(&path), &["count", "--fn", "q", "--a", "1", "--d", "130", "--n", "700"]);
    assert_eq!(long.stdout, run(&["count", "--fn", "q", "--a", "1", "--d", "130", "--n", "900"]).stdout);
    assert_eq!(short.stdout, run(&["count", "--fn", "q", "--a", "1", "--d", "130", "--n", "700"]).stdout);

    let explicit = dir.path().join("explicit.bin");
    let o = Command::new(env!("CARGO_BIN_EXE_alderlab"))
        .args(["--cache", explicit.to_str().unwrap()])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(o.stdout, plain.stdout);
    assert!(explicit.exists());
}

#[test]
fn corrupt_cache_entries_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.bin");
    let args = ["count", "--fn", "Q", "--a", "1", "--d", "128", "--n", "650"];
    run_with(Some(&path), &args);
    let mut bytes = std::fs::read(&path).unwrap();
    let last = bytes.len() - 9;
    bytes[last] ^= 0x55;
    std::fs::write(&path, bytes).unwrap();
    let o = run_with(Some(&path), &args);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("checksum"));
    assert_eq!(o.stdout, run(&args).stdout);
}

#[test]
fn audit_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.bin");
    let mut cache = CountCache::default();
    let key = CacheKey {
        kind: CountKind::Congruence,
        a: 1,
        d: 128,
        variant: Variant::Full,
    };
    let mut values: Vec<BigUint> = alderlab_core::partition::congruence_counts(
        &alderlab_core::CongruenceSpec::full(1, 128).unwrap(),
        700,
    );
    values[260] = BigUint::from(5u8);
    cache.entries.insert(key, values);
    cache.save(&path).unwrap();
    let o = run_with(Some(&path), &["count", "--fn", "Q", "--a", "1", "--d", "128", "--n", "260"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("audit"));
}
