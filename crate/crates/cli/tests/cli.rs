use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn oscox(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscox"))
        .args(args)
        .env("OSCOX_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str], cache: &Path) -> String {
    let out = oscox(args, cache);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str], cache: &Path) -> Value {
    serde_json::from_str(&run_ok(args, cache)).unwrap()
}

#[test]
fn roots() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = json(&["roots", "A2", "--json"], dir.path());
    assert_eq!(a2["positive"], 3);
    assert_eq!(a2["positive_roots"].as_array().unwrap().len(), 3);
    let h3 = run_ok(&["roots", "H3", "--json"], dir.path());
    assert!(h3.contains("sqrt5"));
    let text = run_ok(&["roots", "A2"], dir.path());
    assert!(text.contains("N = 3 positive roots"));

    let bad = oscox(&["roots", "Z9"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("Z9"));
}

#[test]
fn gamma_stats() {
    let dir = tempfile::tempdir().unwrap();
    let a3 = run_ok(&["gamma", "A3", "--order", "reference-a3", "--stats"], dir.path());
    assert!(a3.contains("nodes=9 ") && a3.contains("paths=24"), "{a3}");
    let b3 = json(&["gamma", "B3", "--stats", "--json"], dir.path());
    assert_eq!(b3["paths"], "48");
    let e7 = oscox(&["gamma", "E7", "--stats"], dir.path());
    assert_eq!(e7.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&e7.stderr).contains("guard"));
}

#[test]
fn gamma_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = run_ok(&["gamma", "A3", "--order", "reference-a3", "--dot"], dir.path());
    assert!(dot.starts_with("digraph gamma {"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 9);
    assert!(!dot.contains("nodes="));
}

#[test]
fn rewrite_examples() {
    let dir = tempfile::tempdir().unwrap();
    let rw = |w: &[&str]| {
        let mut args = vec!["rewrite", "A3", "--order", "reference-a3"];
        args.extend_from_slice(w);
        run_ok(&args, dir.path()).trim().to_string()
    };
    assert_eq!(rw(&["1", "2", "6"]), "146: 1, 246: -1");
    assert_eq!(rw(&["1", "2", "4"]), "0");
    assert_eq!(rw(&["2", "4", "6"]), "246: 1");

    let js = json(&["rewrite", "A3", "1", "2", "6", "--order", "reference-a3", "--json"], dir.path());
    assert_eq!(js[0]["word"], serde_json::json!([1, 4, 6]));
    assert_eq!(js[1]["coeff"], "-1");

    let bad = oscox(&["rewrite", "A3", "2", "1"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("increasing"));
    let bad = oscox(&["rewrite", "A3", "1", "7"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn explicit_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(&["gamma", "A2", "--order", "3,1,2", "--stats"], dir.path());
    assert!(out.contains("paths=6"));
    let bad = oscox(&["gamma", "A2", "--order", "1,1,2"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = oscox(&["gamma", "B3", "--cache"], dir.path());
    assert!(out.status.success());
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let cached = run_ok(&["gamma", "B3", "--stats", "-v"], dir.path());
    assert!(cached.contains("paths=48"));
    assert_eq!(
        run_ok(&["rewrite", "B3", "1", "2", "3"], dir.path()),
        run_ok(&["rewrite", "B3", "1", "2", "3", "--cache-dir", "/nonexistent"], dir.path())
    );

    // a different order gets its own file
    oscox(&["gamma", "B3", "--cache", "--order", "simples-last"], dir.path());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);

    // a damaged cache is rebuilt rather than trusted
    let bytes = fs::read(&files[0]).unwrap();
    fs::write(&files[0], &bytes[..bytes.len() / 2]).unwrap();
    let out = oscox(&["gamma", "B3", "--stats"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("paths=48"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ignoring"));

    // the flag takes precedence over the environment
    let other = tempfile::tempdir().unwrap();
    let flag = other.path().to_str().unwrap();
    assert!(oscox(&["gamma", "A2", "--cache", "--cache-dir", flag], dir.path()).status.success());
    assert_eq!(fs::read_dir(other.path()).unwrap().count(), 1);
}

#[test]
fn verify_top() {
    let dir = tempfile::tempdir().unwrap();
    for t in ["F4", "I2(6)", "B2"] {
        let v = json(&["verify", t, "--scope", "top", "--json"], dir.path());
        assert_eq!(v["pass"], true, "{t}");
        assert_eq!(v["av_nonzero"], true, "{t}");
    }
    let a3 = json(&["verify", "A3", "--scope", "top", "--json"], dir.path());
    assert_eq!((a3["pass"].clone(), a3["av_nonzero"].clone()), (true.into(), false.into()));
    let h4 = oscox(&["verify", "H4", "--scope", "top"], dir.path());
    assert_eq!(h4.status.code(), Some(2));
}

#[test]
fn verify_full() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(&["verify", "A3", "--scope", "full"], dir.path());
    assert!(out.contains("m = 2") && out.trim_end().lines().last().unwrap().starts_with("PASS"), "{out}");

    let report = json(&["verify", "B3", "--json", "--threads", "2"], dir.path());
    assert_eq!(report["pass"], true);
    assert_eq!(report["m"], 6);
    let dims: u64 = report["degrees"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).sum();
    assert_eq!(dims, 6);
    assert!(report["checks"].as_object().unwrap().values().all(|v| v == true));

    let a6 = oscox(&["verify", "A6"], dir.path());
    assert_eq!(a6.status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string(&v).unwrap()
    };
    for args in [["verify", "H3", "--json", "--threads", "1"], ["verify", "H3", "--json", "--threads", "4"]] {
        let a = strip(json(&args, dir.path()));
        let b = strip(json(&["verify", "H3", "--json"], dir.path()));
        assert_eq!(a, b);
    }
    let a = strip(json(&["verify", "D4", "--scope", "top", "--json"], dir.path()));
    let b = strip(json(&["verify", "D4", "--scope", "top", "--json", "--threads", "3"], dir.path()));
    assert_eq!(a, b);
}

#[test]
fn order_alias() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_ok(&["gamma", "A3", "--order", "paper-a3", "--stats"], dir.path());
    let b = run_ok(&["gamma", "A3", "--order", "reference-a3", "--stats"], dir.path());
    assert_eq!(a, b);
    let bad = oscox(&["gamma", "B3", "--order", "reference-a3"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}
