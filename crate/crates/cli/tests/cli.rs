use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn keyvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keyvar")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write_manifest(dir: &Path, claims: Value) -> String {
    let path = dir.join("m.json");
    std::fs::write(&path, serde_json::json!({ "name": "t", "claims": claims }).to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn list_shows_every_criterion() {
    let o = keyvar(&["--list"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 18);
    assert!(text.lines().next().unwrap().starts_with("AC01"));
}

#[test]
fn selected_claims_as_json() {
    let o = keyvar(&["--run", "AC08,AC16", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 2);
    assert!(claims.iter().all(|c| c["status"] == "pass"));
    assert_eq!(v["seed"], 1);
    assert_eq!(v["field"], "F_32003");
}

#[test]
fn text_summary_line() {
    let o = keyvar(&["--run", "AC17,AC18"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().last().unwrap(), "1 pass / 0 fail / 0 limit (1 report-only)");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&keyvar(&["--bogus"])), 2);
    assert_eq!(code(&keyvar(&["--run", "AC99"])), 2);
    assert_eq!(code(&keyvar(&["--char", "100", "--run", "AC08"])), 2);
    assert_eq!(code(&keyvar(&["--format", "xml"])), 2);
    assert_eq!(code(&keyvar(&["--manifest", "/nonexistent/m.json"])), 2);
}

#[test]
fn failures_and_limits() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_manifest(dir.path(), serde_json::json!([]));
    assert_eq!(code(&keyvar(&["--manifest", &empty])), 0);

    let bad = write_manifest(
        dir.path(),
        serde_json::json!([
            { "id": "ok", "op": "piclattice.suites", "expected": "report-only" },
            { "id": "bad", "op": "nope.nope", "expected": 0 }
        ]),
    );
    let o = keyvar(&["--manifest", &bad, "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["claims"][0]["status"], "report-only");
    assert_eq!(v["claims"][1]["error"], "unknown operation `nope.nope`");

    let capped = write_manifest(
        dir.path(),
        serde_json::json!([{ "id": "g", "op": "groebner.dual_ideal", "params": { "case": "G4" },
                             "expected": { "dim": 7, "degree": 14 }, "caps": { "max_basis": 2 } }]),
    );
    assert_eq!(code(&keyvar(&["--manifest", &capped])), 0);
    assert_eq!(code(&keyvar(&["--manifest", &capped, "--strict-limits"])), 3);
}

#[test]
fn same_seed_same_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let run = |seed: &str, jobs: &str| {
        let o = keyvar(&[
            "--run",
            "AC14,AC15",
            "--seed",
            seed,
            "--samples",
            "10",
            "--jobs",
            jobs,
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        v["claims"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["computed"].clone(), c["detail"].clone(), c["seed"].clone()))
            .collect::<Vec<_>>()
    };
    let a = run("7", "1");
    assert_eq!(a, run("7", "3"));
    assert_ne!(a[0].2, run("8", "1")[0].2);
    assert_eq!(a[0].1["fiber_samples"], 10);
}
