//! End-to-end runs of the `weil` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn weil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weil"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn h3_jets(dir: &TempDir, order: usize) -> (PathBuf, PathBuf) {
    let mut a = vec![json!({"coords": {"p": "1"}})];
    let mut b = vec![json!({"coords": {"q": "1"}})];
    a.resize(order, json!({"coords": {}}));
    b.resize(order, json!({"coords": {}}));
    (
        write(
            dir,
            &format!("a{order}.json"),
            &json!({"algebra": "h3", "order": order, "coords": a}),
        ),
        write(
            dir,
            &format!("b{order}.json"),
            &json!({"algebra": "h3", "order": order, "coords": b}),
        ),
    )
}

#[test]
fn validate_builtin_and_corrupted() {
    let dir = TempDir::new().unwrap();
    let out = weil(&["algebra", "h3"]);
    assert_eq!(code(&out), 0);
    let good = write(&dir, "h3.json", &stdout_json(&out));
    let out = weil(&["validate", s(&good)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["status"], "pass");

    let bad = write(
        &dir,
        "bad.json",
        &json!({"name": "h3-bad", "basis": ["p", "q", "z"], "brackets": [
            {"left": "p", "right": "q", "value": [["z", "1"]]},
            {"left": "p", "right": "z", "value": [["p", "1"]]}
        ]}),
    );
    let out = weil(&["validate", s(&bad)]);
    assert_eq!(code(&out), 1);
    let report = stdout_json(&out);
    assert_eq!(report["status"], "fail");
    let cx = report["counterexample"].as_str().unwrap();
    assert!(
        cx.contains('p') && cx.contains('q') && cx.contains('z'),
        "{cx}"
    );
}

#[test]
fn validate_input_errors() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&weil(&["validate", "/nonexistent/spec.json"])), 2);
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(code(&weil(&["validate", s(&junk)])), 2);
    let dup = write(
        &dir,
        "dup.json",
        &json!({"name": "x", "basis": ["a", "a"], "brackets": []}),
    );
    assert_eq!(code(&weil(&["validate", s(&dup)])), 2);
}

#[test]
fn multiply_through_every_engine() {
    let dir = TempDir::new().unwrap();
    let (a, b) = h3_jets(&dir, 2);
    let mut outputs = Vec::new();
    for via in ["def61", "bch", "matrix"] {
        let out = weil(&["mul", s(&a), s(&b), "--via", via]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push(stdout_json(&out));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let coords = &outputs[0]["coords"];
    assert_eq!(coords[0]["coords"]["p"]["terms"], json!([[[], "1"]]));
    assert_eq!(coords[0]["coords"]["q"]["terms"], json!([[[], "1"]]));
    assert_eq!(
        coords[1]["coords"],
        json!({"z": {"ring": [], "terms": [[[], "1"]]}})
    );
}

#[test]
fn multiply_rejects_order_mismatch() {
    let dir = TempDir::new().unwrap();
    let (a2, _) = h3_jets(&dir, 2);
    let (_, b3) = h3_jets(&dir, 3);
    assert_eq!(code(&weil(&["mul", s(&a2), s(&b3)])), 1);
    // truncating both to a common order makes them compatible
    assert_eq!(code(&weil(&["mul", s(&a2), s(&b3), "--order", "2"])), 0);
    assert_eq!(code(&weil(&["mul", s(&a2), s(&b3), "--order", "3"])), 1);
}

#[test]
fn bracket_in_monomial_coordinates() {
    let dir = TempDir::new().unwrap();
    let (a, b) = h3_jets(&dir, 2);
    let out = weil(&["bracket", s(&a), s(&b)]);
    assert_eq!(code(&out), 0);
    let j = stdout_json(&out);
    assert_eq!(j["coordinates"], "monomial");
    assert_eq!(j["coords"][0]["coords"], json!({}));
    assert_eq!(j["coords"][1]["coords"]["z"]["terms"], json!([[[], "1"]]));
}

#[test]
fn verify_free_nilpotent_associativity() {
    let out = weil(&[
        "verify",
        "--suite",
        "s6",
        "--algebra",
        "free-nilpotent",
        "--generators",
        "3",
        "--class",
        "3",
        "--trials",
        "20",
    ]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    let ids: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    for n in 1..=3 {
        assert!(ids.contains(&format!("thm-6.{n}/free-nilpotent-3-3").as_str()));
    }
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn verify_bracket_recovery_at_order_three() {
    let out = weil(&["verify", "--suite", "s7", "--order", "3", "--trials", "20"]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    let ids: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"thm-7.3/h3"));
    assert!(ids
        .iter()
        .all(|id| id.starts_with("thm-7.0-n3/") || id.starts_with("thm-7.3/")));
}

#[test]
fn verify_all_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "all",
        "--seed",
        "42",
        "--trials",
        "10",
        "--no-timing",
    ];
    let first = weil(&args);
    let second = weil(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let report = stdout_json(&first);
    assert_eq!(report["seed"], 42);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c.get("elapsed_ms").is_none()));
    let timed = stdout_json(&weil(&[
        "verify", "--suite", "s4", "--order", "1", "--trials", "2",
    ]));
    assert!(timed["checks"][0].get("elapsed_ms").is_some());
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&weil(&["verify", "--suite", "s5"])), 2);
    assert_eq!(code(&weil(&["verify", "--algebra", "e8"])), 2);
    assert_eq!(code(&weil(&["verify", "--order", "4"])), 2);
    assert_eq!(
        code(&weil(&[
            "verify",
            "--suite",
            "s4",
            "--algebra",
            "free-nilpotent-2-3"
        ])),
        2
    );
    assert_eq!(code(&weil(&["frobnicate"])), 2);
}
