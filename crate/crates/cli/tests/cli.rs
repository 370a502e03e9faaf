use std::process::{Command, Output};

use serde_json::Value;

fn sumcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumcx")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = sumcx(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn betti_examples() {
    let v = json(&["betti", "-p", "7", "-k", "3", "-A", "0,1,3", "--char", "2"]);
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 1, 1]));
    assert_eq!(v["agreement"], true);
    let v = json(&["betti", "-p", "5", "-k", "2", "-A", "0,1,2", "--char", "5"]);
    assert_eq!(v["reduced_betti"][1], 2);
    assert_eq!(v["agreement"], true);
    let v = json(&["betti", "-p", "7", "-k", "3", "-A", "0,1,3", "--char", "0"]);
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 0, 0]));
}

#[test]
fn torsion_examples() {
    let v = json(&["torsion", "-p", "7", "-k", "3", "-A", "0,1,3"]);
    assert_eq!(v["divisors"], serde_json::json!(["2"]));
    assert_eq!(v["n"], 15);
    let v = json(&["torsion", "-p", "5", "-k", "2", "-A", "0"]);
    assert_eq!(v["divisors"], serde_json::json!([]));
    assert_eq!(v["order"], "1");
}

#[test]
fn uncertainty_example() {
    let v = json(&["uncertainty", "-p", "7", "-A", "0,1,3", "--char", "2"]);
    assert_eq!(v["u"], 4);
    let v = json(&["uncertainty", "-p", "7", "-A", "0,1,3", "--char", "0"]);
    assert_eq!(v["u"], 5);
}

#[test]
fn verify_examples() {
    for args in [
        &["verify", "--suite", "theorem2", "-p", "5,7,11", "-k", "2,3"][..],
        &["verify", "--suite", "chebotarev", "-p", "13", "-k", "4"],
        &["verify", "--suite", "vandermonde", "-p", "7", "-k", "3"],
    ] {
        let v = json(args);
        assert_eq!(v["passed"], true, "{args:?}");
        assert!(v["checks"].as_u64().unwrap() > 0);
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| sumcx(args).status.code();
    assert_eq!(code(&["betti", "-p", "8", "-k", "3", "-A", "0"]), Some(2));
    assert_eq!(code(&["betti", "-p", "7", "-k", "7", "-A", "0"]), Some(2));
    assert_eq!(code(&["betti", "-p", "7", "-k", "3", "-A", "0,7"]), Some(2));
    assert_eq!(code(&["betti", "-p", "7", "-k", "3", "-A", "0", "--char", "4"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["verify", "--suite", "nope"]), Some(2));
    assert_eq!(code(&["scan", "-k", "3", "-p", "37"]), Some(2));
    assert_eq!(code(&["uncertainty", "-p", "7", "-A", "0,1,2,3", "--char", "7", "--budget", "10"]), Some(4));
    assert_eq!(code(&["verify", "--budget-seconds", "0"]), Some(4));
}

#[test]
fn json_round_trips() {
    for args in [
        &["betti", "-p", "7", "-k", "3", "-A", "0,1,3", "--char", "2"][..],
        &["torsion", "-p", "13", "-k", "3", "-A", "0,1,4"],
        &["uncertainty", "-p", "5", "-A", "0,1"],
        &["scan", "-k", "3", "-p", "11..13"],
        &["verify", "--suite", "rp2"],
    ] {
        let out = sumcx(args);
        let text = String::from_utf8(out.stdout).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{args:?}");
    }
    // divisors and orders are decimal strings, exact at any size
    let v = json(&["torsion", "-p", "13", "-k", "3", "-A", "0,1,4"]);
    assert_eq!(v["divisors"], serde_json::json!(["3", "3", "3", "9"]));
    assert_eq!(v["order"], "243");
}

#[test]
fn output_is_deterministic() {
    for format in ["json", "csv", "text"] {
        let run = |jobs: &str| sumcx(&["scan", "-k", "3", "-p", "11..17", "--jobs", jobs, "--format", format]).stdout;
        let first = run("1");
        assert!(!first.is_empty());
        assert_eq!(first, run("4"), "{format}");
        assert_eq!(first, run("4"), "{format}");
    }
}

#[test]
fn scan_log_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("scan.jsonl");
    let log = log.to_str().unwrap();
    let full = json(&["scan", "-k", "3", "-p", "11,13", "--log", log]);
    let lines: Vec<String> = std::fs::read_to_string(log).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 9 + 11);
    // drop half the log; the rerun recomputes only the missing instances
    std::fs::write(log, lines[..10].join("\n") + "\n").unwrap();
    let resumed = json(&["scan", "-k", "3", "-p", "11,13", "--log", log]);
    assert_eq!(resumed, full);
    assert_eq!(std::fs::read_to_string(log).unwrap().lines().count(), 20);
    let max: Vec<&Value> = full["maxima"].as_array().unwrap().iter().collect();
    assert_eq!(max.len(), 2);
    assert_eq!(max[1]["a"], serde_json::json!([0, 1, 4]));
}

#[test]
fn face_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("faces.txt");
    json(&["betti", "-p", "7", "-k", "3", "-A", "0,1,3", "--dump-faces", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    let (p, k, faces) = sumcomplex::complex::parse_face_dump(&text).unwrap();
    assert_eq!((p, k, faces.len()), (7, 3, 15));
}
