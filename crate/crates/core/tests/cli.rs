use std::process::Command;

use freelie::cli::{read_certificates, run};
use freelie::theta::CertificateRecord;
use freelie::words::lyndon_words;
use serde_json::Value;

fn freelie(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("freelie").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn verify_round_trip(json: &str) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    std::fs::write(&path, json).unwrap();
    let (code, out, err) = freelie(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let originals: Vec<CertificateRecord> = if json.starts_with('[') {
        serde_json::from_str(json).unwrap()
    } else {
        vec![serde_json::from_str(json).unwrap()]
    };
    let reserialized = if json.starts_with('[') {
        serde_json::to_string(&originals).unwrap()
    } else {
        serde_json::to_string(&originals[0]).unwrap()
    };
    assert_eq!(reserialized, json);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), originals.len());
    for (line, original) in lines.iter().zip(&originals) {
        assert!(line.starts_with(&format!("{{\"certificate\":{}", serde_json::to_string(original).unwrap())));
        let v: Value = serde_json::from_str(line).unwrap();
        let rec: CertificateRecord = serde_json::from_value(v["certificate"].clone()).unwrap();
        let again = serde_json::to_string(&rec).unwrap();
        assert_eq!(again, serde_json::to_string(original).unwrap());
        let reread = read_certificates(&again).unwrap();
        assert_eq!(reread[0].to_json().unwrap(), again);
    }
}

#[test]
fn dims_reproduces_tables() {
    let (code, out, _) = freelie(&["dims", "--max-weight", "13"]);
    assert_eq!(code, 0);
    assert!(out.contains("630") && out.contains("dim I_{3,n-3}"));
    let (code, out, _) = freelie(&["dims", "--max-weight", "13", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let dim_l: Vec<u64> = v["weights"].as_array().unwrap().iter().map(|r| r["dimL"].as_u64().unwrap()).collect();
    assert_eq!(dim_l, [2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335, 630]);
    let dim_i: Vec<u64> = v["weights"].as_array().unwrap()[1..].iter().map(|r| r["dimI"].as_u64().unwrap()).collect();
    assert_eq!(dim_i, [3, 0, 1, 0, 3, 0, 6, 4, 13, 12, 37, 40]);
}

#[test]
fn dims_agrees_with_basis() {
    let (code, out, _) = freelie(&["dims", "--max-weight", "14", "--bigraded", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let records = v["bigraded"].as_array().unwrap();
    assert_eq!(records.len(), (1..=14).map(|n| n + 1).sum::<usize>());
    for r in records {
        let (k, l) = (r["k"].as_u64().unwrap() as usize, r["l"].as_u64().unwrap() as usize);
        let (code, basis, _) = freelie(&["basis", &k.to_string(), &l.to_string(), "--format", "json"]);
        assert_eq!(code, 0);
        let b: Value = serde_json::from_str(&basis).unwrap();
        let count = b["basis"].as_array().unwrap().len() as u64;
        assert_eq!(r["dimL"].as_u64().unwrap(), count, "({k},{l})");
        assert_eq!(count as usize, lyndon_words(k, l).unwrap().len());
    }
}

#[test]
fn basis_formats() {
    let (_, text, _) = freelie(&["basis", "2", "3"]);
    assert_eq!(text, "aabbb\t[a,[[[a,b],b],b]]\nababb\t[[a,b],[[a,b],b]]\n");
    let (_, latex, _) = freelie(&["basis", "2", "2", "--format", "latex"]);
    assert!(latex.starts_with("[aabb] = "));
}

#[test]
fn family_and_kernel_certificates_round_trip() {
    for args in [
        vec!["family", "qbad", "--n", "2"],
        vec!["family", "i2", "--m", "6"],
        vec!["family", "i33", "--n", "2"],
        vec!["kernel", "3", "3", "--certify"],
        vec!["kernel", "2", "4", "--certify"],
        vec!["kernel", "4", "4", "--certify"],
    ] {
        let (code, out, err) = freelie(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        verify_round_trip(out.trim_end());
    }
}

#[test]
fn kernel_reports_reference_generator() {
    let (code, out, err) = freelie(&["kernel", "3", "3", "--certify"]);
    assert_eq!(code, 0);
    let certs: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(certs.len(), 1);
    assert!(err.contains("lattice-equal to family:i33(n=1): yes"), "{err}");
    let (_, _, err) = freelie(&["kernel", "2", "6", "--certify"]);
    assert!(err.contains("family:i2(m=6): yes"), "{err}");
    let (code, out, _) = freelie(&["kernel", "2", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("rank 1"));
}

#[test]
fn verify_with_oracle() {
    let (_, cert, _) = freelie(&["family", "i33", "--n", "2"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i33.json");
    std::fs::write(&path, &cert).unwrap();
    let p = path.to_str().unwrap();
    let args = ["verify", p, "--oracle", "--trials", "50", "--dim", "4", "--seed", "7"];
    let (code, out, err) = freelie(&args);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["oracle"]["verdict"], "pass");
    assert_eq!(v["oracle"]["seed"], 7);
    assert!(v["certificate"]["verified"].as_bool().unwrap());
    // deterministic
    assert_eq!(freelie(&args).1, out);
}

#[test]
fn verify_rejects_a_tampered_certificate() {
    let (_, cert, _) = freelie(&["family", "i2", "--m", "4"]);
    let mut v: Value = serde_json::from_str(&cert).unwrap();
    v["A"][0][0] = Value::String("2".into());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, out, _) = freelie(&["verify", path.to_str().unwrap(), "--oracle", "--trials", "50"]);
    assert_eq!(code, 1);
    let line: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(line["certificate"]["verified"], false);
    assert_eq!(line["oracle"]["verdict"], "fail");
    assert!(line["oracle"]["counterexample"]["a"]["entries"].is_array());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(freelie(&[]).0, 2);
    assert_eq!(freelie(&["dims"]).0, 2);
    assert_eq!(freelie(&["dims", "--max-weight", "0"]).0, 2);
    assert_eq!(freelie(&["basis", "x", "2"]).0, 2);
    assert_eq!(freelie(&["family", "i2", "--m", "3"]).0, 2);
    assert_eq!(freelie(&["family", "qbad"]).0, 2);
    assert_eq!(freelie(&["theta", "0", "0"]).0, 2);
    assert_eq!(freelie(&["verify", "/nonexistent/cert.json"]).0, 2);
    let (code, _, err) = freelie(&["normalize", "[a,b"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
    let (code, _, err) = freelie(&["normalize", "[a,b] + a"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    assert_eq!(freelie(&["--help"]).0, 0);
}

#[test]
fn normalize_and_theta_output() {
    let (code, out, _) = freelie(&["normalize", "[a,b,b,a]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"bidegree\":{\"a\":2,\"b\":2},\"terms\":[[\"-1\",\"aabb\"]]}\n");
    let (_, text, _) = freelie(&["normalize", "[a,b,b,a] - [a,b,a,b]", "--format", "text"]);
    assert_eq!(text.trim(), "0");
    let (code, out, _) = freelie(&["theta", "2", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["domain_a"], serde_json::json!(["abb"]));
    assert_eq!(v["domain_b"], serde_json::json!(["aab"]));
    assert_eq!(v["matrix"]["entries"], serde_json::json!(["-1", "1"]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.json");
    assert_eq!(freelie(&["theta", "2", "2", "--out", path.to_str().unwrap()]).0, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_freelie");
    let ok = Command::new(bin).args(["family", "i33", "--n", "1", "--format", "latex"]).output().unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\\left["));
    let bad = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
