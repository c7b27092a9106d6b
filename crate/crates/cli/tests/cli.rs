use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use clutter_core::notation::{format_clutter, parse_clutter};
use clutter_core::{isomorphic, CanonicalKey};

fn clutter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clutter"))
        .args(args)
        .env_remove("CLUTTER_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = clutter(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn classify(n: &str, dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["classify", n, "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = clutter(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

fn summary_value(dir: &Path, universe: &str, field: &str) -> usize {
    let text = read(dir, "summary.csv");
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == field).unwrap();
    let row = lines.find(|l| l.starts_with(&format!("{universe},"))).unwrap();
    row.split(',').nth(col).unwrap().parse().unwrap()
}

#[test]
fn analyze_chordal_example() {
    let r = report(&["analyze", "123, 145, 2345, 236, 456"]);
    assert_eq!(r["record"]["chordal"], true);
    assert_eq!(r["record"]["shellable"], true);
    assert!(r["non_chordal_witness"].is_null());
}

#[test]
fn analyze_reports_contraction_witness() {
    let r = report(&["analyze", "123, 345, 567, 781"]);
    assert_eq!(r["record"]["chordal"], false);
    let minor = r["non_chordal_witness"]["minor"].as_str().unwrap();
    // the minor keeps the input labels 1, 3, 5, 7
    let (m, _) = parse_clutter(minor, None).unwrap();
    let (c4, _) = parse_clutter("12, 23, 34, 14", None).unwrap();
    assert!(isomorphic(&m.induced(m.support()), &c4).unwrap(), "{minor}");
    assert!(r["non_chordal_witness"]["steps"].as_array().unwrap().iter().all(|s| s.as_str().unwrap().starts_with("contract")));
}

#[test]
fn analyze_single_edge_with_certificates() {
    let r = report(&["analyze", "12", "--certificates", "--complement", "2"]);
    assert_eq!(r["record"]["chordal"], true);
    assert_eq!(r["record"]["shellable"], true);
    assert_eq!(r["independence_complex"], "1, 2");
    assert!(r["shelling_order"].is_array());
    assert!(!r["shedding_tree"].is_null());
    assert_eq!(r["complements"][0]["d"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(clutter(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(clutter(&["classify", "9", "--out", "x"]).status.code(), Some(1));
    assert_eq!(clutter(&["analyze", "12, 123"]).status.code(), Some(2));
    assert_eq!(clutter(&["analyze", "1{2"]).status.code(), Some(2));
    assert_eq!(clutter(&["family", "cyclic-uniform", "3", "5"]).status.code(), Some(2));
    assert_eq!(clutter(&["analyze", "12, 23, 34, 45, 15", "--budget", "1"]).status.code(), Some(3));
    let err = String::from_utf8(clutter(&["analyze", "12, 123"]).stderr).unwrap();
    assert!(err.contains("12 is a proper subset of 123"), "{err}");
}

#[test]
fn family_members() {
    let out = clutter(&["family", "cyclic-uniform", "5", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "123, 125, 145, 234, 345");

    let r = report(&["family", "cyclic-uniform", "5", "3", "--analyze"]);
    assert_eq!(r["record"]["forbidden_minor_to_chordality"], true);
    // the Möbius band
    assert_eq!(r["record"]["shellable"], false);
    assert_eq!(r["record"]["top_skeleton_profile"], "S1");

    let y3 = report(&["family", "two-facet-complement", "3", "--analyze"]);
    let line16 = report(&[
        "analyze",
        "123, 124, 125, 126, 134, 135, 136, 145, 146, 235, 236, 245, 246, 256, 345, 346, 356, 456",
    ]);
    assert_eq!(y3["record"]["key"], line16["record"]["key"]);
    assert!(y3["record"]["obstruction_class"].as_array().unwrap().iter().any(|c| c == "dc"));

    let k = report(&["family", "complete-uniform", "5", "3", "--analyze"]);
    assert_eq!(k["record"]["chordal"], true);
}

#[test]
fn classify_five_and_round_trip_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = classify("5", dir.path(), &[]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("forbidden_minors=2 "));
    assert_eq!(summary_value(dir.path(), "all", "forbidden_minors"), 2);
    assert_eq!(summary_value(dir.path(), "all", "total"), 210);
    let records = read(dir.path(), "records.jsonl");
    assert_eq!(records.lines().count(), 210);
    for line in records.lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        let text = r["circuits"].as_str().unwrap();
        let (c, labels) = parse_clutter(text, Some(5)).unwrap();
        assert_eq!(format_clutter(&c, &labels), text);
        assert_eq!(CanonicalKey::of(&c).unwrap().to_hex(), r["key"].as_str().unwrap());
    }
    // Z(5,3) is the only dc-obstruction on five vertices
    let table = read(dir.path(), "table.csv");
    assert_eq!(table.lines().count(), 2);
    assert!(table.lines().nth(1).unwrap().ends_with(",S1"));
}

#[test]
fn classify_six_table() {
    let dir = tempfile::tempdir().unwrap();
    classify("6", dir.path(), &[]);
    let table = read(dir.path(), "table.csv");
    let rows: Vec<&str> = table.lines().skip(1).collect();
    assert_eq!(rows.len(), 21);
    let spheres = |s: &str| rows.iter().filter(|r| r.ends_with(s)).count();
    assert_eq!((spheres(",S0"), spheres(",S1"), spheres(",S2")), (16, 4, 1));
    assert_eq!(summary_value(dir.path(), "covering", "c5_only"), 96);
}

#[test]
fn runs_are_deterministic_and_resumable() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    classify("5", first.path(), &["--jobs", "1"]);
    classify("5", second.path(), &["--jobs", "3"]);
    for name in ["records.jsonl", "summary.csv", "table.csv"] {
        assert_eq!(read(first.path(), name), read(second.path(), name), "{name}");
    }

    // cut the cache mid-entry and resume from what is left
    let cache = second.path().join("cache.bin");
    let bytes = fs::read(&cache).unwrap();
    fs::write(&cache, &bytes[..bytes.len() / 2 + 1]).unwrap();
    fs::remove_file(second.path().join("records.jsonl")).unwrap();
    let out = classify("5", second.path(), &["--resume"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("from cache"));
    for name in ["records.jsonl", "summary.csv", "table.csv"] {
        assert_eq!(read(first.path(), name), read(second.path(), name), "{name}");
    }
    assert_eq!(fs::read(&cache).unwrap().len(), bytes.len());
}

#[test]
fn cache_directory_from_environment() {
    let out_dir = tempfile::tempdir().unwrap();
    let cache_dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_clutter"))
        .args(["classify", "3", "--out", out_dir.path().to_str().unwrap()])
        .env("CLUTTER_CACHE_DIR", cache_dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(cache_dir.path().join("cache-n3.bin").exists());
    assert!(!out_dir.path().join("cache.bin").exists());
}
