//! Command line behaviour through the library entry point.

use std::fs;

use sykcomb::cli::run;
use sykcomb::ColoredGraph;

fn invoke(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("sykcomb").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn series_prints_counts() {
    let (code, out) = invoke(&["series", "--q", "3", "--delta", "0", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1 1\n2 3\n3 12\n4 55\n");
}

#[test]
fn kernels_at_excess_zero() {
    let (code, out) = invoke(&["kernels", "--q", "3", "--delta", "0"]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].ends_with("\t1"));
}

#[test]
fn check_agrees_and_exits_zero() {
    let (code, out) = invoke(&["check", "--q", "3", "--n", "4", "--delta", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().skip(1).all(|l| l.ends_with("ok")), "{out}");
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(invoke(&["series", "--q", "3", "--delta", "0"]).0, 2);
    assert_eq!(invoke(&["series", "--q", "2", "--delta", "0", "--n", "3"]).0, 2);
    assert_eq!(invoke(&["series", "--q", "3", "--delta", "9", "--n", "3"]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"q": 3, "colour": 1}"#).unwrap();
    let bad = bad.to_str().unwrap();
    assert_eq!(invoke(&["--config", bad, "series", "--delta", "0", "--n", "2"]).0, 2);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"q": 3, "delta": 1, "n": 3}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let (code, out) = invoke(&["--config", cfg, "series"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1 0\n2 3\n3 30\n");
    // the command line wins over the file
    let (_, out) = invoke(&["--config", cfg, "series", "--n", "1"]);
    assert_eq!(out, "1 0\n");
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    let (code, out) = invoke(&["series", "--q", "3", "--delta", "0", "--n", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(fs::read_to_string(path).unwrap(), "1 1\n2 3\n");
}

#[test]
fn sampling_is_reproducible() {
    let args = ["sample", "--q", "3", "--delta", "1", "--n", "30", "--trials", "50", "--seed", "7", "--general"];
    let (code, a) = invoke(&args);
    assert_eq!(code, 0);
    let (_, b) = invoke(&args);
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(report["trials"], 50);
}

#[test]
fn emitted_samples_round_trip_through_export() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("out");
    let (code, _) = invoke(&[
        "sample", "--q", "3", "--delta", "2", "--n", "20", "--trials", "3", "--emit", emit.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let file = emit.join("sample_1.json");
    let g = ColoredGraph::from_json(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(g.order(), 2);
    assert!(emit.join("sample_2.dot").exists());
    let (code, out) = invoke(&["export", "--input", file.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(ColoredGraph::from_json(&out).unwrap(), g);
    let (code, out) = invoke(&["export", "--input", file.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.contains("graph"));
}

#[test]
fn asymptotics_reports_constants() {
    let (code, out) = invoke(&["asymptotics", "--q", "3", "--delta", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("4/27"), "{out}");
}
