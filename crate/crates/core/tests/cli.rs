mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use drtools::report::CSV_FILES;

fn drtools(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drtools")).args(args).output().unwrap()
}

fn corpus() -> String {
    common::corpus_dir().display().to_string()
}

fn golden(name: &str) -> String {
    fs::read_to_string(common::fixtures().join("golden").join(name)).unwrap()
}

#[test]
fn pretty_all_matches_golden() {
    let out = drtools(&["-a", "--no-timestamp", &corpus()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("corpus-all.txt"));
}

#[test]
fn no_context_flag_is_all() {
    let a = drtools(&["-a", "--no-timestamp", &corpus()]);
    let b = drtools(&["--no-timestamp", &corpus()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = drtools(&[
        "-f",
        "json",
        "-o",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
        &corpus(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(out_dir.join("report.json")).unwrap();
    assert_eq!(text, golden("corpus-report.json"));
}

#[test]
fn csv_set_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = drtools(&["-f", "csv", "-o", dir.path().to_str().unwrap(), &corpus()]);
    assert_eq!(out.status.code(), Some(0));
    for (name, header) in CSV_FILES {
        let text = fs::read_to_string(dir.path().join(name)).unwrap();
        assert_eq!(text.lines().next().unwrap(), header.join(","), "{name}");
    }
    let types = fs::read_to_string(dir.path().join("types.csv")).unwrap();
    assert!(types.lines().any(|l| l == "app,Foo,6,2,2,3,0,0,0,0,1"));
}

#[test]
fn timestamp_present_by_default() {
    let out = drtools(&["-s", &corpus()]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    let ts = header.split("generated: ").nth(1).unwrap();
    assert!(chrono::DateTime::parse_from_rfc3339(ts).is_ok(), "{ts}");
}

#[test]
fn top_limits_pretty_rows() {
    let out = drtools(&["-t", "--top", "3", "--no-timestamp", &corpus()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Types (top 3 of 18)"));
    assert!(!text.contains("Methods"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(drtools(&["--top", "0", &corpus()]).status.code(), Some(1));
    assert_eq!(drtools(&["--frobnicate", &corpus()]).status.code(), Some(1));
    assert_eq!(drtools(&[]).status.code(), Some(1));
    assert_eq!(drtools(&["--sort", "types=bogus", &corpus()]).status.code(), Some(1));
}

#[test]
fn help_and_version() {
    let out = drtools(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("--top"));
    let out = drtools(&["-v"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains(drtools::VERSION));
}

#[test]
fn missing_directory_exits_two() {
    let out = drtools(&["/nonexistent/drtools-src"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_threshold_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.conf");
    fs::write(&path, "nbd_high = -1\n").unwrap();
    let out = drtools(&["--thresholds", path.to_str().unwrap(), &corpus()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("nbd_high"));
}

#[test]
fn thresholds_change_findings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.conf");
    fs::write(&path, "nbd_high = 3\n").unwrap();
    let out = drtools(&[
        "--findings",
        "--no-timestamp",
        "--thresholds",
        path.to_str().unwrap(),
        &corpus(),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Findings (2)"), "{text}");
    assert!(text.contains("sumEven"));
}

#[test]
fn findings_do_not_gate_unless_asked() {
    assert_eq!(drtools(&["--findings", &corpus()]).status.code(), Some(0));
    assert_eq!(drtools(&["--fail-on-findings", &corpus()]).status.code(), Some(3));
    let small = common::fixtures().join("small");
    assert_eq!(
        drtools(&["--fail-on-findings", small.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn custom_sort() {
    let out = drtools(&[
        "-t",
        "--sort",
        "types=nom:asc,type:asc",
        "--top",
        "1",
        "--no-timestamp",
        &corpus(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().find(|l| l.starts_with("app.cycle3")).unwrap();
    assert!(row.contains(" A "), "{row}");
}

#[test]
fn diagnostics_go_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("Bad.java"), "class Bad {\n  void m( {\n}\n").unwrap();
    let out = drtools(&["-s", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("Bad.java:"), "{err}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out_dir = dir.path().join(sub);
        for f in ["csv", "json"] {
            let out = drtools(&["-f", f, "-o", out_dir.to_str().unwrap(), "--no-timestamp", &corpus()]);
            assert_eq!(out.status.code(), Some(0));
        }
        out_dir
    };
    let (a, b) = (run("a"), run("b"));
    let files = |p: &Path| {
        let mut names: Vec<_> = fs::read_dir(p).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        names
    };
    assert_eq!(files(&a).len(), 9);
    for name in files(&a) {
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
    }
}
