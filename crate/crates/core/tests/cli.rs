//! The `derid` command line driven in-process through `cli::run`.
//!
//! Golden files live in `tests/golden/`; set `UPDATE_GOLDEN=1` to rewrite
//! them after an intentional output change.

use std::fs;
use std::path::{Path, PathBuf};

use derived_identities::cli;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("derid").chain(args.iter().copied()), &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn data(name: &str) -> String {
    manifest().join("../../data").join(name).display().to_string()
}

fn golden(name: &str, args: &[&str]) {
    let o = run(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.err);
    let path = manifest().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &o.out).unwrap();
    }
    assert_eq!(o.out, fs::read_to_string(&path).unwrap(), "golden {name}");
}

#[test]
fn golden_documents() {
    golden("derived_lie_3.txt", &["derived", "lie", "-n", "3"]);
    golden("derived_com_2.txt", &["derived", "com", "-n", "2"]);
    golden("derived_com_3.txt", &["derived", "com", "-n", "3"]);
    golden("derived_as_3.json", &["--format", "json", "derived", "as", "-n", "3"]);
    golden("derived_com_2.tex", &["--format", "latex", "derived", "com", "-n", "2"]);
    golden("component_nov_3.txt", &["component", "nov", "-n", "3"]);
    golden("hat_test_20.txt", &["hat-test", "--samples", "20"]);
}

#[test]
fn json_document_is_parseable() {
    let o = run(&["--format", "json", "crosscheck", "as", "-n", "3", "--lambda", "0", "--lambda", "-2"]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["schema"], "derived-identities/result/v1");
    assert_eq!(v["lambdas"], serde_json::json!(["0", "-2"]));
    assert!(v["verdicts"].as_array().unwrap().iter().all(|x| x["holds"] == true));
}

#[test]
fn check_reports_each_line() {
    let o = run(&["check", "com", "-f", &data("novikov_prec.ids"), "--lambda", "7/3"]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(o.out.contains("verdict line 3 [lambda=7/3]: true"));
    assert!(o.out.contains("verdict line 5 [lambda=7/3]: true"));
    assert_eq!(run(&["check", "as", "-f", &data("as_derived.ids")]).code, 0);
}

#[test]
fn false_identity_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.ids");
    fs::write(&file, "prec(succ(x1,x2),x3) - succ(x1,prec(x2,x3))\nprec(x1,x2)\n").unwrap();
    let o = run(&["check", "as", "-f", file.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.out.contains("verdict line 1 [lambda=0]: true"));
    assert!(o.out.contains("verdict line 2 [lambda=0]: false"));
    assert!(o.err.contains("failed: line 2"));
}

#[test]
fn errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["derived", "unknown", "-n", "3"],
        &["derived", "as", "-n", "0"],
        &["derived", "as"],
        &["frobnicate"],
        &["check", "as", "-f", "/nonexistent/file.ids"],
        &["crosscheck", "as", "-n", "2", "--lambda", "one"],
        &["hat-test", "--max-order", "1"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.code, 2, "{args:?}");
        assert!(o.out.is_empty(), "{args:?} wrote to stdout");
        assert!(!o.err.is_empty());
    }
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.ids");
    fs::write(&file, "prec(x1,x1)\n").unwrap();
    let o = run(&["check", "as", "-f", file.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("twice"), "{}", o.err);
}

#[test]
fn help_and_version_go_to_stdout() {
    let h = run(&["--help"]);
    assert_eq!(h.code, 0);
    assert!(h.out.contains("derived"));
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn presentation_files_are_accepted() {
    let from_file = run(&["derived", &data("novikov.toml"), "-n", "3"]);
    let builtin = run(&["derived", "nov", "-n", "3"]);
    assert_eq!(from_file.code, 0, "{}", from_file.err);
    let dims = |s: &str| s.lines().filter(|l| l.starts_with("dim ")).map(str::to_string).collect::<Vec<_>>();
    assert_eq!(dims(&from_file.out), dims(&builtin.out));
    assert_eq!(run(&["component", &data("leibniz.toml"), "-n", "3"]).code, 0);
}

#[test]
fn white_product_of_two_presentations() {
    let o = run(&["white", "mag", "mag", "-n", "3"]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("dim kernel: 0\n"));
}

fn cache_entries(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

#[test]
fn disk_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = run(&["--cache-dir", d, "-v", "derived", "as", "-n", "3"]);
    assert!(first.err.contains("0 disk hits"), "{}", first.err);
    assert!(!cache_entries(dir.path()).is_empty());
    let second = run(&["--cache-dir", d, "-v", "derived", "as", "-n", "3"]);
    assert!(!second.err.contains(" 0 disk hits"), "{}", second.err);
    assert_eq!(first.out, second.out);
    assert!(!first.out.contains("elapsed"), "timings must stay off stdout");
}

#[test]
fn no_cache_leaves_directory_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["--cache-dir", dir.path().to_str().unwrap(), "--no-cache", "derived", "com", "-n", "3"]);
    assert_eq!(o.code, 0);
    assert!(cache_entries(dir.path()).is_empty());
}

#[test]
fn truncated_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let clean = run(&["--cache-dir", d, "derived", "as", "-n", "3"]);
    for path in cache_entries(dir.path()) {
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, &text[..text.len() / 3]).unwrap();
    }
    let again = run(&["--cache-dir", d, "derived", "as", "-n", "3"]);
    assert_eq!(again.code, 0);
    assert_eq!(again.out, clean.out);
    assert!(again.err.contains("warning: discarding corrupt cache entry"), "{}", again.err);
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["derived", "com", "-n", "3"][..],
        &["--format", "latex", "derived", "as", "-n", "3"],
        &["hat-test", "--samples", "10", "--seed", "7"],
    ] {
        assert_eq!(run(args).out, run(args).out);
    }
}
