//! Exercises the binary end to end: verbs, exit codes, and determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use ddf_core::corpus::nonassociative_mutant;
use ddf_core::doc::{emit, Document};

fn ddf(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ddf"));
    cmd.args(args);
    cmd
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = ddf(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn demo_validates_cleanly() {
    for which in ["terminal", "vertical", "walking", "representable"] {
        let demo = ddf(&["demo", which]).output().unwrap();
        assert!(demo.status.success());
        let out = run_with_stdin(&["validate", "-"], &String::from_utf8(demo.stdout).unwrap());
        assert_eq!(out.status.code(), Some(0), "{which}");
    }
}

#[test]
fn demo_verifies_cleanly() {
    let demo = ddf(&["demo", "vertical"]).output().unwrap();
    let out = run_with_stdin(&["verify", "-"], &String::from_utf8(demo.stdout).unwrap());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("OK"));
}

#[test]
fn validation_failures_exit_one_and_name_the_axiom() {
    let mut doc = Document::default();
    doc.categories.insert("bad".into(), nonassociative_mutant());
    let out = run_with_stdin(&["validate", "-"], &emit(&doc));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("category.assoc"));
}

#[test]
fn parse_failures_exit_two() {
    let out = run_with_stdin(&["validate", "-"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    let out = run_with_stdin(
        &["validate", "-"],
        r#"{"functions": {"f": {"dom": "ghost", "cod": "ghost", "map": {}}}}"#,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("ghost"));
}

#[test]
fn elements_and_invert_round_trip_through_files() {
    let dir = std::env::temp_dir().join("ddf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("demo.json");
    let el = dir.join("el.json");
    let inv = dir.join("inv.json");
    let demo = ddf(&["demo", "terminal"]).output().unwrap();
    std::fs::write(&input, demo.stdout).unwrap();
    let out = ddf(&[
        "elements",
        input.to_str().unwrap(),
        "--functor",
        "lax_0",
        "-o",
        el.to_str().unwrap(),
    ])
    .output()
    .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = ddf(&["validate", el.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = ddf(&[
        "invert",
        input.to_str().unwrap(),
        "--ddf",
        "el_0",
        "-o",
        inv.to_str().unwrap(),
    ])
    .output()
    .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = ddf(&["validate", inv.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn elements_of_a_missing_name_exits_two() {
    let demo = ddf(&["demo", "terminal"]).output().unwrap();
    let dir = std::env::temp_dir().join("ddf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("missing.json");
    std::fs::write(&input, demo.stdout).unwrap();
    let out = ddf(&["elements", input.to_str().unwrap(), "--functor", "ghost"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn roundtrip_reports_clean_over_a_named_base() {
    let demo = ddf(&["demo", "walking"]).output().unwrap();
    let out = run_with_stdin(
        &["roundtrip", "-", "--base", "walking_proarrow"],
        &String::from_utf8(demo.stdout).unwrap(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = ddf(&["demo", "vertical"]).output().unwrap().stdout;
    let b = ddf(&["demo", "vertical"]).output().unwrap().stdout;
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let v1 = run_with_stdin(&["verify", "-", "--json"], &text).stdout;
    let v2 = run_with_stdin(&["verify", "-", "--json"], &text).stdout;
    assert_eq!(v1, v2);
}

#[test]
fn shipped_corpus_files_verify_green() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
    for file in ["terminal.json", "vertical_c2.json", "walking_proarrow.json"] {
        let path = format!("{root}/{file}");
        let out = ddf(&["verify", &path]).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{file}");
    }
}

#[test]
fn seed_selects_the_sampled_representable() {
    let a = ddf(&["demo", "representable", "--seed", "1"]).output().unwrap().stdout;
    let b = ddf(&["demo", "representable", "--seed", "1"]).output().unwrap().stdout;
    assert_eq!(a, b);
}
