use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_e7dirac"));
    c.env_remove("DIRAC_FIXTURES");
    c
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn e7dirac")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(s: &str) -> Vec<&str> {
    s.lines().skip(1).filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn chambers_lists_56_rows() {
    let o = run(&["chambers"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 56);
    assert!(rows[0].starts_with("0\te\t(0,1,2,3,4,5,-17/2,17/2)\t(0,0,0,0,0,9,-9/2,9/2)"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = run(&["omega"]);
    let b = run(&["omega", "--jobs", "2"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(data_rows(&stdout(&a)).len(), 4676);
}

#[test]
fn certs_lists_71_rows() {
    let o = run(&["certs"]);
    assert!(o.status.success());
    assert_eq!(data_rows(&stdout(&o)).len(), 71);
}

#[test]
fn strings_total() {
    let o = run(&["strings", "--fixtures", fixtures().to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("6\t158"));
    assert!(out.trim_end().ends_with("# total 878"));
}

#[test]
fn fixtures_from_environment() {
    let o = bin().arg("strings").env("DIRAC_FIXTURES", fixtures()).output().unwrap();
    assert!(o.status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["strings"]).status.code(), Some(3));
    assert_eq!(run(&["phi", "--fixtures", "/nonexistent"]).status.code(), Some(3));
    assert_eq!(run(&["omega", "--coord-cap", "0"]).status.code(), Some(2));
    let f = fixtures();
    let ok = run(&["verify", "--only", "1", "--only", "6", "--fixtures", f.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert_eq!(stdout(&ok).lines().filter(|l| l.contains("PASS")).count(), 2);
    let bad = run(&["verify", "--only", "10", "--fixtures", f.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn spin_lkt_for_the_second_wallach_module() {
    let o = run(&["spin-lkt", "--inf-char", "1,1,1,0,1,0,1", "--ktype", "0,0,0,0,0,0,-24", "--ktype", "1,0,0,0,0,0,-28"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("[0,0,0,0,0,0,-24]\t159/2\t1"));
    assert!(out.contains("Dirac cohomology nonzero"));
}

#[test]
fn phi_part_sizes() {
    let o = run(&["phi", "--fixtures", fixtures().to_str().unwrap(), "--format", "pretty"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("13    13"));
    assert!(out.contains("total 178192"));
}
