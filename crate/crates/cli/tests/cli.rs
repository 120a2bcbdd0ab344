use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn pathsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathsum"))
        .args(args)
        .env_remove("PATHSUM_MAX_BITS")
        .output()
        .expect("binary runs")
}

fn run(args: &[&str], files: &[&str]) -> Output {
    let paths: Vec<String> = files.iter().map(|f| fixture(f).display().to_string()).collect();
    let mut all: Vec<&str> = args.to_vec();
    all.extend(paths.iter().map(String::as_str));
    pathsum(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn hh_equals_identity() {
    let o = run(&["verify"], &["h_h.qc", "id.qc"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "equal");
}

#[test]
fn tx_differs_from_xt() {
    let o = run(&["verify"], &["tx.qc", "xt.qc"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("index 1"), "{}", stdout(&o));
    let j = run(&["verify", "--json"], &["tx.qc", "xt.qc"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["verdict"]["verdict"], "not-equal");
    assert_eq!(v["verdict"]["index"], 1);
}

#[test]
fn controlled_h_lists_six_entries() {
    let o = run(&["normalize"], &["ch.qc"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with('|')).map(String::from).collect();
    let labels: Vec<&str> = lines.iter().map(|l| &l[1..5]).collect();
    assert_eq!(labels, ["0000", "0101", "1010", "1011", "1110", "1111"]);
}

#[test]
fn json_is_dense_and_deterministic() {
    let a = run(&["normalize", "--json"], &["ch.qc"]);
    let b = run(&["normalize", "--json"], &["ch.qc"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["normal_form"]["entries"].as_array().unwrap().len(), 16);
}

#[test]
fn field_theory_over_the_cyclotomic_field() {
    let o = run(&["verify", "--ring", "cyc8-field", "--theory", "field"], &["h_h.qc", "id.qc"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_two() {
    let o = run(&["--ring", "rational", "normalize"], &["tx.qc"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("4:1"));

    let o = run(&["verify", "--ring", "int", "--theory", "field"], &["h_h.qc", "id.qc"]);
    assert_eq!(o.status.code(), Some(2));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "CCX 0 1 1").unwrap();
    let o = pathsum(&["normalize", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("repeated qubit"));

    let o = pathsum(&["normalize", "/no/such/file.qc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn size_cap_from_the_environment() {
    let path = fixture("ch.qc");
    let o = Command::new(env!("CARGO_BIN_EXE_pathsum"))
        .args(["normalize", path.to_str().unwrap()])
        .env("PATHSUM_MAX_BITS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn matrix_dump() {
    let o = run(&["matrix", "--json"], &["tx.qc"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.to_string().contains("(0,1,0,0)/2^0"));
}

#[test]
fn selftest_single_criterion() {
    let o = pathsum(&["selftest", "--only", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS [1]"));
}
