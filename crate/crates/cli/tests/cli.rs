use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opident")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("opident-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 10);
    let o = run(&["enumerate", "3", "4"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 105);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["enumerate", "0", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let empty = tmp_file("empty.txt", "# nothing here\n\n");
    let o = run(&["consequences", "--file", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no terms"));
    let bad = tmp_file("bad.txt", "L^3(**)\nL^3(**\n");
    let o = run(&["consequences", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));
}

#[test]
fn generic_consequences() {
    let o = run(&["consequences", "-q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("20 distinct"), "{}", stdout(&o));
}

#[test]
fn verify_and_expect() {
    let o = run(&["verify", "1,0,0,-1,0,0,0,0,0,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("16"));
    let o = run(&["verify", "L^3(xy) = L^3(x)y + xL^3(y)", "--expect", "16"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["verify", "1,0,0,-1,0,0,0,0,0,-1", "--expect", "19"]).status.code(), Some(1));
}

#[test]
fn theorem_passes() {
    let o = run(&["theorem", "--trials", "20", "-q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("14 identities verified; generic rank 20"));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = run(&["groebner", "--case", "1", "--r", "2", "--max-pairs", "3", "-q"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_is_deterministic() {
    let args = ["--format", "json", "-q", "case", "4", "--max-rank", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "opident-report/1");
    assert_eq!(v["result"]["identity_block"], 16);
    assert_eq!(v["config"]["seed"], 1);
}
