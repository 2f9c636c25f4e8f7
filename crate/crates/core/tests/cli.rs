use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syllogistic")).args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_syllogistic"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn check_valid() {
    let o = run(&["check", "A(m,p) # A(s,m) |= A(s,p)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("VALID"));
    assert!(text.contains("mood AAA figure 1"));
}

#[test]
fn check_invalid() {
    let o = run(&["check", "O(p,m)~ # E(m,s)~ |= I(s,p)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INVALID: bullet count"));
}

#[test]
fn check_trace_lists_deletions() {
    let o = run(&["check", "--trace", "E(m,p) # A(s,m) # I(s,s) |= O(s,p)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("delete s at 2"), "{text}");
    assert!(text.contains("delete m at 2"), "{text}");
    assert!(text.contains("assuming I(S,S)"));
}

#[test]
fn check_json() {
    let o = run(&["check", "--json", "--countermodel", "E(m,p) # A(s,m) |= O(s,p)"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["valid"], false);
    assert_eq!(v["countermodel"]["universe_size"], 0);
    assert_eq!(v["reason"], "bullet count (1 vs 2)");
}

#[test]
fn parse_errors_exit_2() {
    let o = run(&["check", "A(x,y |= A(x,y)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error at offset 6"));
    let o = run(&["normalize", "A(a,b) # A(c,d)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("junction 1"));
    assert_eq!(run(&["check", "--n", "3", "A(x,y) |= A(x,y)"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn normalize_four_atom_word() {
    let o = run(&["normalize", "E(a3,a4) # I(a3,a3) # E(a2,a3) # I(a1,a2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("normal form: O(a3,a4) # O(a1,a3)\n"));
}

#[test]
fn normalize_from_stdin_with_strategy() {
    let o = run_with_stdin(&["normalize", "--json", "--strategy", "rightmost", "-"], "E(a4,a5) # I(a3,a4) # A(a3,a2)~ # E(a1,a2)\n");
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["strategy"], "rightmost");
    assert_eq!(v["normal_form"], "O(a3,a5) # E(a1,a3)");
    assert_eq!(v["trace"].as_array().unwrap().len(), 2);
}

#[test]
fn enumerate_json() {
    let o = run(&["enumerate", "--n", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["total"], 24);
    assert_eq!(v["syllogisms"].as_array().unwrap().len(), 24);
    assert_eq!(v["syllogisms"][0]["family"], 1);
    let again = run(&["enumerate", "--n", "3", "--json"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn enumerate_cap() {
    let o = run(&["enumerate", "--n", "9"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap of 8"));
    assert_eq!(run(&["enumerate", "--n", "2", "--cap", "1"]).status.code(), Some(3));
}

#[test]
fn critical_pairs_exit_codes() {
    let o = run(&["critical-pairs", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 overlap families"));
    let o = run(&["critical-pairs", "--n", "3", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let pairs = json(&o);
    assert!(pairs.as_array().unwrap().iter().any(|p| p["joinable"] == false));
    assert_eq!(run(&["critical-pairs", "--n", "6"]).status.code(), Some(3));
}

#[test]
fn countermodel_command() {
    let o = run(&["countermodel", "O(p,m)~ # E(m,s)~ |= I(s,p)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "U = {0}, m = {}, p = {0}, s = {}");
    let o = run(&["countermodel", "--json", "O(p,m)~ # E(m,s)~ |= I(s,p)"]);
    assert_eq!(json(&o)["assignment"]["p"], serde_json::json!([0]));
    let o = run(&["countermodel", "A(m,p) # A(s,m) |= A(s,p)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("none within bound"));
}

#[test]
fn audit_command() {
    let o = run(&["audit", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0 violations"));
    assert!(text.contains("redundant-existence"));
    assert_eq!(run(&["audit", "--n", "5"]).status.code(), Some(3));
}

#[test]
fn classify_and_render() {
    let o = run(&["classify", "a1 <- * -> a2 -> a3 -> * <- a4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("case: (vi) i=1 j=4"));
    let o = run(&["render", "O(p,m)~ # E(m,s)~ |= I(s,p)"]);
    assert_eq!(stdout(&o), "   s -> * <- m -> * <- * -> p\n|= s <- * -> p\n");
    let o = run(&["render", "A(m,p) # A(s,m)"]);
    assert_eq!(stdout(&o), "s -> m -> p\n");
}
