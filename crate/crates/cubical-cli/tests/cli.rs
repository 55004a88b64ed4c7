use std::io::Write;
use std::process::{Command, Output, Stdio};

use cubical::check::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubical")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn derive_square() {
    let o = run(&["derive", "--expr", "f(x)=x^2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(v0^2, 2*v0*v1 + t1*v1^2, t1)\n");
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cubical"))
        .args(["derive", "--file", "-", "--n", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"f(x) = x^2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(v0^2, 2*v0*v1 + t1*v1^2, t1)\n");
}

#[test]
fn vertex_table_full_one_two() {
    let o = run(&["table", "--construction", "gfull", "--N", "1,2"]);
    assert_eq!(
        stdout(&o),
        "G^<1,2>U: vertex sets\n\
         ∅ | U × 0^{1} × 0^{2} | (v0, t1, t2)\n\
         {1} | U^{1} × 0^{2} | (v0, v1, t1, t2)\n\
         {2} | U^{2} ×_{0^{2}} 0^{12} | (v0, v2, t1, t2, t12)\n\
         {1,2} | U^{12} | (v0, v1, v2, v12, t1, t2, t12)\n"
    );
}

#[test]
fn target_table_full_one_two() {
    let o = run(&["table", "--construction", "gfull", "--N", "1,2", "--what", "target"]);
    assert_eq!(
        stdout(&o),
        "G^<1,2>U: target projections\n\
         (∅,{1}) | π(v0, v1, t1, t2) = (v0 + t1*v1, t1, t2)\n\
         ({2},{1,2}) | π(v0, v1, v2, v12, t1, t2, t12) = (v0 + t1*v1, v2 + t1*v12 + t12*v1 + t2*t12*v12, t1, t2, t12)\n\
         (∅,{2}) | π(v0, v2, t1, t2, t12) = (v0 + t2*v2, t1 + t2*t12, t2)\n\
         ({1},{1,2}) | π(v0, v1, v2, v12, t1, t2, t12) = (v0 + t2*v2, v1 + t2*v12, t1 + t2*t12, t2)\n"
    );
}

#[test]
fn vertex_table_full_one() {
    let o = run(&["table", "--construction", "gfull", "--N", "1"]);
    assert_eq!(stdout(&o), "G^<1>U: vertex sets\n∅ | U × 0^{1} | (v0, t1)\n{1} | U^{1} | (v0, v1, t1)\n");
}

#[test]
fn check_symmetric_groupoid_passes() {
    let o = run(&["check", "--construction", "gsy", "--n", "2", "--t", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("34 laws checked, 0 failed\n"));
}

#[test]
fn check_reports_round_trip() {
    let o = run(&["check", "--construction", "gsy", "--n", "1", "--t", "1/2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<Report> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!reports.is_empty() && reports.iter().all(|r| r.passed()));
    let again = serde_json::to_string_pretty(&reports).unwrap() + "\n";
    assert_eq!(again, stdout(&o));
}

#[test]
fn eval_points() {
    let o = run(&["eval", "--expr", "f(x)=x^2", "--n", "1", "--at", "v0=1,v1=1,t1=1"]);
    assert_eq!(stdout(&o), "3\n");
    let o = run(&["eval", "--expr", "f(x)=x^3", "--n", "2", "--at", "v0=1,v1=1,v2=1,v12=1,t1=1,t2=1"]);
    let closed = run(&["eval", "--expr", "f(x)=x^3", "--n", "2", "--sym", "--closed", "--t", "1,1", "--at", "v0=1,v1=1,v2=1,v12=1"]);
    assert_eq!(stdout(&o), stdout(&closed));
    let o = run(&["eval", "--expr", "f(x)=x/3", "--n", "1", "--at", "v0=1,v1=1,t1=1", "--ring", "mod:7"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_with_two() {
    let o = run(&["derive", "--expr", "f(x)=1/x", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-polynomial"));
    let o = run(&["derive", "--expr", "f(x = x", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
