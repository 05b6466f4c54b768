//! End-to-end runs of the binary: output shapes and the exit-code contract.

use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wittbrauer"))
}

#[test]
fn fold_two_level_one_symbols() {
    let out = bin()
        .args(["--prime", "2", "--vars", "t,s,u,w", "fold", "[(w), t)_{2} * [(s), u)_{2}"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("result: [("), "unexpected output: {}", text);
    assert!(text.contains(")_{4}"), "fold result must have degree 4: {}", text);
}

#[test]
fn fold_json_trace_revalidates() {
    let out = bin()
        .args([
            "--prime",
            "2",
            "--vars",
            "t,s,u,w",
            "--json",
            "fold",
            "[(w), t)_{2} * [(s), u)_{2}",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "cyclic");
    assert_eq!(v["valid"], true);
    assert_eq!(v["steps"].as_array().unwrap().len(), 6);
}

#[test]
fn fold_mixed_input_reports_halt() {
    let out = bin()
        .args([
            "--prime",
            "2",
            "--vars",
            "t,s,u,v,w",
            "--json",
            "fold",
            "[(t,s), u)_{4} * [(v), w)_{2}",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "halt");
    assert_eq!(v["certificate"]["valid"], true);
    assert_eq!(v["power_class"], "[(t^2), u)_{2}");
}

#[test]
fn witt_subcommand() {
    let out = bin()
        .args(["--prime", "2", "--vars", "t,s", "witt", "add (t,0) (s,0)"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(t + s, t*s)");
}

#[test]
fn pi_subcommand_reproduces_the_known_correction() {
    let out = bin()
        .args([
            "--prime", "2", "--vars", "b,x", "--json", "pi", "--beta", "b", "--x", "x", "--m", "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pi"], "(1, x^4)");
    assert_eq!(v["mu"], "(1, x^4)");
    assert_eq!(v["relation_ok"], true);
}

#[test]
fn realize_subcommand() {
    let out = bin()
        .args(["--prime", "2", "--vars", "t,s", "--json", "realize", "[(t), s)_{2}"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 4);
    assert_eq!(v["relations_ok"], true);
    assert_eq!(v["center_rank"], 1);
}

#[test]
fn stdin_is_accepted() {
    let mut child = bin()
        .args(["--prime", "2", "--vars", "t,s"])
        .arg("fold")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"[(t), s)_{2}")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("result: [(t), s)_{2}"));
}

#[test]
fn exit_code_contract() {
    // domain error: degenerate delta in a fold -> exit 1
    // alpha - beta = t, delta = t^2 + t^2 = 0 over F_2
    let out = bin()
        .args(["--prime", "2", "--vars", "t,g", "fold", "[(t), t^2)_{2} * [(t^2+t), g)_{2}"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    // domain error: inverting a non-unit -> exit 1
    let out = bin()
        .args(["--prime", "2", "--vars", "t,s", "witt", "inv (0,t)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // parse error -> exit 2
    let out = bin()
        .args(["--prime", "2", "--vars", "t,s", "fold", "[(t), s)_{3}"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // usage error (unknown op) -> exit 2
    let out = bin()
        .args(["--prime", "2", "--vars", "t,s", "witt", "explode (t)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // success -> exit 0
    let out = bin()
        .args(["--prime", "2", "--vars", "t,s", "witt", "wp (t,0)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
