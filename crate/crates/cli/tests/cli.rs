use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pebblegame"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pebblegame-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

#[test]
fn eta_of_complete_graph() {
    let out = run(&["eta", "--family", "complete", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["eta"]["kind"], "finite");
    assert_eq!(v["eta"]["value"], 5);
    assert_eq!(v["pi"], 5);
    assert_eq!(v["violations"], Value::Array(vec![]));
}

#[test]
fn solve_p3_far_end_is_defender() {
    let g = scratch("p3.txt", "3 0\n0 1\n1 2\n");
    let c = scratch("p3-config.txt", "0 0 3\n");
    let t = scratch("p3-transcript.jsonl", "");
    let out = run(&[
        "solve",
        "--graph",
        g.to_str().unwrap(),
        "--config",
        c.to_str().unwrap(),
        "--transcript",
        t.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["winner"], "defender");
    let lines: Vec<Value> = fs::read_to_string(&t)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.last().unwrap()["winner"], "defender");
    assert_eq!(lines[0]["player"], "mover");
}

#[test]
fn solve_root_override_and_mover_best_move() {
    let out = run(&["solve", "--family", "path", "--n", "3", "--root", "0", "--counts", "0 5 0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["winner"], "mover");
    assert_eq!(v["best_move"]["from"], 1);
    assert_eq!(v["best_move"]["to"], 0);
}

#[test]
fn verify_gin_g_passes() {
    let out = run(&["verify", "gin-g", "--s-max", "3", "--t-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "gin-g");
    assert_eq!(v["disagreements"], Value::Array(vec![]));
    assert_eq!(v["cases"], v["agreements"]);
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "oracle-sweep", "--s-max", "2", "--t-max", "2", "--max-size", "7", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_csv_rows() {
    let out = run(&["verify", "oracle-sweep", "--s-max", "1", "--t-max", "2", "--max-size", "5", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "s,t,h,configuration,rule,oracle,brute,agree");
    assert!(lines.all(|l| l.ends_with(",true")));
}

#[test]
fn esg_instance_file() {
    let f = scratch("esg.txt", "4 2 1\na b c d\na b\nc d\n");
    let out = run(&["esg", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["winner"], "dan");

    let f = scratch("esg2.txt", "4 2 2\na b c d\na b\nc d\n");
    let v = json(&run(&["esg", f.to_str().unwrap()]));
    assert_eq!(v["winner"], "mary");
    assert!(v["best_pick"].is_string());
}

#[test]
fn classify_reports_fields() {
    let out = run(&["classify", "--s", "2", "--t", "2", "--counts", "0 5 4 0 0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["k"], 2);
    assert_eq!(v["C_T"], 4);
    assert_eq!(v["T_parities"], serde_json::json!(["odd", "even"]));
    assert_eq!(v["rule"], "C(x)>=k+2");
    assert_eq!(v["winner"], "mover");
}

#[test]
fn classify_brute_force_fallback_matches_solve() {
    // K2 as H; C(x) = 2 on the boundary.
    let counts = "0 7 2 0 0";
    let gst = ["--s", "2", "--t", "2", "--h", "0-1", "--counts", counts];
    let s = json(&run(&[&["solve", "--family", "gst"][..], &gst].concat()));
    for fallback in ["esg", "brute-force"] {
        let c = json(&run(&[&["classify", "--fallback", fallback][..], &gst].concat()));
        assert_eq!(c["winner"], s["winner"], "{fallback}");
    }
}

#[test]
fn certify_tree_exemplar() {
    let v = json(&run(&["certify-infinite", "--family", "tree-exemplar", "--max-cut", "1"]));
    assert_eq!(v["roots"][0]["certificate"]["cut_set"], serde_json::json!([1]));
}

#[test]
fn certified_eta_is_infinite() {
    let v = json(&run(&["eta", "--family", "tree-exemplar", "--skip-pi"]));
    assert_eq!(v["eta"]["kind"], "infinite_certified");
    assert!(v["certificate"]["cut_set"].is_array());
}

#[test]
fn pi_of_path() {
    let v = json(&run(&["pi", "--family", "path", "--n", "4"]));
    assert_eq!(v["pi"], 8);
}

#[test]
fn bad_graph_file_exits_2() {
    let g = scratch("bad.txt", "not a graph\n");
    let out = run(&["solve", "--graph", g.to_str().unwrap(), "--counts", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn missing_file_and_unknown_inputs_exit_2() {
    assert_eq!(run(&["solve", "--graph", "/nonexistent", "--counts", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--family", "complete", "--n", "3", "--counts", "1 1 1"]).status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let out = run(&["eta", "--family", "path", "--n", "4", "--root", "0", "--budget", "5", "--skip-pi"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["eta"]["kind"], "exceeds_budget");
}

#[test]
fn workers_env_is_accepted() {
    let out = bin()
        .args(["eta", "--family", "complete", "--n", "3"])
        .env("PEBBLE_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn interactive_play_reads_moves() {
    let mut child = bin()
        .args(["play", "--interactive", "--family", "path", "--n", "3", "--root", "0", "--counts", "0 0 4"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"9 9\n2 1\n1 0\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("enter a legal move"));
    assert!(text.contains("wins"));
}

#[test]
fn engine_self_play() {
    let out = run(&["play", "--family", "complete", "--n", "3", "--root", "0", "--counts", "0 2 0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("mover wins"));
}
