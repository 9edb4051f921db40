//! End-to-end runs of the `jscc` binary.

mod common;

use std::process::{Command, Output};

use common::model_path;

fn jscc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jscc")).args(args).output().expect("binary runs")
}

fn model(name: &str) -> String {
    model_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn entropy_of_a_pair() {
    let o = jscc(&["info", "entropy", "--model", &model("cover_salehi.json"), "--of", "S1,S2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "H(S1,S2) = 1.584963");
    let o = jscc(&["info", "entropy", "--model", &model("cover_salehi_w1.json"), "--of", "S1", "--given", "W1"]);
    assert!(stdout(&o).contains("0.459148"), "{}", stdout(&o));
}

#[test]
fn minrate_reports_b_min_and_reference() {
    let o = jscc(&["minrate", "--model", &model("independent_xor.json"), "--theorem", "thm3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("b_min: 0.666667"), "{text}");
    assert!(text.contains("mode: exact"));
}

#[test]
fn zero_block_length_is_a_usage_error() {
    let o = jscc(&["simulate", "--model", &model("cover_salehi.json"), "--scheme", "uncoded", "--m", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m must be ≥ 1"), "{}", stderr(&o));
}

#[test]
fn violated_precondition_exits_one_unless_forced() {
    let args = ["minrate", "--model", &model("cover_salehi.json"), "--theorem", "thm3"];
    let o = jscc(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("independent(S1;S2)"));
    let mut forced = args.to_vec();
    forced.push("--force");
    let o = jscc(&forced);
    assert!(o.status.success());
    assert!(stdout(&o).contains("mode: sufficient"));
}

#[test]
fn unknown_flags_and_theorems_exit_two() {
    assert_eq!(jscc(&["minrate", "--bogus"]).status.code(), Some(2));
    let o = jscc(&["minrate", "--model", &model("independent_xor.json"), "--theorem", "thm11"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(jscc(&["info", "entropy", "--model", "/nonexistent.json", "--of", "S1"]).status.code(), Some(2));
}

#[test]
fn json_output_parses() {
    let o = jscc(&["check", "--model", &model("shannon_multiplier.json"), "--theorem", "twoway-ach", "--uncoded", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["achievable"], "boundary");
    assert_eq!(v["theorem"], "twoway-ach");
}

#[test]
fn region_dump_is_csv() {
    let o = jscc(&["region", "dump", "--model", &model("independent_bits.json")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "rx1_i1,rx1_i2,rx1_isum,p_x1_0,p_x1_1,p_x2_0,p_x2_1,refined");
    let first: Vec<f64> = lines.next().unwrap().split(',').take(3).map(|v| v.parse().unwrap()).collect();
    assert_eq!(first, vec![1.0, 1.0, 1.5]);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sim.csv");
    let o = jscc(&[
        "simulate", "--model", &model("cover_salehi.json"), "--scheme", "uncoded", "--m", "6", "--trials", "10",
        "--csv", "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("scheme,m,n,b,trials,seed,error_rate_rx1"), "{text}");
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        stdout(&jscc(&[
            "simulate", "--model", &model("independent_xor.json"), "--scheme", "matched", "--m", "6", "--b", "1.0",
            "--trials", "30", "--seed", "9", "--json", "--threads", threads,
        ]))
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn two_way_outer_bound() {
    let o = jscc(&["twoway", "outer", "--model", &model("shannon_multiplier.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("b_lower: 0.99"), "{}", stdout(&o));
}
