//! End-to-end tests of the binary: exit codes, output round-trips, JSON
//! schema and reproducibility.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_icubes"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn extend_prints_reparsable_icube() {
    let out = run(&["extend", "--ring", "Z", "--dim", "3", "1,2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let matrix_line = text.lines().nth(1).expect("matrix line");
    let m = icubes::format::parse_matrix_text(matrix_line).expect("round trip");
    let ic = icubes::icube::verify(&m, icubes::Ring::Int).expect("valid icube");
    assert_eq!(ic.lambda, 9.into());
    assert_eq!(ic.k(), 3);
    assert_eq!(m.col(0), icubes::format::parse_vector("1,2,2").unwrap());
}

#[test]
fn extend_json_round_trips() {
    let out = run(&["extend", "--ring", "Zi", "--dim", "4", "--output", "json", "1+i,1,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "extend");
    let ic = icubes::format::icube_from_json(&v["result"]).expect("valid icube json");
    assert_eq!(ic.n(), 4);
    assert_eq!(ic.k(), 4);
}

#[test]
fn verify_rejects_non_icube() {
    let out = run(&["verify", "--ring", "Z", "1,0; 0,2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn obstruct_reports_reason() {
    let out = run(&["obstruct", "--ring", "Zi", "1,1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Obstructed: one-plus-i-indivisible"));

    let clear = run(&["obstruct", "--ring", "Z", "3,0,0"]);
    assert_eq!(clear.status.code(), Some(0));
    assert!(stdout(&clear).contains("No obstruction"));
}

#[test]
fn snf_reports_diag_and_pairing() {
    let out = run(&["snf", "--ring", "Z", "1,2,2; 2,-2,1; 2,1,-2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("diag: 1,3,9"));
    assert!(text.contains("pairing: ok"));
}

#[test]
fn factor_quat_and_two_squares() {
    let out = run(&["factor-quat", "1+2i-3j+k", "--norm", "5", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["result"]["norm_u"], "5");

    let out = run(&["two-squares", "425"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("= "));

    let none = run(&["two-squares", "21"]);
    assert_eq!(none.status.code(), Some(0));
    assert!(stdout(&none).contains("not a sum of two squares"));
}

#[test]
fn orthoreg_absence_fixture() {
    let out = run(&["orthoreg", "--ring", "Z", "--form", "21,4; 4,21", "--lambda", "21"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no orthobalanced basis"));
}

#[test]
fn hecke_count_exact() {
    let out = run(&["hecke-count", "--n", "2", "--p1", "5", "--p2", "13", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["result"]["exact"], true);
    assert!(v["result"]["count"].as_u64().unwrap() >= 65);

    let bad = run(&["hecke-count", "--n", "2", "--p1", "7", "--p2", "13"]);
    assert_eq!(bad.status.code(), Some(1), "7 is inert, not split");
}

#[test]
fn sweep_writes_jsonl_report() {
    let dir = std::env::temp_dir().join(format!("icubes-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("sweep.jsonl");
    let path = report.to_str().unwrap();
    let out = run(&["sweep-c8", "--norm-bound", "4", "--samples", "2", "--report", path]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = std::fs::read_to_string(&report)
        .unwrap()
        .lines()
        .map(|l| l.to_string())
        .collect();
    assert!(!lines.is_empty());
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).expect("jsonl line");
        assert!(v.get("rank").is_some());
    }
    // append-only: a second run doubles the line count
    let out = run(&["sweep-c8", "--norm-bound", "4", "--samples", "2", "--report", path]);
    assert_eq!(out.status.code(), Some(0));
    let doubled = std::fs::read_to_string(&report).unwrap().lines().count();
    assert_eq!(doubled, 2 * lines.len());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn paper_examples_pass() {
    let out = run(&["verify-paper-examples"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("all fixtures pass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn crosscheck_exit_codes() {
    let out = run(&["crosscheck", "two-squares"]);
    assert_eq!(out.status.code(), Some(0));
    let bad = run(&["crosscheck", "no-such-oracle"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["extend"]).status.code(), Some(2));
    assert_eq!(run(&["extend", "--ring", "Q", "1,2,2"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn file_input_and_auto_detection() {
    let dir = std::env::temp_dir().join(format!("icubes-cli-input-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let text_path = dir.join("v.txt");
    std::fs::write(&text_path, "1,2,2").unwrap();
    let out = run(&["extend", "--ring", "Z", text_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // JSON icube file carries its own ring
    let m = icubes::format::parse_matrix_text("1,2,2; 2,-2,1; 2,1,-2").unwrap();
    let ic = icubes::icube::verify(&m, icubes::Ring::Int).unwrap();
    let json_path = dir.join("icube.json");
    std::fs::write(&json_path, icubes::format::icube_to_json(&ic).to_string()).unwrap();
    let out = run(&["verify", &format!("@{}", json_path.to_str().unwrap())]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("norm 9"));

    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["hecke-count", "--n", "3", "--p1", "5", "--p2", "13", "--output", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    // elapsed_ms varies; compare everything else
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v["result"]["elapsed_ms"] = 0.into();
        v.to_string()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn budget_env_override() {
    let out = bin()
        .args(["hecke-count", "--n", "3", "--p1", "5", "--p2", "13", "--output", "json"])
        .env("ICUBES_MAX_CANDIDATES", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["count"], 1);
}
