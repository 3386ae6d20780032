use std::process::{Command, Output};

use quotkit::report::Verdict;
use quotkit::scenario::ScenarioFile;
use quotkit_core::transform::Strategy;

fn quotkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn chart_d1_document() {
    let f = ScenarioFile::parse(r#"{"kind": "chart", "d": 1}"#).unwrap();
    let r = quotkit::run_file(&f, 0, Strategy::Lex).unwrap();
    assert_eq!(r.exit_code(), 0);
    let comps = &r.checks.iter().find(|c| c.label == "chart/d=1/components").unwrap().witness;
    assert_eq!(comps.as_array().unwrap().len(), 2);
    let branch = r.checks.iter().find(|c| c.label == "chart/d=1/pair-family-branch").unwrap();
    assert_eq!(branch.witness["dimension"], 3);
}

#[test]
fn ineq_and_choice_documents() {
    let f = ScenarioFile::parse(r#"{"kind": "ineq", "m_max": 5, "r_max": 5}"#).unwrap();
    let r = quotkit::run_file(&f, 0, Strategy::Lex).unwrap();
    assert!(r.checks.iter().all(|c| c.verdict == Verdict::Pass));
    let main = r.checks.iter().find(|c| c.label == "ineq/main").unwrap();
    assert_eq!(main.witness["violations"].as_array().unwrap().len(), 0);

    let f = ScenarioFile::parse(r#"{"kind": "choice-dim", "scenario": "2C", "d": 3}"#).unwrap();
    let r = quotkit::run_file(&f, 0, Strategy::Lex).unwrap();
    let c = r.checks.iter().find(|c| c.label.ends_with("choice-dimension")).unwrap();
    assert_eq!(c.verdict, Verdict::Pass);
    assert_eq!(c.witness["ledger"]["total"], 5);
}

#[test]
fn suite_flags_extrapolation_and_is_deterministic() {
    let a = quotkit(&["suite", "--d", "1,2,3", "--seed", "11"]);
    let b = quotkit(&["suite", "--d", "1,2,3", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| !c["anchor"].as_str().unwrap().is_empty()));
    assert!(checks
        .iter()
        .any(|c| c["label"].as_str().unwrap().starts_with("chart/d=3/") && c["label"].as_str().unwrap().contains("extrapolation")));
    let labels: Vec<&str> = checks.iter().map(|c| c["label"].as_str().unwrap()).collect();
    let mut sorted = labels.clone();
    sorted.sort();
    assert_eq!(labels, sorted);
}

#[test]
fn d1_suite_is_fast() {
    let t = std::time::Instant::now();
    let r = quotkit::verify_suite(&[1], 0, Strategy::Lex).unwrap();
    assert_eq!(r.exit_code(), 0);
    assert!(t.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn exit_codes() {
    assert_eq!(quotkit(&["suite", "--d", ""]).status.code(), Some(2));
    assert_eq!(quotkit(&["chart"]).status.code(), Some(2));
    assert_eq!(quotkit(&["forward", "--scenario", "2C"]).status.code(), Some(2));
    assert_eq!(quotkit(&["run", "/nonexistent/scenario.json"]).status.code(), Some(2));
    assert_eq!(quotkit(&["choice-dim", "--random", "1"]).status.code(), Some(3));

    let dir = std::env::temp_dir().join(format!("quotkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // Edge count 3 breaks b·m = Σ m_D (D·C) on C.
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"nodes": [{"label": "C", "self_int": -2, "mult": 1, "kind": "exceptional"},
                      {"label": "S", "self_int": 0, "mult": 1, "kind": "strict"}],
            "edges": [{"a": "C", "b": "S", "count": 3}]}"#,
    )
    .unwrap();
    let out = quotkit(&["backward", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let report = dir.join("r.txt");
    let out = quotkit(&["--format", "text", "--out", report.to_str().unwrap(), "ineq"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&report).unwrap().contains("[PASS] ineq/main"));
    std::fs::remove_dir_all(&dir).ok();
}
