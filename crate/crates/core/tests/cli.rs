use std::process::Command;

use kturan::cli::{cmd_bounds, cmd_envelope, cmd_er, cmd_search, cmd_tau, cmd_verify, GraphFormat};
use kturan::report::RunReport;
use kturan::{DetEngine, Error, Forbidden};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kturan"))
}

fn result<'a>(r: &'a RunReport, key: &str) -> &'a Value {
    r.get(key).unwrap_or_else(|| panic!("missing {key}"))
}

#[test]
fn er_writes_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("er2.txt");
    cmd_er(2, Some(&edges), GraphFormat::Edgelist, 32).unwrap();
    let text = std::fs::read_to_string(&edges).unwrap();
    assert_eq!(text.lines().next(), Some("7 9"));
    assert_eq!(text.lines().count(), 10);

    let g6 = dir.path().join("er3.g6");
    let out = cmd_er(3, Some(&g6), GraphFormat::Graph6, 32).unwrap();
    assert_eq!(result(&out.report, "m"), &Value::from(24));
    let back = kturan::graph::io::from_graph6(std::fs::read_to_string(&g6).unwrap().trim()).unwrap();
    assert_eq!(back, kturan::er_graph(3).unwrap().simple_graph);
}

#[test]
fn er_rejects_bad_q() {
    assert!(matches!(cmd_er(6, None, GraphFormat::Edgelist, 32), Err(Error::NotAPrimePower(6))));
    assert!(cmd_er(37, None, GraphFormat::Edgelist, 32).is_err());
    assert!(cmd_er(37, None, GraphFormat::Edgelist, 40).is_ok());
}

#[test]
fn tau_from_files_and_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("er2.txt");
    cmd_er(2, Some(&path), GraphFormat::Edgelist, 32).unwrap();
    let out = cmd_tau(Some(&path), None, None, None, 32, 1).unwrap();
    assert_eq!(result(&out.report, "tau"), "49");

    let g6 = dir.path().join("petersen.g6");
    std::fs::write(&g6, "IheA@GUAo\n").unwrap();
    let out = cmd_tau(Some(&g6), None, None, None, 32, 1).unwrap();
    assert_eq!(result(&out.report, "tau"), "2000");

    let out = cmd_tau(None, Some(3), None, None, 32, 1).unwrap();
    assert_eq!(result(&out.report, "tau"), "371293");
    assert_eq!(result(&out.report, "verdict"), "EQUAL");
    assert_eq!(out.exit_code, 0);

    let out = cmd_tau(None, Some(5), Some(DetEngine::Crt), None, 32, 2).unwrap();
    assert_eq!(result(&out.report, "engine"), "crt");
    assert_eq!(result(&out.report, "verdict"), "EQUAL");
}

#[test]
fn tau_reports_parse_errors_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "3 2\n0 1\n0 9\n").unwrap();
    match cmd_tau(Some(&path), None, None, None, 32, 1) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn verify_passes_for_prime_powers() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let out = cmd_verify(q, 32, 1).unwrap();
        assert_eq!(out.exit_code, 0, "q={q}");
        assert_eq!(result(&out.report, "all_pass"), &Value::Bool(true));
        let checks = result(&out.report, "checks").as_array().unwrap();
        assert!(checks.len() >= 10 && checks.iter().all(|c| c["pass"] == Value::Bool(true)));
    }
}

#[test]
fn bounds_enforce_the_hypothesis() {
    assert!(matches!(cmd_bounds(5, None, 128, false), Err(Error::HypothesisViolated(_))));
    let out = cmd_bounds(5, None, 128, true).unwrap();
    assert!(result(&out.report, "banner").as_str().unwrap().contains("not satisfied"));
    assert_eq!(result(&out.report, "hypothesis_satisfied"), &Value::Bool(false));

    let out = cmd_bounds(17, Some(0), 128, false).unwrap();
    assert_eq!(result(&out.report, "n"), &Value::from(307));
    assert_eq!(result(&out.report, "c4_bound_matches_envelope"), &Value::Bool(true));
    assert_eq!(result(&out.report, "lower_le_upper"), &Value::Bool(true));
    let lower = result(&out.report, "log_lower").as_str().unwrap();
    assert!(lower.starts_with("870.480857633253967346966"), "{lower}");
    assert_eq!(out.report.results["deficit_bound"]["deficit_exponent"], "0");
    assert!(cmd_bounds(17, Some(145), 128, false).is_err());
}

#[test]
fn envelope_presets() {
    let out = cmd_envelope(7, Some(9), None, None, "0").unwrap();
    assert_eq!(result(&out.report, "bound"), "6912/49");
    let out = cmd_envelope(7, Some(0), None, None, "0").unwrap();
    assert_eq!(result(&out.report, "bound"), "1/49");

    let out = cmd_envelope(100, None, Some(2), None, "0").unwrap();
    assert_eq!(result(&out.report, "edge_budget"), &Value::from(500));
    let out = cmd_envelope(100, None, Some(2), None, "1/2").unwrap();
    assert_eq!(result(&out.report, "edge_budget"), &Value::from(550));
    let out = cmd_envelope(64, None, None, Some((3, "1".into())), "0").unwrap();
    assert_eq!(result(&out.report, "edge_budget"), &Value::from(256));
    assert!(cmd_envelope(7, None, None, None, "0").is_err());
    assert!(cmd_envelope(7, Some(3), None, None, "abc").is_err());
}

#[test]
fn search_reports_polarity_comparison() {
    let out = cmd_search(7, Forbidden::C4, true, 2).unwrap();
    assert_eq!(result(&out.report, "polarity_q"), &Value::from(2));
    assert_eq!(result(&out.report, "polarity_tau"), "49");
    let max: u64 = result(&out.report, "max_tau").as_str().unwrap().parse().unwrap();
    assert!(max >= 49);
    let out = cmd_search(6, Forbidden::C3, false, 1).unwrap();
    assert_eq!(result(&out.report, "bipartite_tau"), "81");
    assert!(matches!(cmd_search(9, Forbidden::C4, false, 1), Err(Error::InstanceTooLarge { .. })));
}

#[test]
fn json_reports_round_trip() {
    let out = cmd_verify(3, 32, 1).unwrap();
    let text = out.render(true);
    let back = RunReport::from_json(&text).unwrap();
    assert_eq!(back, out.report);
    assert_eq!(back.command, "verify");
    assert!(back.timings.contains_key("tau"));
}

#[test]
fn binary_exit_codes() {
    let ok = bin().args(["--json", "tau", "--er", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let report = RunReport::from_json(&String::from_utf8(ok.stdout).unwrap()).unwrap();
    assert_eq!(report.results["tau"], "371293");

    let bad = bin().args(["--json", "er", "6"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert!(doc["error"].as_str().unwrap().contains("prime power"));

    let usage = bin().args(["search"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));

    let verify = bin().args(["verify", "4"]).output().unwrap();
    assert_eq!(verify.status.code(), Some(0));
    assert!(String::from_utf8(verify.stdout).unwrap().contains("[PASS] spectral_identity"));

    let hyp = bin().args(["bounds", "7"]).output().unwrap();
    assert_eq!(hyp.status.code(), Some(2));
    let unchecked = bin().args(["--unchecked", "bounds", "7"]).output().unwrap();
    assert_eq!(unchecked.status.code(), Some(0));
}
