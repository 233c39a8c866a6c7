use std::fs;
use std::path::Path;
use std::process::Command;

use krein_osc::oned::{build_op_1d, Op1DName};
use krein_osc_cli::{eval_1d, parse_operator_expr, run_command, Space};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("krein-osc").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const PSI1_0: &str = r#"{"space":"1d","terms":[{"exp":"-1","coeff":[{"j":0,"k":0,"q":"1"}]}]}"#;
const OMEGA_M32: &str = r#"{"space":"2d","renorm":"0","terms":[{"lam":"-3/2","lam_slope":0,"mu":"0","mu_slope":0,"coeff":[[{"j":0,"k":0,"q":"1"}]]}]}"#;

#[test]
fn inner_of_singular_ground_state() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "psi.json", PSI1_0);
    let (code, out, err) = run(&["inner", "--lhs", &f, "--rhs", &f]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "-1*pi^(1/2)");
}

#[test]
fn two_dimensional_inner_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "om.json", OMEGA_M32);
    let (code, out, err) = run(&["inner", "--lhs", &f, "--rhs", &f]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "-2*pi^(3/2)");
    let (code, out, _) = run(&["reduce", "--state", &f, "--charge", "3/2"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"exp\": \"-1/1\""), "{out}");
    let (code, _, err) = run(&["reduce", "--state", &f, "--charge", "1/2"]);
    assert_eq!(code, 1);
    assert!(err.contains("ChargeAbsent"), "{err}");
}

#[test]
fn fig1_dot_export_has_six_nodes_and_is_stable() {
    let (code, first, _) = run(&["export", "--format", "dot", "--seed", "fig1", "--depth", "2"]);
    assert_eq!(code, 0);
    assert_eq!(first.lines().filter(|l| l.contains("[label=\"(") && !l.contains("->")).count(), 6);
    let (_, second, _) = run(&["export", "--format", "dot", "--seed", "fig1", "--depth", "2"]);
    assert_eq!(first, second);
}

#[test]
fn sector_file_round_trip_through_export() {
    let dir = tempfile::tempdir().unwrap();
    let sector = dir.path().join("fig2.json");
    let s = sector.to_str().unwrap();
    assert_eq!(run(&["sector", "--seed", "fig2", "--depth", "2", "--out", s]).0, 0);
    let (code, csv, _) = run(&["export", "--format", "csv", "--sector", s]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("record,id,level,energy,charge,from,generator,to,coeff\n"));
    let (code, json, _) = run(&["export", "--format", "json", "--sector", s]);
    assert_eq!(code, 0);
    assert_eq!(json, fs::read_to_string(&sector).unwrap());
    let (code, _, _) = run(&["gram", "--sector", s, "--charge", "-1/2"]);
    assert_eq!(code, 0);
}

#[test]
fn audit_reports_known_failures() {
    let (code, out, _) = run(&["audit", "--n-max", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let ids = v["identities"].as_array().unwrap();
    let status = |id: &str| ids.iter().find(|e| e["identity_id"] == id).map(|e| e["status"].as_str().unwrap().to_string());
    assert_eq!(status("hamiltonian_b_form").as_deref(), Some("FAIL"));
    assert_eq!(status("hamiltonian_b_form:corrected").as_deref(), Some("PASS"));
    assert!(v["bridge"].as_array().unwrap().iter().all(|e| e["status"] == "PASS"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["spectrum", "--alpha", "abc", "--n", "1"]).0, 2);
    // alpha = 3 has no ladder: a domain error.
    let (code, _, err) = run(&["spectrum", "--alpha", "3", "--n", "1"]);
    assert_eq!(code, 1, "{err}");
    assert!(serde_json::from_str::<serde_json::Value>(err.trim()).is_ok());
    assert_eq!(run(&["sector", "--seed", "fig1", "--depth", "40"]).0, 1);
    assert_eq!(run(&["export", "--format", "svg", "--seed", "fig1"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "om.json", OMEGA_M32);
    let (code, _, err) = run(&["eval", "--expr", "b++ +", "--state", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("SyntaxError"), "{err}");
    let (code, _, err) = run(&["eval", "--expr", "A+", "--state", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("UnknownName"), "{err}");
}

#[test]
fn eval_applies_expression() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "psi.json", PSI1_0);
    let (code, out, _) = run(&["eval", "--expr", "H1 - (-1/2)", "--state", &f]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["terms"].as_array().unwrap().is_empty(), "{out}");
}

#[test]
fn product_of_first_order_ladders_is_a_plus() {
    let got = eval_1d(&parse_operator_expr("a+@-2 a+@2", Space::OneD).unwrap()).unwrap();
    assert_eq!(got, build_op_1d(Op1DName::LadderUp, None).unwrap());
}

#[test]
fn depth_limit_from_environment() {
    let bin = env!("CARGO_BIN_EXE_krein-osc");
    let ok = Command::new(bin).args(["spectrum", "--alpha", "1", "--n", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let capped = Command::new(bin).env("KREIN_OSC_DEPTH_LIMIT", "2").args(["spectrum", "--alpha", "1", "--n", "3"]).output().unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("DepthExceeded"));
    let again = Command::new(bin).args(["spectrum", "--alpha", "1", "--n", "3"]).output().unwrap();
    assert_eq!(ok.stdout, again.stdout);
}
