use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordstate")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn eval_single_chord() {
    let out = run(&["eval", "2: (1,2)", "--label", "std,std", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], "3");
    assert_eq!(v["poly"], serde_json::json!(["0", "1"]));
}

#[test]
fn eval_identity_is_dimension() {
    let out = run(&["eval", "2:", "--label", "sym:2,sym:2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], "9");
}

#[test]
fn eval_reports_parse_position() {
    let out = run(&["eval", "3: (1,2)(1,3)(2,3)(3,4)", "--n", "3"]);
    assert_ne!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1, column"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn eval_diagram_round_trips() {
    let out = run(&["eval", "3:(2,1)  (3,1)", "--n", "2"]);
    let printed = json(&out)["diagram"].as_str().unwrap().to_owned();
    let again = run(&["eval", &printed, "--n", "2"]);
    assert_eq!(json(&again)["diagram"], printed);
}

#[test]
fn eval_zero_dimensional_label() {
    let out = run(&["eval", "1:", "--label", "ext:3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], "0");
    assert_eq!(v["zero_dimensional"], true);
    let strict = run(&["eval", "1:", "--label", "ext:3", "--n", "2", "--strict"]);
    assert_ne!(strict.status.code(), Some(0));
}

#[test]
fn verify_standard_labelling() {
    let out = run(&["verify", "--strands", "2", "--depth", "2", "--label", "std,std", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["psd"], true);
    assert_eq!(v["certificate"], true);
}

#[test]
fn verify_exterior_labelling() {
    let out = run(&["verify", "--strands", "2", "--depth", "1", "--label", "ext:2,ext:2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["psd"], true);
}

#[test]
fn verify_exploratory_labelling_makes_no_claim() {
    let out = run(&["verify", "--strands", "2", "--depth", "1", "--label", "part:[2,1],std", "--n", "3"]);
    let v = json(&out);
    assert_eq!(v["certificate"], false);
    assert!(!out.stderr.is_empty());
}

#[test]
fn oracle_agrees() {
    let out = run(&["oracle", "--strands", "2", "--depth", "2", "--label", "std,std", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["words"], 3);
    assert_eq!(v["equal"], 3);
    let out = run(&["oracle", "--strands", "2", "--depth", "1", "--label", "sym:2,sym:2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn basis_guard_and_override() {
    let args = ["gram", "--strands", "4", "--depth", "4", "--n", "2"];
    let out = run(&args);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("512"));

    let raised = run(&["--max-basis", "100000", "gram", "--strands", "2", "--depth", "1", "--n", "2"]);
    assert_ne!(raised.status.code(), Some(0), "raising a limit needs --unsafe-limits");
    let ok = run(&["--max-basis", "100000", "--unsafe-limits", "gram", "--strands", "2", "--depth", "1", "--n", "2"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn oracle_dimension_guard() {
    let out = run(&["--max-oracle-dim", "8", "oracle", "--strands", "2", "--depth", "1", "--n", "3"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn config_file_lowers_limits() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("limits.conf");
    std::fs::write(&cfg, "# tighter\nmax_basis = 2\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "gram", "--strands", "2", "--depth", "2", "--n", "2"]);
    assert_ne!(out.status.code(), Some(0));
    let out = run(&["--config", cfg.to_str().unwrap(), "gram", "--strands", "2", "--depth", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_files() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("report.json");
    let csv_path = dir.path().join("matrix.csv");
    let out = run(&[
        "verify", "--strands", "2", "--depth", "1", "--n", "2",
        "--output", json_path.to_str().unwrap(),
        "--csv", csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report["psd"], true);
    assert_eq!(std::fs::read_to_string(&csv_path).unwrap().trim(), "4,2\n2,4");
}
