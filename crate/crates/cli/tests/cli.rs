use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> (Output, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_reesdual")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, json)
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_owned()
}

fn polys(report: &Value) -> Vec<String> {
    report["generators"].as_array().unwrap().iter().map(|g| g["poly"].as_str().unwrap().to_owned()).collect()
}

#[test]
fn hypotheses_pass_on_the_worked_example() {
    let (out, report) = run(&["hypotheses", &path("worked_example.toml")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["hypotheses"]["passed"], true);
    assert_eq!(report["hypotheses"]["scope"], "in scope");
}

#[test]
fn malformed_polynomial_is_a_parse_error() {
    let (out, report) = run(&["hypotheses", &path("malformed.toml")]);
    assert_eq!(out.status.code(), Some(2));
    let msg = report["error"]["message"].as_str().unwrap();
    assert!(msg.contains("psi[2][2]") && msg.contains("line 8"), "{msg}");
}

#[test]
fn too_few_generators_is_linear_type() {
    let (out, report) = run(&["hypotheses", &path("linear_type.toml")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report["hypotheses"]["scope"], "linear type");
}

#[test]
fn iterate_reproduces_the_worked_example() {
    let (out, report) = run(&["iterate", &path("worked_example.toml")]);
    assert_eq!(out.status.code(), Some(0));
    let gens = report["generators"].as_array().unwrap();
    let labels: Vec<&str> = gens.iter().map(|g| g["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["ℓ_1", "ℓ_2", "f", "F_1", "F_2", "F_3"]);
    assert_eq!(gens[5]["bidegree"], serde_json::json!([0, 6]));
    assert_eq!(report["fiber"]["degree"], 6);
    assert!(report.get("timing_ms").is_none());
}

#[test]
fn matrix_method_verifies() {
    let (out, report) = run(&["iterate", &path("worked_example.toml"), "--method", "matrix", "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report["verification"]["equal_to_saturation"], true);
    assert_eq!(report["verification"]["equal_to_mjd"], true);
}

#[test]
fn diffop_is_refused_in_characteristic_two() {
    let (out, report) = run(&["iterate", &path("worked_example_f2.toml"), "--method", "diffop"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report["error"]["message"].as_str().unwrap().contains("characteristic"));
}

#[test]
fn verify_reports_index_and_catches_injection() {
    let (out, report) = run(&["verify", &path("worked_example.toml")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["verification"]["equal_to_saturation"], true);
    assert_eq!(report["verification"]["saturation_index"], 3);
    assert_eq!(report["verification"]["index_equals_m"], true);
    let (out, report) = run(&["verify", &path("worked_example.toml"), "--inject"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(report["verification"]["equal_to_saturation"], false);
}

#[test]
fn rank_one_bourbaki_matches_the_ideal_pipeline() {
    let (_, ideal) = run(&["iterate", &path("worked_example.toml")]);
    let (out, module) = run(&["bourbaki", &path("rank_one_module.toml"), "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(polys(&ideal), polys(&module));
    assert_eq!(module["bourbaki"]["cross_check"], true);
}

#[test]
fn random_module_round_trip_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("module.toml");
    let file = file.to_str().unwrap();
    let (out, _) = run(&["random", "--d", "2", "--m", "2", "--e", "2", "--seed", "1", "--out", file]);
    assert_eq!(out.status.code(), Some(0));
    let (first, a) = run(&["bourbaki", file, "--seed", "5"]);
    let (second, _) = run(&["bourbaki", file, "--seed", "5"]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(a["bourbaki"]["y_forms"].as_array().unwrap().len(), 1);
    assert_eq!(a["fiber"]["degree"], 4);
}

#[test]
fn json_instances_load() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ideal.json");
    let (_, report) = run(&["random", "--d", "2", "--m", "1", "--seed", "0"]);
    std::fs::write(&file, report["instance"].to_string()).unwrap();
    let (out, report) = run(&["iterate", file.to_str().unwrap(), "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["generators"].as_array().unwrap().len(), 4);
    assert!(report["timing_ms"].is_number());
}
