use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclo-rr")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

const B_MU2: &str = r#"{"group":{"cyclic_factors":[2]},"points":1,"action":{"0":[0]}}"#;

#[test]
fn decompose_z4() {
    let v = run_json(&["decompose", "--input", r#"{"cyclic_factors":[4]}"#]);
    let orders: Vec<u64> = v["factors"].as_array().unwrap().iter().map(|f| f["sigma_order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![1, 2, 4]);
    assert_eq!(v["factors"][2]["field_degree"], json!(2));
}

#[test]
fn mackey_s3_transposition() {
    let input = r#"{"group":{"degree":3,"generators":[[1,0,2],[1,2,0]]},"generator":[1,0,2]}"#;
    let v = run_json(&["mackey", "--input", input]);
    assert_eq!(v["matrix"], json!([["2", "1"], ["1", "2"]]));
    assert_eq!(v["basis"], json!(["1", "t"]));
}

#[test]
fn verify_trace_lemma_passes() {
    let v = run_json(&["verify", "--suite", "trace-lemma", "--max-n", "12"]);
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["failures"], json!(0));
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["pass"] == json!(true)));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "covariance", "--max-group-order", "4", "--max-set-size", "4", "--seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn unknown_suite_is_an_input_error() {
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn schema_errors_point_at_the_field() {
    let bad = r#"{"gset":{"group":{"cyclic_factors":[2]},"points":1,"action":{"0":[1]}},"class":{}}"#;
    let out = run(&["lrr", "--input", bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/gset"));

    let out = run(&["lrr", "--input", &format!(r#"{{"gset":{B_MU2},"class":{{"5":{{"coeffs":{{}}}}}}}}"#)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/class"));

    let out = run(&["homschemes", "--input", r#"{"r":"two","n":1}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/r"));
}

#[test]
fn missing_input_is_an_input_error() {
    assert_eq!(run(&["inertia"]).status.code(), Some(1));
    assert_eq!(run(&["inertia", "--input", "/no/such/file.json"]).status.code(), Some(1));
}

#[test]
fn lrr_then_inverse_roundtrips() {
    let class = json!({"0": {"coeffs": {"0": "3", "1": "-1/2"}}});
    let input = format!(r#"{{"gset":{B_MU2},"class":{class}}}"#);
    let w = run_json(&["lrr", "--input", &input]);
    let back = run_json(&["lrr-inverse", "--input", &format!(r#"{{"gset":{B_MU2},"twisted":{w}}}"#)]);
    assert_eq!(back, class);
}

#[test]
fn lrr_inverse_rejects_non_invariant_classes() {
    // B mu3: components h = 1, 2 must be Galois conjugate
    let bmu3 = r#"{"group":{"cyclic_factors":[3]},"points":1,"action":{"0":[0]}}"#;
    let twisted = json!({"components": [
        {"h": [0], "entries": {"0": {"d": 1, "coeffs": ["0"]}}},
        {"h": [1], "entries": {"0": {"d": 3, "coeffs": ["1", "0"]}}},
        {"h": [2], "entries": {"0": {"d": 3, "coeffs": ["0", "0"]}}}
    ]});
    let out = run(&["lrr-inverse", "--input", &format!(r#"{{"gset":{bmu3},"twisted":{twisted}}}"#)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rational_rr_worked_value() {
    let input = format!(r#"{{"gset":{B_MU2},"class":{{"0":{{"coeffs":{{"0":"1/2","1":"1/2"}}}}}}}}"#);
    let v = run_json(&["rational-rr", "--input", &input]);
    let values: Vec<&str> = v["values"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values, vec!["1", "0"]);
}

#[test]
fn normal_basis_for_three() {
    let v = run_json(&["normal-basis", "--input", r#"{"N":3}"#]);
    assert_eq!(v["x"]["3"], json!(["0", "-1"]));
    assert_eq!(v["x"]["1"], json!(["1"]));
}

#[test]
fn homschemes_counts() {
    let v = run_json(&["homschemes", "--input", r#"{"r":3,"n":4}"#]);
    assert_eq!(v["count"], json!(15));
    assert_eq!(v["expected_count"], json!(15));
    assert_eq!(v["mono_partition"], json!(true));
}

#[test]
fn comp_check_and_inertia() {
    let x = r#"{"group":{"cyclic_factors":[2,2]},"points":2,"action":{"0":[1,0],"1":[0,1]}}"#;
    let v = run_json(&["comp-check", "--input", x]);
    assert_eq!(v["pass"], json!(true));
    let v = run_json(&["inertia", "--input", x]);
    assert_eq!(v["k_dim"], v["invariant_dim"]);
}

#[test]
fn output_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("cyclo-rr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = run(&["decompose", "--input", r#"{"cyclic_factors":[3]}"#, "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failed_checks_exit_with_two() {
    assert_eq!(cyclo_rr_cli::CliError::CheckFailed(json!({})).exit_code(), 2);
    assert_eq!(cyclo_rr_cli::CliError::Input(String::new()).exit_code(), 1);
}
