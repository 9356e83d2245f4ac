use std::process::{Command, Output};

use serde_json::Value;

fn algvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algvol")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON document")
}

#[test]
fn field_descriptions() {
    let out = algvol(&["field", "--cyclotomic", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], "1.0");
    assert_eq!(doc["result"]["degree"], 3);
    assert_eq!(doc["result"]["totally_real"], true);

    let doc = json(&algvol(&["field", "--quadratic", "2"]));
    assert_eq!(doc["result"]["defining_poly"]["text"], "x^2-2");

    let out = algvol(&["field", "--minpoly", "x^2+1", "--require-totally-real"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"]["message"].as_str().unwrap().contains("totally real"));
}

#[test]
fn quadratic_volume_document() {
    let out = algvol(&["volume", "--quadratic", "2", "--alpha", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["volume"]["min_poly"], serde_json::json!(["-16", "24", "9"]));
    assert!(r["numeric_value"].as_str().unwrap().starts_with("0.552284"));
    assert_eq!(r["ambient_dimension"], 3);
    assert_eq!(r["input"]["t0"], 2);
}

#[test]
fn rational_volume_document() {
    let out = algvol(&["volume", "--minpoly", "x-2", "--alpha", "2", "--t0", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["volume"]["min_poly"], serde_json::json!(["-1", "2"]));
    assert_eq!(r["volume"]["isolating"], serde_json::json!(["1/2", "1/2"]));
}

#[test]
fn auto_search_and_search_command() {
    let out = algvol(&["volume", "--cyclotomic", "7", "--auto-search", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["volume_degree"], 3);
    assert!(r["search"]["lambda"].is_array());

    let out = algvol(&["search", "--quadratic", "2", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["search"]["lambda"], serde_json::json!([0, 1]));
    assert_eq!(r["search"]["certificate_det"], "-4/3");
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        vec!["volume", "--quadratic", "2", "--alpha", "1,0"],
        vec!["volume", "--quadratic", "2", "--alpha", "0,1", "--t0", "1"],
        vec!["volume", "--quadratic", "4", "--alpha", "0,1"],
        vec!["volume", "--quadratic", "2", "--alpha", "0,1,2"],
        vec!["volume", "--quadratic", "2", "--alpha", "0,1", "--normalization", "weird"],
        vec!["pi-demo", "--N", "0"],
        vec!["kunneth", "--pq", "3", "7"],
        vec!["kunneth", "/nonexistent/a.json", "/nonexistent/b.json"],
        vec!["volume", "--quadratic", "2"],
        vec!["volume", "--bogus"],
    ] {
        let out = algvol(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_runs_oracle_and_scaling() {
    let out = algvol(&["verify", "--quadratic", "2", "--alpha", "0,1", "--kmax", "4096", "--scale-check", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["convergence"]["verdict"], "pass");
    assert!(r["convergence"]["final_residual"].as_f64().unwrap() < 1e-4);
    assert_eq!(r["scaling"]["holds"], true);
    assert_eq!(r["scaling"]["factor"], "8/1");

    let out = algvol(&["verify", "--minpoly", "x-2", "--alpha", "2", "--t0", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["convergence"]["verdict"], "pass");

    let out = algvol(&["verify", "--quadratic", "2", "--alpha", "0,1", "--threshold", "1e-12"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn kunneth_from_stored_documents() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, algvol(&["volume", "--quadratic", "2", "--alpha", "0,1"]).stdout).unwrap();
    std::fs::write(&b, algvol(&["volume", "--cyclotomic", "7", "--alpha", "0,1"]).stdout).unwrap();
    let out = algvol(&["kunneth", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["volume_degree"], 6);
    assert_eq!(r["ambient_dimension"], 7);

    std::fs::write(&b, "{not json").unwrap();
    let out = algvol(&["kunneth", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pq_product_document() {
    let out = algvol(&["kunneth", "--pq", "3", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["volume_degree"], 15);
    assert_eq!(r["ambient_dimension"], 10);
}

#[test]
fn pi_demo_document() {
    let out = algvol(&["pi-demo", "--N", "1", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let r = &doc["result"];
    assert!(r["value_over_3N"].is_number());
    assert!((r["disk_form"]["value_over_3N"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-6);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["volume", "--cyclotomic", "15", "--auto-search", "3"],
        vec!["pi-demo", "--N", "2"],
        vec!["verify", "--quadratic", "3", "--auto-search", "2", "--kmax", "256"],
    ] {
        let first = algvol(&args);
        let second = algvol(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
