use std::process::{Command, Output};

use serde_json::Value;

fn pbwdem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbwdem")).args(args).env_remove("PBWDEM_BUDGET_MS").output().expect("run pbwdem")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

#[test]
fn rootinfo_reports_the_special_permutation() {
    let out = pbwdem(&["--family", "A", "--rank", "3", "rootinfo"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["cases"][0]["tau_one_line"], serde_json::json!([1, 4, 2, 5, 3, 6]));
    for key in ["version", "config", "cases", "pass"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn rootinfo_symplectic_generating_roots() {
    let doc = json(&pbwdem(&["--family", "C", "--rank", "2", "rootinfo"]));
    assert_eq!(doc["cases"][0]["rpp"].as_array().unwrap().len(), 3);
    assert_eq!(doc["cases"][0]["root_types"].as_array().unwrap().len(), 16);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(pbwdem(&["--family", "A", "--rank", "1", "rootinfo"]).status.code(), Some(2));
    assert_eq!(pbwdem(&["--weights", "1,2", "verify"]).status.code(), Some(2));
    assert_eq!(pbwdem(&["--weights", "-1", "module"]).status.code(), Some(2));
    assert_eq!(pbwdem(&["--primes", "0,4", "verify"]).status.code(), Some(2));
    assert_eq!(pbwdem(&["--family", "B", "rootinfo"]).status.code(), Some(2));
    assert_eq!(pbwdem(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_defining_representation() {
    let out = pbwdem(&["--family", "A", "--rank", "2", "--weights", "1", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let case = &json(&out)["cases"][0];
    assert_eq!(case["ranks"], serde_json::json!({"weyl": 2, "graded": 2, "demazure": 2}));
    assert_eq!(case["pass"], true);
}

#[test]
fn verify_grid_checks_every_nonzero_weight() {
    let out = pbwdem(&["--family", "A", "--rank", "3", "--weights", "grid:maxsum=2", "--canonical", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let lambdas: Vec<Value> = doc["cases"].as_array().unwrap().iter().map(|c| c["lambda"].clone()).collect();
    assert_eq!(lambdas, serde_json::from_str::<Vec<Value>>("[[0,1],[0,2],[1,0],[1,1],[2,0]]").unwrap());
    assert_eq!(doc["pass"], true);
    assert!(doc["cases"][0].get("elapsed_ms").is_none());
}

#[test]
fn verify_symplectic_base_change() {
    let out = pbwdem(&["--family", "C", "--rank", "2", "--weights", "0,1", "--primes", "0,2,3", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let case = &json(&out)["cases"][0];
    for p in ["0", "2", "3"] {
        let total: u64 = case["mod_p_ranks"][p].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
        assert_eq!(total, 5, "p = {p}");
    }
}

#[test]
fn module_reports_graded_dims() {
    let case = &json(&pbwdem(&["module", "--family", "A", "--rank", "3", "--weights", "1,1"]))["cases"][0];
    assert_eq!(case["graded_dims"], serde_json::json!([1, 3, 4]));
    assert_eq!(case["weyl_rank"], 8);
    let case = &json(&pbwdem(&["module", "--weights", "0"]))["cases"][0];
    assert_eq!(case["weyl_rank"], 1);
    assert_eq!(case["graded_dims"], serde_json::json!([1]));
}

#[test]
fn demazure_rank_and_basis_dump() {
    let out = pbwdem(&["demazure", "--family", "A", "--rank", "2", "--weights", "1", "--dump-basis"]);
    let case = &json(&out)["cases"][0];
    assert_eq!(case["rank"], 2);
    assert_eq!(case["basis"].as_array().unwrap().len(), 2);
    assert_eq!(case["borel_stable"], true);
}

#[test]
fn ideal_slices_agree() {
    let out = pbwdem(&["ideal", "--family", "C", "--rank", "2", "--weights", "1,1", "--max-degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let case = &json(&out)["cases"][0];
    assert_eq!(case["ffl_equal"], true);
    assert_eq!(case["annihilator"].as_array().unwrap().len(), 6);
}

#[test]
fn budget_exhaustion_skips_cases() {
    let out = Command::new(env!("CARGO_BIN_EXE_pbwdem"))
        .args(["--family", "A", "--rank", "3", "--weights", "1,1", "verify"])
        .env("PBWDEM_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let case = &json(&out)["cases"][0];
    assert_eq!(case["status"], "skipped:budget");
    assert_eq!(case["pass"], false);
}

#[test]
fn csv_and_text_projections() {
    let out = pbwdem(&["--family", "A", "--rank", "3", "--weights", "1,0;0,1", "--format", "csv", "--canonical", "verify"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("lambda,"));
    assert_eq!(lines.count(), 2);
    let out = pbwdem(&["--family", "A", "--rank", "2", "--weights", "1", "--format", "text", "verify"]);
    assert!(String::from_utf8(out.stdout).unwrap().trim_end().ends_with("pass=true"));
}

#[test]
fn canonical_output_is_repeatable() {
    let args = ["--family", "C", "--rank", "2", "--weights", "grid:maxsum=2", "--canonical", "verify"];
    assert_eq!(pbwdem(&args).stdout, pbwdem(&args).stdout);
}
