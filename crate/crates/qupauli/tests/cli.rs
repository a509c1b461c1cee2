// Copyright 2026 the qupauli authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! End-to-end tests of the command-line interface: exit codes, JSON
//! determinism, and round-tripping of printed values.

use std::io::Write as _;

use qupauli::cli::run_captured;
use qupauli::pauli::parse_pauli;
use qupauli::zmatrix::ExactMatrix;
use qupauli::zring::Dimension;
use serde_json::Value;

fn tmp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

fn run_json(argv: &[&str]) -> (i32, Value) {
    let (code, out, _err) = run_captured(argv);
    let v: Value = serde_json::from_str(out.trim()).expect("stdout is JSON");
    (code, v)
}

#[test]
fn max_set_d6_has_twelve_verified_paulis() {
    let (code, v) = run_json(&["qupauli", "max-set", "--d", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 12);
    assert_eq!(v["verification"], "ok");
    // Round-trip: every printed Pauli re-parses.
    let dim = Dimension::new(6).unwrap();
    for p in v["set"].as_array().unwrap() {
        parse_pauli(p.as_str().unwrap(), &dim, 1).unwrap();
    }
}

#[test]
fn achieve_d15_matches_prescribed_commutators() {
    let (code, v) = run_json(&["qupauli", "achieve", "--d", "15", "-f", "3,5"]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 1);
    assert_eq!(v["commutators"], serde_json::json!([3, 5]));
    assert_eq!(v["verification"], "ok");
}

#[test]
fn snf_on_garbage_is_parse_error_exit_2() {
    let f = tmp_file("this is not a matrix\n");
    let (code, v) = run_json(&["qupauli", "snf", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "ParseError");
    assert!(v["message"].as_str().unwrap().contains("position"));
}

#[test]
fn unknown_subcommand_is_usage_exit_2() {
    let (code, out, err) = run_captured(&["qupauli", "frobnicate"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("Usage") || err.contains("unrecognized"));
}

#[test]
fn domain_error_is_exit_1_with_error_name() {
    // A zero commutator entry cannot label a non-commuting pair.
    let (code, v) = run_json(&["qupauli", "achieve", "--d", "4", "-f", "1,4"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "InvalidRelation");
    // A non-alternating matrix has no alternating normal form.
    let f = tmp_file("2 2 Z6\n1 2\n3 4\n");
    let (code, v) = run_json(&["qupauli", "asnf", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "NotAlternating");
}

#[test]
fn snf_witnesses_round_trip_and_verify() {
    let f = tmp_file("2 3 Z\n4 6 8\n2 0 2\n");
    let (code, v) = run_json(&["qupauli", "snf", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verification"], "ok");
    for key in ["d", "left", "right", "input"] {
        ExactMatrix::parse_text(v[key].as_str().unwrap()).unwrap();
    }
    assert_eq!(v["invariant_factors"], serde_json::json!(["2", "2"]));
}

#[test]
fn hnf_and_solve_work_over_zd() {
    let f = tmp_file("2 2 Z6\n2 4\n0 3\n");
    let (code, v) = run_json(&["qupauli", "hnf", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verification"], "ok");

    let f = tmp_file("2 2 Z6\n2 4\n0 3\n\n2 1 Z6\n0\n3\n");
    let (code, v) = run_json(&["qupauli", "solve", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "solved");

    let f = tmp_file("1 1 Z6\n2\n\n1 1 Z6\n1\n");
    let (code, v) = run_json(&["qupauli", "solve", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "no-solution");
}

#[test]
fn realize_reports_minimal_qudits() {
    let f = tmp_file("2 2 Z15\n0 3\n12 0\n");
    let (code, v) = run_json(&[
        "qupauli",
        "realize",
        "--matrix",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 1);
    assert_eq!(v["verification"], "ok");
}

#[test]
fn group_pipeline_subcommands_agree() {
    let f = tmp_file("w1 X6Z0\n");
    let path = f.path().to_str().unwrap().to_string();
    let (code, v) = run_json(&["qupauli", "identity-gen", "--d", "10", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["mu"], 5);
    let (code, v) = run_json(&["qupauli", "group-order", "--d", "10", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], "10");
    let (code, v) = run_json(&["qupauli", "oracle", "enumerate", "--d", "10", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 10);
}

#[test]
fn verify_pairs_and_set_report_ok_and_witness() {
    let f = tmp_file("w0 X1Z0\n\nw0 X0Z1\n");
    let (code, v) = run_json(&[
        "qupauli",
        "verify-pairs",
        "--d",
        "5",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);

    let f = tmp_file("w0 X1Z0\nw0 X2Z0\n");
    let (code, v) = run_json(&[
        "qupauli",
        "verify-set",
        "--d",
        "5",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], false);
    assert_eq!(v["commuting_pair"], serde_json::json!([0, 1]));
}

#[test]
fn jw_compose_infers_mixed_qudit_counts() {
    let f = tmp_file("w0 X0Z1\nw0 X1Z0\nw0 X1Z1\n\nw0 X0Z1\nw0 X1Z0\nw0 X1Z1\n");
    let (code, v) = run_json(&[
        "qupauli",
        "jw-compose",
        "--d",
        "2",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 2);
    assert_eq!(v["size"], 5); // (Ψ(2)−1)·2 + 1
    assert_eq!(v["verification"], "ok");
}

#[test]
fn oracle_clique_and_max_pairs_values() {
    let (code, v) = run_json(&["qupauli", "oracle", "clique", "--d", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["max_clique"], 12);
    let (code, v) = run_json(&["qupauli", "oracle", "max-pairs", "--d", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["max_pairs"], 2);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let (_, out1, _) = run_captured(&["qupauli", "max-set", "--d", "12"]);
    let (_, out2, _) = run_captured(&["qupauli", "max-set", "--d", "12"]);
    assert_eq!(out1, out2);
}

#[test]
fn pretty_mode_is_human_text() {
    let (code, out, _) = run_captured(&["qupauli", "max-set", "--d", "2", "--pretty"]);
    assert_eq!(code, 0);
    assert!(out.contains("verification: ok"));
    assert!(serde_json::from_str::<Value>(&out).is_err());
}

#[test]
fn missing_d_is_parse_error() {
    let (code, v) = run_json(&["qupauli", "max-set"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "ParseError");
}
