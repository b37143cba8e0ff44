use std::process::{Command, Output};
use std::time::{Duration, Instant};

use asymdouble_cli::document::GraphDocument;
use asymdouble_cli::fixtures;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asymdouble"))
        .args(args)
        .env_remove("ASYMDOUBLE_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["fields", "--algebra", "su2", "--level", "0"]).status.code(), Some(1));
    assert_eq!(run(&["smatrix", "--algebra", "su2", "--level", "3", "--format", "dot"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--tamper"]).status.code(), Some(2));
}

#[test]
fn quick_suite_is_fast() {
    let start = Instant::now();
    let out = run(&["verify", "--suite", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(start.elapsed() < Duration::from_secs(5));
}

#[test]
fn tampered_run_names_first_failure() {
    let text = String::from_utf8(run(&["verify", "--tamper"]).stdout).unwrap();
    assert!(text.contains("first failure"), "{text}");
    assert!(text.contains("FAIL"));
}

#[test]
fn counts_su3_6() {
    assert_eq!(stdout(&["counts", "--algebra", "su3", "--level", "6"]).trim(), "90");
}

#[test]
fn fusion_adjoint_squared() {
    let text = stdout(&["fusion", "--algebra", "su3", "--level", "3", "--a", "1,1", "--b", "1,1"]);
    assert!(text.contains("(1,1):2"), "{text}");
    assert!(text.contains("(3,0):1"), "{text}");
}

#[test]
fn split_labels_in_dot() {
    let text = stdout(&["dual-graph", "--algebra", "su2", "--level", "4", "--format", "dot"]);
    assert!(text.contains("\"22+\""), "{text}");
    assert!(text.contains("\"22\u{2212}\""), "{text}");
}

#[test]
fn su2_6_dot_matches_golden() {
    let text = stdout(&["dual-graph", "--algebra", "su2", "--level", "6", "--format", "dot"]);
    assert_eq!(text, fixtures::SU2_6_DUAL_DOT);
}

#[test]
fn json_round_trip_is_byte_identical() {
    for (alg, level) in [("su2", "6"), ("su3", "3"), ("su3", "6")] {
        let text = stdout(&["dual-graph", "--algebra", alg, "--level", level, "--format", "json"]);
        let doc = GraphDocument::from_json(&text).unwrap();
        assert_eq!(doc.to_json().unwrap(), text, "{alg} {level}");
    }
}

#[test]
fn dual_equals_principal_when_not_divisible() {
    let p = stdout(&["principal-graph", "--algebra", "su2", "--level", "5", "--format", "json"]);
    let d = stdout(&["dual-graph", "--algebra", "su2", "--level", "5", "--format", "json"]);
    let mut p = GraphDocument::from_json(&p).unwrap();
    let d = GraphDocument::from_json(&d).unwrap();
    assert_eq!(p.kind, "principal");
    assert_eq!(d.kind, "dual");
    p.kind = d.kind.clone();
    assert_eq!(p, d);
}

#[test]
fn su3_3_document_shape() {
    let text = stdout(&["dual-graph", "--algebra", "su3", "--level", "3", "--format", "json"]);
    let doc = GraphDocument::from_json(&text).unwrap();
    assert_eq!(doc.even.len(), 14);
    assert_eq!(doc.odd.len(), 4);
    assert_eq!(doc.even.iter().filter(|v| v.split.is_some()).count(), 3);
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_asymdouble"))
        .args(["dual-graph", "--algebra", "su2", "--level", "4", "--format", "json"])
        .env("ASYMDOUBLE_TOLERANCE", "1e-9")
        .output()
        .unwrap();
    let doc = GraphDocument::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(doc.provenance.tolerance, 1e-9);

    let out = Command::new(env!("CARGO_BIN_EXE_asymdouble"))
        .args(["dual-graph", "--algebra", "su2", "--level", "4", "--format", "json", "--tolerance", "1e-8"])
        .env("ASYMDOUBLE_TOLERANCE", "1e-9")
        .output()
        .unwrap();
    let doc = GraphDocument::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(doc.provenance.tolerance, 1e-8);
}

#[test]
fn altered_fixture_is_detected() {
    let mut fix = fixtures::graph_fixture(fixtures::SU2_4_DUAL).unwrap();
    let w = asymdouble_core::Wzw::new(asymdouble_core::Model::new(2, 4).unwrap(), 1e-6).unwrap();
    let g = asymdouble_core::doublegraph::dual_graph(&w).unwrap();
    assert!(fixtures::compare_graph(&fix, &g, 1e-6).unwrap().is_empty());
    fix.edges[0].multiplicity += 1;
    assert!(!fixtures::compare_graph(&fix, &g, 1e-6).unwrap().is_empty());
}
