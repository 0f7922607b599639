use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flat-affine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn validator() -> jsonschema::Validator {
    let text = include_str!("../schema/verification_report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(out: &Output) -> Value {
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    doc
}

#[test]
fn verify_output_matches_schema() {
    for args in [
        &["verify", "lsa", "P3"][..],
        &["verify", "lsa", "F1", "--alpha", "2"],
        &["verify", "devmap", "D6"],
        &["verify", "rep", "rho2"],
        &["verify", "stabilizer", "orthant:1", "--n", "3"],
    ] {
        let out = run(args);
        let doc = assert_valid(&out);
        assert!(!doc.as_array().unwrap().is_empty(), "{args:?}");
    }
}

#[test]
fn report_document_matches_schema() {
    let out = run(&["report", "all", "--allow-errata"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = assert_valid(&out);
    let s = &doc["summary"];
    assert_eq!(s["known_errata_count"], 2);
    assert_eq!(s["unexpected_failures"], 0);
    assert_eq!(
        doc["reports"].as_array().unwrap().len() as u64,
        s["total"].as_u64().unwrap()
    );
}

#[test]
fn schema_rejects_malformed_reports() {
    let v = validator();
    let bad = serde_json::json!([{ "check": "x", "status": "maybe", "residual": 0.0 }]);
    assert!(!v.is_valid(&bad));
}

#[test]
fn csv_has_one_row_per_report() {
    let json = run(&["verify", "devmap", "D5"]);
    let csv = run(&["verify", "devmap", "D5", "--format", "csv"]);
    let reports: Value = serde_json::from_slice(&json.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(&csv.stdout[..]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), reports.as_array().unwrap().len());
    assert_eq!(reader.headers().unwrap().get(0), Some("check"));
}

#[test]
fn trace_is_a_csv_path() {
    let out = run(&[
        "trace", "geodesic", "--gamma", "P5", "--x0", "0.3,-0.2", "--u0", "0.8,0.1", "--t", "0.5", "--steps", "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["t", "x1", "x2", "Dx1", "Dx2"]
    );
    let rows: Vec<Vec<f64>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 51);
    let last = rows.last().unwrap();
    assert!((last[1] - ((1.0f64 + 0.8 * 0.5).ln() + 0.3)).abs() < 1e-6);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "lsa", "Q9"][..],
        &["verify", "stabilizer", "orthant:4", "--n", "3"],
        &[
            "trace", "geodesic", "--gamma", "P1", "--x0", "1", "--u0", "1,1", "--t", "1",
        ],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
