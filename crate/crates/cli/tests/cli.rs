use std::path::Path;

use kscolor::enumeration::enumerate_projections;
use kscolor::partial_boolean::{bijection_triple, PartialBooleanAlgebra};
use kscolor::solver::parse_dimacs;
use kscolor_cli::report::sha256_hex;
use kscolor_cli::{run, Run};
use serde_json::Value;

fn kscolor(out: &Path, args: &[&str]) -> Run {
    let mut argv = vec!["kscolor".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--out".into());
    argv.push(out.display().to_string());
    run(argv)
}

fn verdicts(run: &Run) -> &Value {
    &run.report.as_ref().expect("report").verdicts
}

#[test]
fn f5_25_is_unsat_with_backed_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let r = kscolor(dir.path(), &["color", "--dataset", "f5_25"]);
    assert_eq!(r.code, 0, "{:?}", r.message);
    assert_eq!(verdicts(&r)["solve"]["verdict"], "UNSAT");
    let report = r.report.unwrap();
    assert_eq!(report.certificates.len(), 2);
    for art in &report.certificates {
        let bytes = std::fs::read(&art.path).unwrap();
        assert_eq!(sha256_hex(&bytes), art.sha256);
    }
    assert!(dir.path().join("color.report.json").is_file());
}

#[test]
fn identical_inputs_give_identical_artifacts() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let ra = kscolor(a.path(), &["color", "--dataset", "z28"]).report.unwrap();
    let rb = kscolor(b.path(), &["color", "--dataset", "z28", "--parallel", "3"]).report.unwrap();
    assert_eq!(ra.input_digest, rb.input_digest);
    let shas = |r: &kscolor_cli::RunReport| r.certificates.iter().map(|c| c.sha256.clone()).collect::<Vec<_>>();
    assert_eq!(shas(&ra), shas(&rb));
}

#[test]
fn z28_certificate_cites_named_triples() {
    let dir = tempfile::tempdir().unwrap();
    let r = kscolor(dir.path(), &["color", "--dataset", "z28"]);
    assert_eq!(r.code, 0);
    let cert = std::fs::read_to_string(dir.path().join("z28.certificate.json")).unwrap();
    assert!(cert.contains("\"UNSAT\"") && cert.contains("O"));
    let cs: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("z28.constraints.json")).unwrap()).unwrap();
    let labels: Vec<&str> = cs["decomposition_labels"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(labels.len(), 20);
    assert!(labels.iter().all(|l| l.starts_with('O')));
}

#[test]
fn missing_schutte_data_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.json");
    let r = kscolor(dir.path(), &["color", "--dataset", "schutte", "--schutte", missing.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.report.is_none());
    assert!(r.message.unwrap().contains("transcribe"));
}

#[test]
fn invalid_schutte_norm_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, r#"{"vectors": [[1, 0, 0], [2, 2, 1]]}"#).unwrap();
    let r = kscolor(dir.path(), &["color", "--dataset", "schutte", "--schutte", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.message.unwrap().contains("norm"));
}

#[test]
fn colorable_stand_in_for_schutte_rows_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, r#"{"vectors": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, -1, 0]]}"#).unwrap();
    let r = kscolor(dir.path(), &["verify-table1", "--schutte", path.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    let rows = verdicts(&r)["rows"].as_array().unwrap();
    let status = |ring: &str| rows.iter().find(|row| row["ring"] == ring).unwrap()["status"].clone();
    assert_eq!(status("M3(Z[1/30])_sym"), "MISMATCH");
    assert_eq!(status("M3(Q)_sym"), "MISMATCH");
    assert_eq!(status("M3(F5)_sym"), "MATCH");
}

#[test]
fn verify_table1_without_external_data() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.json");
    let r = kscolor(dir.path(), &["verify-table1", "--schutte", missing.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{:?}", r.message);
    let rows = verdicts(&r)["rows"].as_array().unwrap();
    let statuses: Vec<&str> = rows.iter().map(|row| row["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["MATCH", "MATCH", "MATCH", "MATCH", "SKIPPED", "SKIPPED", "MATCH"]);
    for row in rows {
        for path in row["certificates"].as_array().unwrap() {
            assert!(Path::new(path.as_str().unwrap()).is_file());
        }
    }
}

#[test]
fn census_matches_closed_formula() {
    let dir = tempfile::tempdir().unwrap();
    let r = kscolor(dir.path(), &["count", "--q", "2,3"]);
    assert_eq!(r.code, 0);
    let census = verdicts(&r)["census"].as_array().unwrap();
    assert_eq!(census[0]["rank1_idempotents"], 28);
    assert_eq!(census[1]["rank1_idempotents"], 117);
    assert_eq!(census[1]["rank1_projection_triples"], 4);
    assert_eq!(census[0]["gaussian_binomials"], serde_json::json!(["1", "7", "7", "1"]));
}

#[test]
fn enumerate_writes_inventory() {
    let dir = tempfile::tempdir().unwrap();
    let r = kscolor(dir.path(), &["enumerate", "--ring", "GF(2)", "--n", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(verdicts(&r)["by_rank"], serde_json::json!([1, 6, 1]));
    let inv: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("idempotents-p2-n2.json")).unwrap()).unwrap();
    assert_eq!(inv["by_rank"]["1"].as_array().unwrap().len(), 6);
    assert_eq!(kscolor(dir.path(), &["enumerate", "--ring", "Z"]).code, 2);
}

#[test]
fn export_cnf_to_explicit_path() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("nested/f5.cnf");
    let r = kscolor(dir.path(), &["export-cnf", "--dataset", "f5_25", "--cnf", cnf.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let clauses = parse_dimacs(&std::fs::read_to_string(&cnf).unwrap());
    assert_eq!(clauses.len() as u64, verdicts(&r)["clauses"].as_u64().unwrap());
    // 60 at-most-one pairs plus one clause per decomposition
    assert_eq!(clauses.len(), 80);
}

#[test]
fn check_ideal_accepts_a_prime_partial_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let alg = PartialBooleanAlgebra::closure_of(&enumerate_projections(2, 3).unwrap().all()).unwrap();
    let ideal = &bijection_triple(&alg).unwrap().ideals[0];
    let subset: Vec<String> = (0..ideal.len()).filter(|&i| ideal[i]).map(|i| i.to_string()).collect();
    let r = kscolor(dir.path(), &["check-ideal", "--dataset", "proj-p2", "--subset", &subset.join(",")]);
    assert_eq!(r.code, 0);
    assert_eq!(verdicts(&r)["prime_partial_ideal"], true);
    assert_eq!(verdicts(&r)["complement_is_partial_ultrafilter"], true);

    let r = kscolor(dir.path(), &["check-ideal", "--dataset", "proj-p2", "--subset", "0,1"]);
    assert_eq!(verdicts(&r)["prime_partial_ideal"], false);
    assert_eq!(kscolor(dir.path(), &["check-ideal", "--dataset", "proj-p2", "--subset", "99"]).code, 2);
}

#[test]
fn json_datasets_and_ring_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("units.json");
    std::fs::write(
        &path,
        r#"{"ring": "GF(3)", "matrices": [[[1,0,0],[0,0,0],[0,0,0]], [[0,0,0],[0,1,0],[0,0,0]], [[0,0,0],[0,0,0],[0,0,1]]]}"#,
    )
    .unwrap();
    let r = kscolor(dir.path(), &["color", "--dataset", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(verdicts(&r)["solve"]["verdict"], "SAT");
    assert_eq!(verdicts(&r)["solve"]["white"], serde_json::json!(["0"]));

    let vectors = dir.path().join("vectors.json");
    std::fs::write(&vectors, r#"{"ring": "Q", "vectors": [[1,0,0],[0,1,0],[0,0,1]]}"#).unwrap();
    let r = kscolor(dir.path(), &["color", "--dataset", vectors.to_str().unwrap()]);
    assert_eq!(verdicts(&r)["solve"]["decompositions"], 1);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"ring": "GF(2)", "matrices": [[[1,1,0],[0,0,0],[0,0,1]], [[0,1,0],[0,0,0],[0,0,0]]]}"#).unwrap();
    let r = kscolor(dir.path(), &["color", "--dataset", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.message.unwrap().contains("not idempotent"));

    let r = kscolor(dir.path(), &["color", "--dataset", "z28", "--ring", "GF(2)"]);
    assert_eq!(r.code, 0);
    assert_eq!(verdicts(&r)["ring"], "GF(2)");
    assert_eq!(verdicts(&r)["solve"]["verdict"], "UNSAT");
}

#[test]
fn lift_and_closure_stay_uncolorable() {
    let dir = tempfile::tempdir().unwrap();
    let r = kscolor(dir.path(), &["lift", "--dataset", "z28"]);
    assert_eq!(r.code, 0);
    assert_eq!(verdicts(&r)["lifted_n"], 4);
    assert_eq!(verdicts(&r)["solve"]["verdict"], "UNSAT");
    let r = kscolor(dir.path(), &["closure", "--dataset", "z28"]);
    assert_eq!(r.code, 0);
    assert_eq!(verdicts(&r)["solve"]["verdict"], "UNSAT");
    assert!(verdicts(&r)["closure_elements"].as_u64().unwrap() >= 28);
}

#[test]
fn morphism_over_f2_records_seed_and_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let r = kscolor(dir.path(), &["morphism", "--p", "2", "--pairs", "50", "--seed", "7"]);
    assert_eq!(r.code, 0, "{:?}", r.message);
    let v = verdicts(&r);
    assert_eq!(v["colorings"], 6);
    assert_eq!(v["all_verified"], true);
    assert_eq!(v["composite"]["pairs_checked"], 50);
    assert_eq!(r.report.as_ref().unwrap().seed, Some(7));
    assert!(dir.path().join("morphism-p2-5.json").is_file());
    assert_eq!(kscolor(dir.path(), &["morphism", "--p", "5"]).code, 2);
}

#[test]
fn argument_errors_and_help() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(kscolor(dir.path(), &["color"]).code, 2);
    assert_eq!(kscolor(dir.path(), &["frobnicate"]).code, 2);
    assert_eq!(kscolor(dir.path(), &["color", "--dataset", "proj-q3"]).code, 2);
    assert_eq!(run(["kscolor", "--help"]).code, 0);
    assert_eq!(run(["kscolor", "--version"]).code, 0);
}
