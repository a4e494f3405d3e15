use std::process::{Command, Output};

use serde_json::Value as Json;

fn data(file: &str) -> String {
    format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn semigraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semigraph"))
        .args(args)
        .env_remove("SEMIGRAPH_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Json {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn correlate_min_plus_adds_weights() {
    let tsv = data("music.tsv");
    let out = semigraph(&[
        "correlate", &tsv, "--out-field", "Genre", "--in-field", "Writer",
        "--semiring", "min.plus", "--weight", "Genre|Pop=2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["algebra"], "min.plus");
    let entries = doc["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| *e == serde_json::json!(["Genre|Pop", "Writer|Bob", 3])));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t10"));
}

#[test]
fn check_algebra_exit_codes() {
    let ok = semigraph(&["check-algebra", "--semiring", "plus.times"]);
    assert_eq!(ok.status.code(), Some(0));
    let report = json(&ok);
    for cond in ["zero_sum_free", "no_zero_divisors", "annihilator"] {
        assert_eq!(report[cond]["verdict"], "holds-on-sample", "{cond}");
    }

    let fails = semigraph(&["check-algebra", "--semiring", "union.intersect"]);
    assert_eq!(fails.status.code(), Some(1));
    assert_eq!(json(&fails)["no_zero_divisors"]["verdict"], "fails");
}

#[test]
fn test_theorem_on_ring_table_finds_counterexample() {
    let ring = data("ring_z3.json");
    let out = semigraph(&["test-theorem", "--algebra-file", &ring, "--trials", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let verdict = json(&out);
    assert_eq!(verdict["counterexample"]["lemma"], 1);
    assert_eq!(verdict["counterexample"]["kind"], "missing-nonzero");
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let out = semigraph(&["check-algebra", "--semiring", "no.such"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no.such"));

    let tsv = data("music.tsv");
    let out = semigraph(&[
        "correlate", &tsv, "--out-field", "Mood", "--in-field", "Writer",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Mood"));

    let out = semigraph(&["test-theorem", "--semiring", "plus.times", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = semigraph(&["demo", "--mode", "diagonal"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let out = semigraph(&[
            "test-theorem", "--semiring", "min.max", "--trials", "50", "--seed", "7",
            "--output", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let first = semigraph(&["demo"]);
    assert_eq!(first.stdout, semigraph(&["demo"]).stdout);
    assert_eq!(first.stdout, semigraph(&["demo", "--mode", "dense"]).stdout);
}

#[test]
fn seed_falls_back_to_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_semigraph"))
        .args(["test-theorem", "--semiring", "max.times", "--trials", "5"])
        .env("SEMIGRAPH_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 42);
    let flag = semigraph(&["test-theorem", "--semiring", "max.times", "--trials", "5", "--seed", "42"]);
    assert_eq!(out.stdout, flag.stdout);
}

#[test]
fn ingest_then_correlate_from_json() {
    let dir = tempfile::tempdir().unwrap();
    let exploded = dir.path().join("music.json");
    let tsv = data("music.tsv");
    let out = semigraph(&["ingest", &tsv, "--output", exploded.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Json = serde_json::from_str(&std::fs::read_to_string(&exploded).unwrap()).unwrap();
    // 11 artists, 10 dates, 9 genres, 11 writers.
    assert_eq!(doc["entries"].as_array().unwrap().len(), 41);

    let args = |path: &str| {
        vec![
            "correlate".to_string(), path.to_string(), "--out-field".into(), "Genre".into(),
            "--in-field".into(), "Writer".into(), "--semiring".into(), "max.plus".into(),
        ]
    };
    let from_json = Command::new(env!("CARGO_BIN_EXE_semigraph"))
        .args(args(exploded.to_str().unwrap()))
        .output()
        .unwrap();
    let from_tsv = Command::new(env!("CARGO_BIN_EXE_semigraph")).args(args(&tsv)).output().unwrap();
    assert_eq!(from_json.status.code(), Some(0));
    assert_eq!(from_json.stdout, from_tsv.stdout);
}

#[test]
fn demo_groups_coinciding_semirings() {
    let out = semigraph(&["demo", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let groups = |i: usize| -> Vec<Vec<String>> {
        doc[i]["groups"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| serde_json::from_value(g["semirings"].clone()).unwrap())
            .collect()
    };
    let reweighted = groups(1);
    assert!(reweighted.contains(&vec!["max.min".to_string()]));
    assert_eq!(groups(0).concat().len(), 7);
    assert_eq!(reweighted.concat().len(), 7);
}
