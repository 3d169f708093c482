use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn psrange(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psrange"))
        .args(args)
        .env_remove("PSRANGE_OUT_DIR")
        .output()
        .expect("run psrange")
}

fn json(args: &[&str]) -> Value {
    let out = psrange(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn csv_rows(args: &[&str]) -> Vec<Vec<String>> {
    let mut full = args.to_vec();
    full.push("--csv");
    let out = psrange(&full);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let mut rows = vec![reader.headers().unwrap().iter().map(String::from).collect()];
    rows.extend(reader.records().map(|r| r.unwrap().iter().map(String::from).collect()));
    rows
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[test]
fn derive_range_headline() {
    let out = psrange(&["derive-range", "--kappa", "10769/351096", "--lambda", "609317/702192"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(r#""c_max": "10318869/8886224""#));
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["result"]["gamma_min"], "8886224/10318869");
    assert_eq!(doc["result"]["c_max_decimal"], "1.161220");
    assert_eq!(doc["manifest"]["params"]["kappa"], "10769/351096");
    assert_eq!(doc["result"]["e_terms"].as_array().unwrap().len(), 12);
}

#[test]
fn derive_range_defaults_to_reference_pair() {
    let doc = json(&["derive-range"]);
    assert_eq!(doc["result"]["c_max"], "10318869/8886224");
}

#[test]
fn trivial_pair_range() {
    let doc = json(&["derive-range", "--kappa", "0", "--lambda", "1"]);
    assert_eq!(doc["result"]["gamma_min"], "13/15");
}

#[test]
fn pairs_word() {
    let doc = json(&["pairs", "--word", "BA"]);
    assert_eq!(doc["result"]["kappa"], "1/6");
    assert_eq!(doc["result"]["lambda"], "2/3");
    assert_eq!(doc["manifest"]["subcommand"], "pairs");
}

#[test]
fn count_and_membership() {
    let doc = json(&["count", "--c", "3/2", "--x", "31"]);
    assert_eq!(doc["result"]["count"], 4);
    assert_eq!(doc["result"]["c"], "3/2");
    let doc = json(&["membership", "--p", "7", "--c", "3/2"]);
    assert_eq!(doc["result"]["member"], false);
    let doc = json(&["membership", "--p", "5", "--c", "3/2"]);
    assert_eq!(doc["result"]["member"], true);
}

#[test]
fn count_sweep_is_an_array_and_thread_count_is_irrelevant() {
    let one = json(&["count", "--c", "6/5", "--x", "1000,50000", "--threads", "1"]);
    let many = json(&["count", "--c", "6/5", "--x", "1000,50000", "--segments", "4"]);
    assert_eq!(one["result"], many["result"]);
    assert_eq!(one["result"].as_array().unwrap().len(), 2);
}

#[test]
fn csv_matches_json() {
    let cases: &[&[&str]] = &[
        &["count", "--c", "6/5", "--x", "1000,20000"],
        &["verify", "spacing", "--M", "2,4", "--N", "3", "--alpha", "1,-1", "--beta", "1/2", "--delta", "0.01"],
        &["verify", "t2", "--X", "100", "--H", "8", "--M", "8,16", "--N", "8", "--alpha", "1/2", "--beta", "1", "--gamma", "3/4", "--wu-compare"],
        &["history"],
        &["psi-sum", "--c", "3/2", "--x", "1000"],
        &["verify", "vaaler", "--H", "1,4", "--grid", "500"],
        &["verify", "kl"],
    ];
    for args in cases {
        let doc = json(args);
        let rows: Vec<Value> = match &doc["result"] {
            Value::Array(a) => a.clone(),
            other => vec![other.clone()],
        };
        let table = csv_rows(args);
        let headers = &table[0];
        assert_eq!(table.len() - 1, rows.len(), "{args:?}");
        for (row, record) in rows.iter().zip(&table[1..]) {
            for (h, v) in headers.iter().zip(record) {
                assert_eq!(&cell(&row[h.as_str()]), v, "{args:?} column {h}");
            }
        }
    }
}

#[test]
fn count_csv_schema() {
    let table = csv_rows(&["count", "--c", "3/2", "--x", "31"]);
    assert_eq!(table[0], ["x", "c", "count", "main_term", "ratio"]);
    assert_eq!(table[1][..3], ["31", "3/2", "4"]);
}

#[test]
fn derive_range_csv() {
    let table = csv_rows(&["derive-range"]);
    assert_eq!(table[0], ["kind", "label", "direction", "value", "decimal"]);
    assert_eq!(table[2][..4], ["c_max", "E1", "less", "10318869/8886224"]);
    assert!(table.iter().any(|r| r[1] == "typeII" && r[3] == "6/7"));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["verify", "t2", "--X", "1000", "--H", "16", "--M", "16", "--N", "16", "--alpha", "1/2", "--beta", "1", "--gamma", "3/4", "--seed", "7"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["manifest"]["seed"], 7);
    assert_eq!(a["manifest"]["params"]["rng"], "ChaCha8");
}

#[test]
fn exit_codes() {
    assert_eq!(psrange(&["count", "--c", "3/2", "--x", "31", "--bogus"]).status.code(), Some(2));
    assert_eq!(psrange(&["nonsense"]).status.code(), Some(2));
    assert_eq!(psrange(&["count", "--c", "2/3", "--x", "31"]).status.code(), Some(2));
    assert_eq!(psrange(&["pairs", "--word", "AXB"]).status.code(), Some(2));
    assert_eq!(psrange(&["derive-range", "--kappa", "3/4", "--lambda", "1/2"]).status.code(), Some(2));
    assert_eq!(psrange(&["search", "--max-len", "40"]).status.code(), Some(2));
    assert_eq!(psrange(&["count", "--c", "3/2", "--x", "1000000", "--budget", "10"]).status.code(), Some(1));
    let out = psrange(&["verify", "t2", "--X", "10", "--H", "100", "--M", "100", "--N", "100", "--alpha", "1/2", "--beta", "1", "--gamma", "3/4", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1000000"));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_psrange"))
        .args(["pairs", "--word", "A"])
        .env("PSRANGE_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("pairs.json")).unwrap()).unwrap();
    assert_eq!(doc["result"]["kappa"], "0/1");

    let status = Command::new(env!("CARGO_BIN_EXE_psrange"))
        .args(["count", "--c", "3/2", "--x", "31", "--csv", "sweep.csv"])
        .env("PSRANGE_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let csv_path = dir.path().join("sweep.csv");
    assert!(std::fs::read_to_string(&csv_path).unwrap().starts_with("x,c,count"));
    assert!(Path::new(&format!("{}.manifest.json", csv_path.display())).exists());
}

#[test]
fn search_short_words() {
    let doc = json(&["search", "--max-len", "3"]);
    assert_eq!(doc["result"]["candidates"], 15);
    assert!(doc["result"]["gamma_min"].as_str().unwrap().contains('/'));
}

#[test]
fn hypothesis_violation_is_a_validation_error() {
    let out = psrange(&["verify", "t2", "--X", "10", "--H", "4", "--M", "4", "--N", "4", "--alpha", "1", "--beta", "1", "--gamma", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
