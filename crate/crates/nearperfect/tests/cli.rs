//! End-to-end CLI contract tests: exit codes, output formats, determinism
//! across --jobs, and JSON schema conformance.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nearperfect"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn nearperfect")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn schema() -> serde_json::Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/output.v1.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_schema_valid(doc: &serde_json::Value) {
    let validator = jsonschema::validator_for(&schema()).expect("schema compiles");
    if let Err(e) = validator.validate(doc) {
        panic!("schema violation: {e}");
    }
}

fn json_doc(out: &Output) -> serde_json::Value {
    let doc: serde_json::Value = serde_json::from_str(&stdout(out)).expect("json stdout");
    assert_schema_valid(&doc);
    doc
}

#[test]
fn classify_12_json() {
    let out = run(&["classify", "12", "--format", "json"]);
    assert!(out.status.success());
    let doc = json_doc(&out);
    assert_eq!(doc["command"], "classify");
    let hit = &doc["hits"][0];
    assert_eq!(hit["n"], 12);
    assert_eq!(hit["sigma"], 28);
    assert_eq!(hit["abundance"], "4");
    let labels: Vec<&str> = hit["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l.as_str().unwrap())
        .collect();
    assert!(labels.contains(&"1-near-perfect"));
    assert!(labels.contains(&"abundant"));
    let witness_omits_4 = hit["witnesses"].as_array().unwrap().iter().any(|w| {
        w["type"] == "omitted" && w["omitted"] == serde_json::json!([4])
    });
    assert!(witness_omits_4);
}

#[test]
fn classify_200_table_mentions_strong_pair() {
    let out = run(&["classify", "200"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2-near-perfect"));
    assert!(text.contains("25;40") || text.contains("(25, 40)"), "{text}");
}

#[test]
fn classify_rejects_out_of_domain() {
    assert_eq!(run(&["classify", "0"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "9223372036854775808"]).status.code(), Some(2));
}

#[test]
fn scan_finds_weird_70() {
    let out = run(&["scan", "--from", "1", "--to", "100", "--kind", "weird"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("n = 70"), "{text}");
    assert!(!text.contains("n = 72"));
}

#[test]
fn scan_csv_header() {
    let out = run(&[
        "scan", "--from", "1", "--to", "30", "--kind", "perfect", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,sigma,abundance,labels,omitted"));
    let data: Vec<&str> = lines.collect();
    assert!(data.iter().any(|l| l.starts_with("6,12,0,")));
    assert!(data.iter().any(|l| l.starts_with("28,56,0,")));
}

#[test]
fn scan_stdout_identical_across_jobs() {
    fn args(jobs: &str) -> Vec<&str> {
        vec![
            "scan", "--from", "1", "--to", "20000", "--kind", "2-near-perfect",
            "--jobs", jobs, "--format", "json",
        ]
    }
    let one = run(&args("1"));
    let four = run(&args("4"));
    assert!(one.status.success() && four.status.success());
    // params echo the jobs count, so compare the hit payloads.
    let d1 = json_doc(&one);
    let d4 = json_doc(&four);
    assert_eq!(d1["hits"], d4["hits"]);
    // Identical invocations must be byte-identical up to elapsed_ms, which
    // table output does not include.
    let t1 = run(&["scan", "--from", "1", "--to", "20000", "--kind", "2-near-perfect", "--jobs", "1"]);
    let t4 = run(&["scan", "--from", "1", "--to", "20000", "--kind", "2-near-perfect", "--jobs", "4"]);
    assert_eq!(t1.stdout, t4.stdout);
}

#[test]
fn scan_rejects_bad_input() {
    assert_eq!(
        run(&["scan", "--from", "1", "--to", "100", "--kind", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["scan", "--from", "50", "--to", "10", "--kind", "perfect"]).status.code(),
        Some(2)
    );
}

#[test]
fn scan_respects_max_range_env() {
    let out = bin()
        .args(["scan", "--from", "1", "--to", "5000", "--kind", "perfect"])
        .env("NEARPERFECT_MAX_RANGE", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let ok = bin()
        .args(["scan", "--from", "1", "--to", "500", "--kind", "perfect"])
        .env("NEARPERFECT_MAX_RANGE", "1000")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn families_s2np_json() {
    let out = run(&[
        "families", "--family", "s2np", "--a-max", "60", "--seed", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc = json_doc(&out);
    assert_eq!(doc["command"], "families");
    assert_eq!(doc["seed"], 1);
    let a_values: Vec<u64> = doc["hits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["a"].as_u64().unwrap())
        .collect();
    assert_eq!(a_values, vec![3, 7, 19, 27, 31, 39]);
    let first = &doc["hits"][0];
    assert_eq!(first["family"], "S2NP");
    assert_eq!(first["p"], "11");
    assert_eq!(first["n"], "352");
    assert_eq!(first["omitted"], serde_json::json!(["8", "44"]));
    assert_eq!(first["verification"], "verified");
}

#[test]
fn families_csv_header_and_missing_bound() {
    let out = run(&[
        "families", "--family", "t1f1", "--k-max", "5", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("family,k,a,b,p,n,omitted,verification"));
    assert!(text.contains("t1f1,2,,,3,12,1;3,"));

    assert_eq!(
        run(&["families", "--family", "t1f1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["families", "--family", "nope", "--k-max", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_theorem2_json() {
    let out = run(&[
        "verify", "theorem2", "--k-max", "10", "--p-max", "200", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_doc(&out);
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["name"], "theorem2");
    assert_eq!(doc["mismatches"], serde_json::json!([]));
    let ns: std::collections::BTreeSet<u64> = doc["hits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["n"].as_u64().unwrap())
        .collect();
    assert_eq!(ns.into_iter().collect::<Vec<_>>(), vec![18, 36, 200]);
}

#[test]
fn verify_lemma4_table_passes() {
    let out = run(&["verify", "lemma4", "--k-max", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("result: PASS"));
    assert!(text.contains("(1, 1)"));
}

#[test]
fn verify_strong_table_csv() {
    let out = run(&[
        "verify", "strong-table", "--bound", "1000", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,sigma,d1,d2");
    assert!(lines.contains(&"156,392,2,78"));
    assert!(lines.contains(&"352,756,8,44"));
}

#[test]
fn verify_rejects_unknown_campaign() {
    assert_eq!(run(&["verify", "nope", "--k-max", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "theorem1"]).status.code(), Some(2));
}
