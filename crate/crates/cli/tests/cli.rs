use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peakalg"))
        .args(args)
        .env_remove("PEAKALG_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is a JSON error record");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn type_b_peak_example() {
    let o = run(&["peaks", "--window", "-2,3,4,-5,1", "--flavor", "typeB"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "{0,3}");
    let o = run(&["peaks", "--window", "-2,3,4,-5,1", "--format", "json"]);
    assert_eq!(json(&o)["sets"]["typeB"], serde_json::json!([0, 3]));
}

#[test]
fn structure_table_contains_known_constant() {
    let o = run(&["structure", "--flavor", "interior", "--n", "3", "--format", "json", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["formatVersion"], 1);
    let hit = v["entries"].as_array().unwrap().iter().any(|e| {
        e["A"] == serde_json::json!([2]) && e["B"] == serde_json::json!([2]) && e["C"] == serde_json::json!([]) && e["count"] == 1
    });
    assert!(hit);
    assert_eq!(v["duality"]["failures"], serde_json::json!([]));
}

#[test]
fn verify_passes_and_summarizes() {
    let o = run(&["verify", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.starts_with("verify: ") && last.contains(" 0 failed"), "{last}");
}

#[test]
fn verify_strict_makes_known_gaps_fatal() {
    let o = run(&["verify", "--n-max", "4", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
}

fn check_schema(v: &Value) {
    for key in ["nMax", "nMaxB", "k", "seed", "strict", "passed", "failed", "knownGaps", "skipped"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let checks = v["checks"].as_array().unwrap();
    let count = |s: &str| checks.iter().filter(|c| c["status"] == s).count() as u64;
    assert_eq!(v["passed"].as_u64().unwrap(), count("pass"));
    assert_eq!(v["failed"].as_u64().unwrap(), count("fail"));
    assert_eq!(v["knownGaps"].as_u64().unwrap(), count("knownGap"));
    assert_eq!(v["skipped"].as_u64().unwrap(), count("skipped"));
    for c in checks {
        assert!(c["name"].is_string());
    }
}

#[test]
fn verify_is_deterministic_and_cache_neutral() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let base = ["verify", "--n-max", "4", "--format", "json", "--seed", "17"];
    let plain = run(&base);
    let cold = run(&[&base[..], &["--cache-dir", cache]].concat());
    assert!(Path::new(cache).join("structure-interior-4.json").exists());
    let warm = run(&[&base[..], &["--cache-dir", cache, "--jobs", "1"]].concat());
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    check_schema(&json(&warm));
}

#[test]
fn cache_directory_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_peakalg"))
        .args(["structure", "--flavor", "left", "--n", "3"])
        .env("PEAKALG_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("structure-left-3.json").exists());
}

#[test]
fn usage_errors_exit_2_with_a_record() {
    for args in [
        &["peaks", "--window", "1,1"][..],
        &["orderpoly", "--n", "9"],
        &["closure", "--flavor", "sideways", "--n", "3"],
        &["no-such-command"],
        &["census", "--window", "-1,2", "--alphabet", "prime"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(error_kind(&o), "usage", "{args:?}");
    }
    assert_eq!(run(&["orderpoly", "--n", "9", "--allow-large"]).status.code(), Some(0));
}

#[test]
fn closure_and_ideal_outcomes() {
    assert_eq!(run(&["closure", "--flavor", "interior", "--n", "4", "--ideal-in", "left"]).status.code(), Some(0));
    let o = run(&["closure", "--flavor", "right", "--n", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["closed"], false);
    assert!(v["witness"]["residualSupport"].as_u64().unwrap() > 0);
    assert_eq!(run(&["closure", "--flavor", "interior", "--numbers", "--n", "5"]).status.code(), Some(0));
}

#[test]
fn extensions_of_a_poset_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    std::fs::write(&path, "# 3 above both\n1<3\n2<3\n").unwrap();
    let o = run(&["extensions", "--file", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["count"], 2);
    assert_eq!(v["extensions"], serde_json::json!([[1, 2, 3], [2, 1, 3]]));
}

#[test]
fn census_csv_has_one_column_per_variable() {
    let o = run(&["census", "--window", "1", "-k", "2", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("z0,z1,z2,count"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows, vec!["0,0,1,2", "0,1,0,2"]);
}

#[test]
fn qsym_reports() {
    let o = run(&["qsym", "--n", "2", "--peaks", "", "--format", "json"]);
    let terms = json(&o)["function"]["terms"].as_array().unwrap().len();
    assert_eq!(terms, 2);
    for (flavor, rank) in [("interior", 5), ("left", 8), ("typeB", 13)] {
        let o = run(&["qsym", "--n", "5", "--flavor", flavor, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(json(&o)["rank"], rank, "{flavor}");
    }
}

#[test]
fn negatives_find_every_witness() {
    let o = run(&["negatives", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 7);
    assert!(list.iter().all(|r| r["closed"] == false));
    assert!(list.last().unwrap()["closureDim"].as_u64().unwrap() < 24);
}

#[test]
fn idempotents_and_order_polynomials() {
    let o = run(&["idempotents", "--n", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["idempotents"].as_array().unwrap().len(), 2);
    let o = run(&["orderpoly", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), "Ω(0; x) = 2·x^2");
}
