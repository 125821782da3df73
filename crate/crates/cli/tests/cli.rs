use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const C4_CROSSED: &str = r#"{"vertices":[
  {"id":"u1","x":"0","y":"0"},{"id":"u2","x":"2","y":"0"},
  {"id":"v1","x":"2","y":"2"},{"id":"v2","x":"0","y":"2"}],
 "edges":[["u1","v1"],["v1","u2"],["u2","v2"],["v2","u1"]]}"#;

const C4: &str = r#"{"vertices":[{"id":"a"},{"id":"b"},{"id":"c"},{"id":"d"}],
 "edges":[["a","b"],["b","c"],["c","d"],["d","a"]]}"#;

const WEIGHTED_PATH: &str = r#"{"vertices":[{"id":"p","weight":"x"},{"id":"q"},{"id":"r","weight":"x"}],
 "edges":[["p","q"],["q","r"]]}"#;

const TRIANGLE: &str = r#"{"vertices":[{"id":"a"},{"id":"b"},{"id":"c"}],
 "edges":[["a","b"],["b","c"],["c","a"]]}"#;

fn plbm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plbm")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not json ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn count_direct_with_oracle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.json", C4);
    let o = plbm(&["count", "direct", s(&f), "--oracle"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["matchings"], "7");
    assert_eq!(v["oracle"], "7");
}

#[test]
fn count_maximum_and_pendant() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.json", C4);
    let v = json(&plbm(&["count", "maximum", s(&f), "--oracle"]));
    assert_eq!(v["nu"], 2);
    assert_eq!(v["maximum_matchings"], "2");
    let v = json(&plbm(&["count", "pendant", s(&f)]));
    assert_eq!(v["maximum_matchings"], "7");
    assert_eq!(v["u_size"], 2);
    assert_eq!(v["bijection_checked"], true);
}

#[test]
fn via_reduction_with_corrected_weights() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4x.json", C4_CROSSED);
    let o = plbm(&["count", "via-reduction", s(&f), "--weights", "corrected", "--oracle"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["k"], 1);
    assert_eq!(v["integer"], "7");
}

#[test]
fn via_reduction_with_published_weights_fails_verification() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4x.json", C4_CROSSED);
    assert_eq!(code(&plbm(&["count", "via-reduction", s(&f)])), 5);
}

#[test]
fn via_reduction_lays_out_undrawn_input() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.json", C4);
    let o = plbm(&["count", "via-reduction", s(&f), "--weights", "corrected", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["integer"], "7");
}

#[test]
fn verify_targets() {
    assert_eq!(code(&plbm(&["verify", "constants"])), 0);
    assert_eq!(code(&plbm(&["verify", "expansion"])), 5);
    assert_eq!(code(&plbm(&["verify", "delta1", "--weights", "corrected"])), 0);
    assert_eq!(code(&plbm(&["verify", "crossing", "--weights", "corrected", "--no-direct"])), 0);
    assert_eq!(code(&plbm(&["verify", "delta1", "--precision", "8"])), 4);
}

#[test]
fn constants_dump_is_json() {
    let o = plbm(&["constants", "--precision", "128"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let part = |k: &str| v["C"][k].as_str().unwrap().parse::<f64>().unwrap();
    assert!((part("re") + 15.24493).abs() < 5e-5);
    assert!((part("im") - 42.854005).abs() < 5e-5);
    assert!(v["C"]["radius_log2"].as_f64().unwrap() < -100.0);
}

#[test]
fn emit_gadgets() {
    let v = json(&plbm(&["emit", "crossing"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 42);
    assert_eq!(v["edges"].as_array().unwrap().len(), 61);
    let v = json(&plbm(&["emit", "delta1"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 10);
}

#[test]
fn emit_round_trips_through_count() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("delta2.json");
    assert_eq!(code(&plbm(&["emit", "delta2", "-o", s(&g)])), 0);
    let o = plbm(&["count", "direct", s(&g), "--oracle"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn emit_gi_adds_pendants() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", WEIGHTED_PATH);
    let v = json(&plbm(&["emit", "gi", s(&f), "--tag", "x", "--i", "2"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 7);
    assert_eq!(code(&plbm(&["emit", "gi", s(&f), "--tag", "x"])), 3);
}

#[test]
fn reduce_writes_sidecar_deterministically() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4x.json", C4_CROSSED);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(code(&plbm(&["reduce", "crossings", s(&f), "-o", s(&a)])), 0);
    assert_eq!(code(&plbm(&["reduce", "crossings", s(&f), "-o", s(&b)])), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let side: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.json.placements.json")).unwrap()).unwrap();
    assert_eq!(side["k"], 1);
    assert_eq!(side["vertices"], 46);
}

#[test]
fn eliminate_reproduces_polynomial() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", WEIGHTED_PATH);
    let o = plbm(&["eliminate", "--tag", "x", s(&f)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["m"], 2);
    assert_eq!(v["nodes"], serde_json::json!([2, 3, 4]));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"vertices\": [");
    assert_eq!(code(&plbm(&["count", "direct", s(&bad)])), 2);
    let dup = write(&dir, "dup.json", r#"{"vertices":[{"id":"a"},{"id":"a"}],"edges":[]}"#);
    assert_eq!(code(&plbm(&["count", "direct", s(&dup)])), 2);
    assert_eq!(code(&plbm(&["count", "direct", "/nonexistent/graph.json"])), 2);
    assert_eq!(code(&plbm(&["no-such-command"])), 2);
    let tri = write(&dir, "tri.json", TRIANGLE);
    assert_eq!(code(&plbm(&["count", "pendant", s(&tri)])), 3);
}

#[test]
fn budget_exhaustion_is_a_resource_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.json", C4);
    assert_eq!(code(&plbm(&["--budget", "1", "count", "direct", s(&f)])), 4);
}
