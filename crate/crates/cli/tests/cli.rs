use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn instance(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "instances", &format!("{name}.json")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowframe")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&run(&["validate", &instance("square")])), 0);
    let out = run(&["validate", &instance("k33")]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("planarity"));
    let doc = json(&run(&["--json", "validate", &instance("k33")]));
    assert_eq!(doc["ok"], Value::Bool(false));
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["triangulate"])), 2);
    assert_eq!(code(&run(&["poset", "/nonexistent/file.json"])), 2);
}

#[test]
fn limit_exceeded_exits_3() {
    let out = run(&["--limit", "2", "layerings", &instance("shuffles")]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}

#[test]
fn malformed_instance_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"vertices": [], "edges": [], "sources": [], "sinks": [], "extra": 0}"#).unwrap();
    assert_eq!(code(&run(&["routes", path.to_str().unwrap()])), 1);
}

#[test]
fn triangulate_small_example() {
    let out = run(&["--json", "triangulate", &instance("small_example")]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["kind"], "triangulation");
    assert_eq!(doc["cells"].as_array().unwrap().len(), 8);
    assert_eq!(doc["volume"], "8");
    assert_eq!(doc["dimension"], 3);
    assert_eq!(doc["layerings"].as_array().unwrap().len(), 9);
}

#[test]
fn zigzag_dot() {
    let out = run(&["poset", &instance("zigzag"), "--dot"]);
    assert_eq!(code(&out), 0);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=\"").count(), 4 + 3);
    let doc = json(&run(&["--json", "poset", &instance("zigzag")]));
    assert_eq!(doc["maximal"].as_array().unwrap().len(), 2);
    assert_eq!(doc["minimal"].as_array().unwrap().len(), 2);
}

#[test]
fn shuffles_dot_labels() {
    let dot = String::from_utf8(run(&["poset", "--dot", &instance("shuffles")]).stdout).unwrap();
    assert_eq!(dot.matches("-> ").count(), 6);
    assert_eq!(dot.matches("\"shuffle\"").count(), 6);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["--json", "poset", &instance("small_example")[..]],
        vec!["--json", "layerings", &instance("zigzag")[..]],
        vec!["generate", "--seed", "11", "--max-edges", "10"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn generated_instances_validate() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..5 {
        let out = run(&["generate", "--seed", &seed.to_string(), "--max-edges", "10"]);
        assert_eq!(code(&out), 0);
        let path = dir.path().join(format!("g{seed}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        assert_eq!(code(&run(&["--quiet", "verify", path.to_str().unwrap(), "--samples", "5"])), 0);
    }
}

#[test]
fn reduce_then_triangulate() {
    let out = run(&["reduce", &instance("blowup")]);
    assert_eq!(code(&out), 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reduced.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let doc = json(&run(&["--json", "triangulate", path.to_str().unwrap()]));
    assert_eq!(doc["cells"].as_array().unwrap().len(), 2);
    let above = run(&["reduce", &instance("blowup"), "--placement", "above"]);
    assert_eq!(code(&above), 0);
    assert_eq!(code(&run(&["reduce", &instance("blowup"), "--placement", "sideways"])), 2);
}

#[test]
fn decompose_rational_flow() {
    let out = run(&[
        "--json",
        "decompose",
        &instance("square"),
        "--flow",
        r#"{"a1": "1/2", "a2": "1/2", "b1": "1/3", "b2": "2/3"}"#,
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let coefficients: Vec<&str> =
        doc["terms"].as_array().unwrap().iter().map(|t| t["coefficient"].as_str().unwrap()).collect();
    assert_eq!(coefficients, ["1/3", "1/6", "1/2"]);
    let bad = run(&["decompose", &instance("square"), "--flow", r#"{"a1": "1/2"}"#]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn verify_and_k33() {
    let out = run(&["verify", &instance("small_example")]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS volume: cells sum to 8, Ehrhart volume 8"));
    let doc = json(&run(&["--json", "k33-check"]));
    assert_eq!(doc["overall"], true);
}
