use std::path::PathBuf;
use std::process::Command;
use std::{env, fs};

use serde_json::Value;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.extend(["tests", "data", name]);
    p.to_string_lossy().into_owned()
}

fn triram(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_triram"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout))
}

/// Compares stdout with `tests/golden/<name>.json`; set `TRIRAM_BLESS=1`
/// to rewrite the file.
fn golden(name: &str, args: &[&str], code: i32) -> Value {
    let run = triram(args);
    assert_eq!(run.code, code, "stderr: {}", run.stderr);
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.extend(["tests", "golden", &format!("{name}.json")]);
    if env::var_os("TRIRAM_BLESS").is_some() {
        fs::write(&path, &run.stdout).unwrap();
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(run.stdout, expected, "output of {name} drifted");
    json(&run)
}

#[test]
fn verify_cube_over_q() {
    let v = golden("verify_cube_q", &["verify", &data("cube_q.json")], 0);
    assert_eq!(v["verdict"], true);
    let points: Vec<_> = v["result"]["profile"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["point"].clone(), x["e"].as_u64().unwrap()))
        .collect();
    assert_eq!(points, [(Value::from("0"), 3), (Value::from("inf"), 3)]);
}

#[test]
fn verify_negative_and_errors() {
    let v = golden(
        "verify_chebyshev_q",
        &["verify", &data("chebyshev_q.json")],
        1,
    );
    assert_eq!(v["verdict"], false);
    let run = triram(&["verify", &data("square_f2.json")]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.is_empty());
    assert!(run.stderr.contains("inseparable"), "{}", run.stderr);
    assert_eq!(triram(&["verify", &data("broken.json")]).code, 2);
    assert_eq!(triram(&["verify", &data("missing.json")]).code, 2);
}

#[test]
fn construct_over_f7_replays_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.json");
    let trace = dir.path().join("trace.json");
    let args = [
        "construct",
        "--field",
        "F7",
        "--branch",
        "0",
        "1",
        "inf",
        "3",
        "--seed",
        "0",
        "--map-out",
        map.to_str().unwrap(),
        "--trace-out",
        trace.to_str().unwrap(),
    ];
    let v = golden("construct_f7", &args, 0);
    assert_eq!(v["result"]["degree"], 81);
    assert_eq!(v["result"]["replays"], true);
    let trace_text = fs::read_to_string(&trace).unwrap();
    assert_eq!(
        serde_json::from_str::<Value>(&trace_text).unwrap(),
        v["result"]["trace"]
    );

    let verified = triram(&["verify", map.to_str().unwrap()]);
    assert_eq!(verified.code, 0);
    let verified = json(&verified);
    assert_eq!(verified["result"]["geometric_ramification_points"], 80);
    let oracle = triram(&["oracle", map.to_str().unwrap()]);
    assert_eq!(oracle.code, 0, "{}", oracle.stderr);
}

#[test]
fn construct_base_step_and_blocked() {
    let v = golden(
        "construct_f5_single",
        &["construct", "--field", "F5", "--branch", "0"],
        0,
    );
    assert_eq!(
        v["result"]["map"]["numerator"],
        serde_json::json!(["0", "0", "0", "1"])
    );
    let run = triram(&["construct", "--field", "Q", "--branch", "0", "1", "2"]);
    assert_eq!(run.code, 2);
    assert!(run
        .stderr
        .contains("use a finite field or the forward mode"));
    let run = triram(&["construct", "--field", "F7", "--branch", "1", "1"]);
    assert_eq!(run.code, 2);
    assert_eq!(
        triram(&["construct", "--field", "F3", "--branch", "1"]).code,
        2
    );
}

#[test]
fn construct_forward() {
    let v = golden(
        "construct_forward_q",
        &[
            "construct",
            "--field",
            "Q",
            "--forward",
            "1,1,1,2",
            "2,0,1,1",
        ],
        0,
    );
    assert_eq!(v["result"]["degree"], 9);
    assert_eq!(v["result"]["profile"]["triple_only"], true);
}

#[test]
fn belyi_examples() {
    let v = golden("belyi_f4", &["belyi", &data("cube_plus_w_f4.json")], 0);
    assert_eq!(v["result"]["n"], 2);
    assert_eq!(
        v["result"]["profile"]["branch_points"],
        serde_json::json!(["[0,0]", "[1,0]", "inf"])
    );
    let v = json(&triram(&["belyi", &data("cube_f2.json")]));
    assert_eq!(v["result"]["n"], "identity");
    let run = triram(&["belyi", &data("artin_schreier_f2.json")]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("wild"));
}

#[test]
fn normalize_examples() {
    let v = golden(
        "normalize_q",
        &["normalize", "--points", "2", "5", "1", "3"],
        0,
    );
    assert_eq!(v["result"]["coordinates"], serde_json::json!(["2/3"]));
    let v = json(&triram(&["normalize", "--points", "0", "1", "inf", "5"]));
    assert_eq!(v["result"]["coordinates"], serde_json::json!(["5"]));
    let run = triram(&["normalize", "--points", "0", "1", "inf", "1"]);
    assert_eq!(run.code, 1);
    assert_eq!(json(&run)["verdict"], false);
    assert_eq!(triram(&["normalize", "--points", "0", "1", "x"]).code, 2);
    assert_eq!(triram(&["normalize", "--points", "0", "1"]).code, 2);
}

#[test]
fn weierstrass_examples() {
    let v = golden(
        "weierstrass_q_1",
        &["weierstrass", "--field", "Q", "--t", "1"],
        0,
    );
    assert_eq!(
        (v["result"]["smooth"].clone(), v["result"]["j"].clone()),
        (true.into(), "0".into())
    );
    assert_eq!(v["result"]["genus"], 1);
    let v = golden(
        "weierstrass_q_0",
        &["weierstrass", "--field", "Q", "--t", "0"],
        0,
    );
    assert_eq!(
        v["result"]["singular_point"]["point"],
        serde_json::json!(["0", "0", "1"])
    );
    assert_eq!(v["result"]["branch_divisor"][0]["multiplicity"], 2);
    let v = json(&triram(&["weierstrass", "--field", "F2", "--t", "1"]));
    assert_eq!(v["result"]["j"], "0");
    assert_eq!(
        triram(&["weierstrass", "--field", "F3", "--t", "1"]).code,
        2
    );
}

#[test]
fn compose_maps() {
    let v = golden(
        "compose_q",
        &["compose", &data("cube_q.json"), &data("mobius_q.json")],
        0,
    );
    assert_eq!(v["result"]["degree"], 3);
    assert_eq!(v["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(
        triram(&["compose", &data("cube_q.json"), &data("cube_f2.json")]).code,
        2
    );
}

#[test]
fn oracle_examples() {
    let v = golden(
        "oracle_cube_f7",
        &["oracle", &data("cube_f7.json"), "--ext-degree", "1"],
        0,
    );
    assert_eq!(v["result"]["agree"], true);
    let run = triram(&["oracle", &data("cube_f1009.json"), "--ext-degree", "2"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("too large"));
}

#[test]
fn output_flag_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let args = ["verify", &data("chebyshev_q.json")];
    let run = triram(&[&args[..], &["--output", out.to_str().unwrap()]].concat());
    assert_eq!(run.code, 1);
    assert!(run.stdout.is_empty());
    assert_eq!(fs::read_to_string(&out).unwrap(), triram(&args).stdout);
    assert_eq!(triram(&args).stdout, triram(&args).stdout);
}
