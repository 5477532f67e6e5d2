use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ring(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "rings", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsubcat")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, code)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

/// Replays one fact through `ideal member`.
fn fact_holds(ring_file: &str, fact: &Value) -> bool {
    let ideal = strings(&fact["ideal"]).join(", ");
    let (v, code) = json(&[
        "--ring",
        ring_file,
        "ideal",
        "member",
        "--a",
        &ideal,
        "--element",
        fact["element"].as_str().unwrap(),
        "--side",
        fact["side"].as_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    v["result"]["member"] == fact["member"]
}

#[test]
fn y_closed_failure_on_the_quantum_plane() {
    let q = ring("qplane2.toml");
    let (v, code) = json(&["--ring", &q, "check", "y-closed", "--ideal", "x", "--filter", "x, y - 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "fails");
    assert_eq!(v["exactness"], "exact");
    assert_eq!(v["certificates"][0]["kind"], "comaximality");
    let w = &v["witnesses"][0];
    assert_eq!(w["element"], "x");
    for f in w["facts"].as_array().unwrap() {
        assert!(fact_holds(&q, f), "{f}");
    }
}

#[test]
fn equal_ideals() {
    let (v, code) = json(&["--ring", &ring("qplane2.toml"), "ideal", "equal", "--a", "x", "--b", "x"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["equal"], true);
    assert_eq!(v["exactness"], "exact");
}

#[test]
fn unequal_ideals_carry_a_separating_element() {
    let q = ring("kxy.toml");
    let (v, _) = json(&["--ring", &q, "ideal", "equal", "--a", "x", "--b", "x^2"]);
    assert_eq!(v["result"]["equal"], false);
    assert_eq!(v["result"]["witness"], "x");
    for f in v["witnesses"][0]["facts"].as_array().unwrap() {
        assert!(fact_holds(&q, f));
    }
}

#[test]
fn chain_descends_strictly() {
    let q = ring("qplane2.toml");
    let (v, code) = json(&["--ring", &q, "--chain-length", "2", "chain", "--ideal", "x", "--filter", "x, y - 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["strict_descents"], serde_json::json!([0, 1]));
    assert_eq!(v["result"]["stabilized_at"], Value::Null);
    assert_eq!(v["chain"].as_array().unwrap().len(), 3);
    for w in v["witnesses"].as_array().unwrap() {
        for f in w["facts"].as_array().unwrap() {
            assert!(fact_holds(&q, f));
        }
    }
}

#[test]
fn saturation_witnesses_are_torsion() {
    let q = ring("kxy.toml");
    let (v, code) = json(&["--ring", &q, "saturate", "--ideal", "x*y, x^2", "--filter", "y"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&v["result"]["ideal"]["basis"]), ["x"]);
    let facts = v["witnesses"][0]["facts"].as_array().unwrap();
    assert_eq!(facts[0]["member"], false);
    assert!(facts[1..].iter().all(|f| f["member"] == true));
    assert!(facts.iter().all(|f| fact_holds(&q, f)));
}

#[test]
fn y_join_of_the_bad_union() {
    let b = ring("badunion.toml");
    let (v, code) = json(&["--ring", &b, "lattice", "y-join", "--a", "x2", "--b", "x3*x4", "--filter", "x1 - 1"]);
    assert_eq!(code, 0);
    assert_eq!(strings(&v["result"]["underlying"]), ["x2*x3*x4"]);
    assert_eq!(v["result"]["closed"], false);
    assert_eq!(v["result"]["stability"]["verdict"], "fails");
}

#[test]
fn findim_commands() {
    let t2 = ring("t2.toml");
    let (v, _) = json(&["--ring", &t2, "findim", "enumerate-ideals"]);
    assert_eq!(v["result"]["count"], 5);
    let (v, _) = json(&["--ring", &t2, "findim", "roundtrip"]);
    assert_eq!(v["result"]["system_roundtrip"], true);
    assert_eq!(v["result"]["principal_systems_are_ideals"], true);
    let (v, _) = json(&["--ring", &t2, "findim", "gabriel"]);
    assert_eq!(v["result"]["agree"], true);
    let (v, _) = json(&["--ring", &t2, "lattice", "join", "--a", "e22", "--b", "e11"]);
    assert_eq!(strings(&v["result"]["ideal"]["basis"]), ["e12"]);
}

#[test]
fn examples_pass() {
    for id in qsubcat::scenarios::EXAMPLE_IDS {
        let (v, code) = json(&["example", id]);
        assert_eq!(code, 0, "{id}");
        assert_eq!(v["result"]["passed"], true, "{id}");
    }
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("qsubcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "vars = [\"x\", \"x\"]\n").unwrap();
    let out = run(&["--ring", bad.to_str().unwrap(), "ideal", "sum", "--a", "x", "--b", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = run(&["--ring", &ring("kxy.toml"), "ideal", "sum", "--a", "x +", "--b", "y"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["example", "no-such-example"]).status.code(), Some(2));
    assert_eq!(run(&["--ring", &ring("t2.toml"), "ideal", "sum", "--a", "e11", "--b", "e22"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let args = ["--ring", &ring("qplane-1.toml"), "check", "stable", "--ideal", "x", "--filter", "x, y - 1"];
    let (mut a, _) = json(&args);
    let (mut b, _) = json(&args);
    a["timing_ms"] = Value::Null;
    b["timing_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn undetermined_verdicts_exit_with_three() {
    let q = ring("qplane2.toml");
    let args = ["--ring", &q, "--degree-bound", "4", "--chain-length", "1", "check", "stable", "--ideal", "x", "--filter", "x + y"];
    let (v, code) = json(&args);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["verdict"], "undetermined");
    assert_eq!(v["exactness"]["upToDegree"], 4);
}
