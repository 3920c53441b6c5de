use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gentle_core::exceptional::enumerate_gentle;
use gentle_core::{fixtures, GentleQuiver};
use serde_json::Value;

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gentle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn gentle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle"))
        .args(args)
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_reports_gentle() {
    let q = scratch("delta1.gq", fixtures::DELTA1);
    let out = gentle(&["validate", path_str(&q)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["gentle"], true);
    assert_eq!(v["finite_gldim"], true);
}

#[test]
fn validate_flags_violations() {
    let q = scratch("star.gq", "vertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\narrow c 1 2\n");
    let out = gentle(&["validate", path_str(&q)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["gentle"], false);
}

#[test]
fn exists_on_signature_two_three() {
    let q = scratch("t111.gq", &enumerate_gentle(2, 3)[0].to_gq());
    let out = gentle(&["exists", path_str(&q)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["exists"], false);
    assert_eq!(v["reason"], "T(1,1,1)");
}

#[test]
fn surface_of_annulus() {
    let q = scratch("delta1s.gq", fixtures::DELTA1);
    let v = json_of(&gentle(&["surface", path_str(&q)]));
    assert_eq!(
        (&v["genus"], &v["boundaries"], &v["circ"], &v["bullet"], &v["punctures"]),
        (&Value::from(0), &Value::from(2), &Value::from(5), &Value::from(5), &Value::from(0))
    );
}

#[test]
fn cut_output_round_trips() {
    let q = scratch("delta1c.gq", fixtures::DELTA1);
    let out_path = std::env::temp_dir()
        .join(format!("gentle-cli-{}", std::process::id()))
        .join("cut.gq");
    let out = gentle(&["cut", path_str(&q), "--vertices", "γ3", "-o", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let cut = GentleQuiver::parse(&text).unwrap();
    assert!(cut.validate().is_gentle());
    let v = json_of(&out);
    assert_eq!(v["components"][0]["invariants"]["boundaries"], 1);
    let back = gentle(&["validate", out_path.to_str().unwrap()]);
    assert_eq!(back.status.code(), Some(0));
}

#[test]
fn orbit_of_a2() {
    let q = scratch("a2.gq", fixtures::A2);
    let out = gentle(&["orbit", path_str(&q), "--max", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["closed"], true);
    assert_eq!(v["size"], 3);
}

#[test]
fn mutate_then_reload() {
    let q = scratch("a3.gq", fixtures::A3);
    let out = gentle(&["mutate", path_str(&q), "--word", "1 -2 1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["trace"].as_array().unwrap().len(), 3);
    let seq = scratch("seq.json", &v.to_string());
    let back = gentle(&["mutate", path_str(&q), "--sequence", path_str(&seq), "--word", "-1 2 -1"]);
    assert_eq!(back.status.code(), Some(0));
    let seed = json_of(&gentle(&["seed", path_str(&q)]));
    assert_eq!(json_of(&back)["sequence"], seed["sequence"]);
}

#[test]
fn verdicts_are_reproducible() {
    let q = scratch("delta1v.gq", fixtures::DELTA1);
    let a = gentle(&["verify-braid", path_str(&q), "--seed", "7", "--words", "5"]);
    let b = gentle(&["verify-braid", path_str(&q), "--seed", "7", "--words", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["passed"], true);
}

#[test]
fn serre_and_duals() {
    let q = scratch("a3s.gq", fixtures::A3);
    let out = gentle(&["serre-check", path_str(&q)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["passed"], true);
    for side in ["left", "right"] {
        assert_eq!(gentle(&["dual", path_str(&q), "--side", side]).status.code(), Some(0));
    }
}

#[test]
fn input_errors_exit_one() {
    let q = scratch("a2e.gq", fixtures::A2);
    assert_eq!(gentle(&["mutate", path_str(&q), "--word", "3"]).status.code(), Some(1));
    assert_eq!(gentle(&["validate", "/no/such/file.gq"]).status.code(), Some(1));
    assert_eq!(gentle(&["orbit", path_str(&q), "--field-prime", "12"]).status.code(), Some(1));
    assert_eq!(gentle(&["nonsense"]).status.code(), Some(1));
    let bad = scratch("bad.gq", "vertex 1\narrow a 1 9\n");
    let out = gentle(&["validate", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn plain_output() {
    let q = scratch("a2p.gq", fixtures::A2);
    let out = gentle(&["orbit", path_str(&q), "--plain"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "closed orbit of size 3");
}
