use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn monocat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monocat")).args(args).output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const SIMPLE_TO_ZERO: &str = r#"{
  "base": {"kind": "chain", "arith": "poly", "p": 2, "n": 2},
  "quiver": "An-linear:2",
  "modules": {"1": {"parts": ["M1"]}},
  "maps": {}
}"#;

const SIMPLE_INTO_ENVELOPE: &str = r#"{
  "base": {"kind": "chain", "arith": "poly", "p": 2, "n": 2},
  "quiver": "An-linear:2",
  "modules": {"1": {"parts": ["M1"]}, "2": {"parts": ["M2"]}},
  "maps": {"a1": {"entries": [[{"coeff": [1, 0]}]]}}
}"#;

#[test]
fn mono_check_names_the_failing_vertex() {
    let f = scratch("simple_to_zero.json", SIMPLE_TO_ZERO);
    let o = monocat(&["mono-check", "-i", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_of(&o);
    assert_eq!(v["mono"], false);
    assert_eq!(v["failing"][0]["vertex"], "2");
    assert_eq!(v["failing"][0]["kernel"]["parts"], serde_json::json!(["M1"]));
}

#[test]
fn mimo_embeds_the_simple_into_its_envelope() {
    let f = scratch("simple_to_zero_mimo.json", SIMPLE_TO_ZERO);
    let o = monocat(&["mimo", "-i", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["mimo"]["modules"]["1"]["parts"], serde_json::json!(["M1"]));
    assert_eq!(v["mimo"]["modules"]["2"]["parts"], serde_json::json!(["M2"]));
    // the emitted file loads again and is mono
    let again = scratch("mimo_out.json", &v["mimo"].to_string());
    assert_eq!(monocat(&["mono-check", "-i", again.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn rad2_count_suite() {
    let o = monocat(&["verify-suite", "--suite", "rad2-count", "--quiver", "An-linear:3", "--base", "chain:poly:2:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["results"][0]["details"]["classes"], 9);
}

#[test]
fn input_errors_exit_2() {
    let f = scratch("broken.json", "{ not json");
    assert_eq!(monocat(&["validate", "-i", f.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(monocat(&["enumerate", "--quiver", "An-linear:2"]).status.code(), Some(2));
    assert_eq!(monocat(&["verify-suite", "--suite", "Z9"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = monocat(&["enumerate", "--quiver", "An-linear:2", "--base", "chain:int:2:3", "--caps", "3,3", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_monocat"))
        .args(["enumerate", "--quiver", "An-linear:2", "--base", "chain:int:2:3", "--caps", "3,3"])
        .env("MONOCAT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--quiver", "An-linear:2", "--base", "chain:int:2:3", "--caps", "3,4", "--mono"];
    let a = monocat(&args);
    let b = monocat(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["classes"].as_array().unwrap().len(), 10);
}

#[test]
fn kronecker_member_round_trips_through_validate() {
    let o = monocat(&["kronecker", "--base", "chain:poly:2:2", "--family", "r", "--n", "2", "--param", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let f = scratch("kronecker_r2.json", &String::from_utf8(o.stdout).unwrap());
    let v = monocat(&["validate", "-i", f.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json_of(&v)["mono"], true);
}

#[test]
fn transfer_and_text_format() {
    let f = scratch("simple_into_envelope.json", SIMPLE_INTO_ENVELOPE);
    let bad = scratch("simple_to_zero_transfer.json", SIMPLE_TO_ZERO);
    let o = monocat(&["transfer", "-i", bad.to_str().unwrap(), "--base", "chain:int:2:2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = monocat(&["transfer", "-i", f.to_str().unwrap(), "--base", "chain:int:2:2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("base.arith: \"int\""), "{text}");
}
