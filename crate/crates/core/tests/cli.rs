mod common;

use common::corpus_dir;
use serde_json::Value;
use std::process::Command;

fn tclose(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tclose")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let v = serde_json::from_str(&stdout).or_else(|_| serde_json::from_str(&stderr)).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, stdout)
}

fn ring(case: &str, file: &str) -> String {
    corpus_dir().join(case).join(file).to_string_lossy().into_owned()
}

#[test]
fn member_of_relation() {
    let hs = ring("hs-independence", "hs.ring");
    let (code, v, _) = tclose(&["member", "--ring", &hs, "--ideal", "I", "--elem", "x*y", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["status"], "IN");
    assert_eq!(v["result"]["reverified"], true);
}

#[test]
fn spread_of_square_of_maximal_ideal() {
    let a2 = ring("a2-spread", "a2.ring");
    let (code, v, _) = tclose(&["spread", "--ring", &a2, "--ideal", "M2", "--closure", "newton", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["mu_set"], serde_json::json!([2]));
    assert_eq!(v["result"]["well_defined"], true);
}

#[test]
fn inline_ideals_and_text_output() {
    let a2 = ring("a2-spread", "a2.ring");
    let (code, _, text) = tclose(&["froot", "--ring", &a2, "--ideal", "[x^5, x^3*y^4]", "--e", "1"]);
    assert_eq!(code, 0);
    assert!(text.contains("root: [x^2, x*y^2]") || text.contains("root: [x*y^2, x^2]"), "{text}");
}

#[test]
fn exit_codes() {
    let a2 = ring("a2-spread", "a2.ring");
    let (code, v, _) = tclose(&["gb", "--ring", &a2, "--ideal", "Missing", "--json"]);
    assert_eq!((code, v["error"]["kind"].as_str()), (2, Some("unknown_ideal")));
    let (code, _, _) = tclose(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, v, _) = tclose(&["gb", "--ring", &a2, "--ideal", "[x^3*y + y^2, x*y^3 + x^2]", "--budget", "1", "--json"]);
    assert_eq!((code, v["error"]["kind"].as_str()), (3, Some("budget_exceeded")));
    let (code, _, _) = tclose(&["gb", "--ring", &a2, "--ideal", "M", "--confirm", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn corpus_is_green_and_ordered() {
    let dir = corpus_dir().to_string_lossy().into_owned();
    let (code, v, _) = tclose(&["corpus", "run", "all", "--dir", &dir, "--jobs", "3", "--json"]);
    assert_eq!(code, 0, "{v:#}");
    let ids: Vec<&str> = v["result"]["cases"].as_array().unwrap().iter().map(|c| c["case"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(v["result"]["failed"], 0);
}

#[test]
fn corpus_selection() {
    let dir = corpus_dir().to_string_lossy().into_owned();
    let (code, v, _) = tclose(&["corpus", "run", "hs-independence,a2-sptc", "--dir", &dir, "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cases"].as_array().unwrap().len(), 2);
    let (code, _, _) = tclose(&["corpus", "run", "no-such-case", "--dir", &dir]);
    assert_eq!(code, 2);
}

#[test]
fn failing_expectation_exits_one() {
    let tmp = std::env::temp_dir().join(format!("tclose-corpus-{}", std::process::id()));
    let case = tmp.join("bad");
    std::fs::create_dir_all(&case).unwrap();
    std::fs::copy(corpus_dir().join("a2-spread/a2.ring"), case.join("a2.ring")).unwrap();
    std::fs::write(case.join("script"), "member --ideal M --elem x\n").unwrap();
    std::fs::write(
        case.join("expected.json"),
        r#"{"id":"bad","expectations":[{"step":0,"pointer":"/result/status","equals":"OUT","provenance":"trivial"}]}"#,
    )
    .unwrap();
    let (code, v, _) = tclose(&["corpus", "run", "all", "--dir", &tmp.to_string_lossy(), "--json"]);
    std::fs::remove_dir_all(&tmp).ok();
    assert_eq!(code, 1);
    assert_eq!(v["result"]["cases"][0]["assertions"][0]["actual"], "IN");
}
