use std::process::{Command, Output};

use serde_json::Value;

fn palquot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_palquot"))
        .args(args)
        .env_remove("PALQUOT_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = palquot(args);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON from {args:?}: {e}\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (doc, out.status.code().unwrap())
}

fn stdout(args: &[&str]) -> String {
    let out = palquot(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn decide_reports_in_the_stable_schema() {
    let (doc, code) = json(&["decide", "35"]);
    assert_eq!(code, 0);
    for key in ["command", "target", "params", "result", "diagnostics"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["result"]["representable"], "false");
    assert!(doc["diagnostics"]["statesVisited"].is_string());
    assert!(doc["diagnostics"]["elapsedMs"].is_string());

    let (doc, _) = json(&["decide", "--shape", "apal", "22"]);
    assert_eq!(doc["result"]["representable"], "false");
}

#[test]
fn twenty_three_over_odd_q() {
    for q in (1..23).step_by(2) {
        let target = format!("23/{q}");
        let (doc, code) = json(&["decide", &target]);
        assert_eq!(code, 0);
        assert_eq!(doc["result"]["representable"], "false", "{target}");
    }
}

#[test]
fn smallest_pairs() {
    let (doc, _) = json(&["smallest", "79"]);
    assert_eq!(doc["result"]["A"], "888987");
    assert_eq!(doc["result"]["B"], "11253");
    let (doc, _) = json(&["smallest", "--shape", "apal", "18"]);
    assert_eq!(doc["result"]["A"], "936");
    assert_eq!(doc["result"]["B"], "52");
    assert_eq!(doc["result"]["BBase"], "110100");
}

#[test]
fn counts() {
    let (doc, _) = json(&["count", "--shape", "apal", "17"]);
    assert_eq!(doc["result"]["class"], "finite");
    assert_eq!(doc["result"]["count"], "2");
    let (doc, _) = json(&["count", "--shape", "apal", "26"]);
    assert_eq!(doc["result"]["count"], "1");
    let (doc, _) = json(&["count", "--shape", "apal", "15"]);
    assert_eq!(doc["result"]["class"], "infinite");
}

#[test]
fn sweeps_and_bfiles() {
    let census = stdout(&[
        "sweep",
        "--shape",
        "pal",
        "--max-bits",
        "6",
        "--format",
        "bfile",
    ]);
    assert_eq!(census, "1 1\n2 1\n3 2\n4 4\n5 5\n6 10\n");

    let list = stdout(&["sweep", "--range", "1..39", "--list", "--format", "bfile"]);
    let values: Vec<&str> = list.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(values.join(","), "1,3,5,7,9,11,13,15,17,19,21,27,31,33,39");
    assert!(list.starts_with("1 1\n2 3\n"));

    let (doc, _) = json(&["sweep", "--shape", "apal", "--range", "1..26", "--list"]);
    let members: Vec<&str> = doc["result"]["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(members.join(","), "1,5,6,15,17,18,19,20,21,24,26");

    let tsv = stdout(&["sweep", "--range", "21..25", "--odd", "--format", "tsv"]);
    assert_eq!(
        tsv,
        "n\tverdict\n21\trepresentable\n23\tunrepresentable\n25\tunrepresentable\n"
    );
}

#[test]
fn heuristic_outcomes() {
    let (doc, code) = json(&["heuristic", "103"]);
    assert_eq!(
        (doc["result"]["outcome"].as_str(), code),
        (Some("refuted"), 0)
    );
    assert_eq!(doc["result"]["depth"], "7");
    let (doc, code) = json(&["heuristic", "2551", "--max-depth", "30"]);
    assert_eq!(doc["result"]["outcome"], "inconclusive");
    assert_eq!(code, 3);
    let (doc, _) = json(&["heuristic", "91"]);
    assert_eq!(doc["result"]["A"], "273");
    assert_eq!(doc["result"]["B"], "3");
}

#[test]
fn approximations() {
    let (doc, code) = json(&["approx", "1/3", "--n", "20"]);
    assert_eq!(code, 0);
    assert!(doc["result"]["errorBound"].is_string());
    assert!(doc["result"]["error"].is_string());
    let (doc, _) = json(&["approx", "0.7071", "--n", "30", "--shape", "apal"]);
    assert_eq!(doc["result"]["errorBound"], Value::Null);
    assert_eq!(doc["result"]["ABase"].as_str().unwrap().len() % 2, 0);
    let (_, code) = json(&["approx", "1", "--n", "4"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(palquot(&["decide", "12x"]).status.code(), Some(2));
    assert_eq!(palquot(&["decide", "0"]).status.code(), Some(2));
    assert_eq!(palquot(&["sweep"]).status.code(), Some(2));
    assert_eq!(palquot(&["nonsense"]).status.code(), Some(2));

    let (doc, code) = json(&["decide", "2551", "--max-states", "100"]);
    assert_eq!(code, 3);
    assert_eq!(doc["result"]["representable"], "undecided");

    let out = Command::new(env!("CARGO_BIN_EXE_palquot"))
        .args(["decide", "2551"])
        .env("PALQUOT_MAX_STATES", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
