//! End-to-end checks of the command-line interface: output shapes, exit
//! codes, and error routing.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rivergeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn distance_command_prints_the_reference_value() {
    let out = run(&["dist", "[1,1]", "[3,0]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"distance\":3}\n");
}

#[test]
fn endpoint_weight_returns_the_endpoint() {
    let out = run(&["w", "[0,2]", "[4,1]", "1.0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"point\":[0,2]}\n");
}

#[test]
fn midpoint_command_prints_the_reference_value() {
    let out = run(&["midpoint", "[0,2]", "[4,1]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"midpoint\":[1.5,0]}\n");
}

#[test]
fn segment_output_is_parsable_and_lists_pieces() {
    let out = run(&["segment", "[0,2]", "[4,1]"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["length"], serde_json::json!(7));
    assert_eq!(value["pieces"].as_array().unwrap().len(), 3);
}

#[test]
fn unreadable_arguments_exit_with_two() {
    let out = run(&["dist", "bogus", "[3,0]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid point literal"));
    assert!(stdout(&out).is_empty());

    let out = run(&["hull", "/nonexistent/points.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));

    let out = run(&["properties", "--check", "no-such-check", "--samples", "10", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_violations_exit_with_three() {
    let out = run(&["w", "[0,2]", "[4,1]", "1.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("lambda"));

    let out = run(&["modulus", "--measure", "chi", "--eps", "5.0"]);
    assert_eq!(out.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad_ball = dir.path().join("bad.json");
    std::fs::write(&bad_ball, r#"{"type":"ball","center":[0,0],"radius":-1}"#).unwrap();
    let out = run(&["mnc", bad_ball.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let bad_scene = dir.path().join("scene.json");
    std::fs::write(
        &bad_scene,
        r#"{"viewport":{"x":[2,-2],"y":[0,1]},"objects":[]}"#,
    )
    .unwrap();
    let svg = dir.path().join("out.svg");
    let out = run(&["render", bad_scene.to_str().unwrap(), "-o", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!svg.exists());
}

#[test]
fn verification_report_is_emitted_and_successful() {
    let out = run(&[
        "properties",
        "--check",
        "metric-axioms",
        "--samples",
        "500",
        "--seed",
        "4",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["property"], "metric-axioms");
    assert_eq!(value["samples"], 500);
    assert_eq!(value["violations"], 0);
}

#[test]
fn convexity_verdicts_report_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let tall = dir.path().join("tall.json");
    std::fs::write(&tall, r#"{"type":"box","a":0,"b":1,"c":1,"d":2}"#).unwrap();
    let out = run(&["convex-check", tall.to_str().unwrap()]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["convex"], false);
    assert_eq!(value["reason"], "vertical-drop");
    assert!(value["counterexample"].is_array());

    let crossing = dir.path().join("crossing.json");
    std::fs::write(&crossing, r#"{"type":"box","a":0,"b":1,"c":-1,"d":2}"#).unwrap();
    let out = run(&["convex-check", crossing.to_str().unwrap()]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["convex"], true);
    assert!(value.get("counterexample").is_none());
}

#[test]
fn rendered_file_is_svg() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("scene.json");
    std::fs::write(
        &scene,
        r#"{"viewport":{"x":[-2,2],"y":[-2,2]},
            "objects":[{"kind":"ball","center":[0,0],"radius":1}]}"#,
    )
    .unwrap();
    let svg = dir.path().join("out.svg");
    let out = run(&["render", scene.to_str().unwrap(), "-o", svg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg "));
    assert!(text.contains("<polygon "));
}

#[test]
fn hull_json_round_trips_into_set_description() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.json");
    std::fs::write(&points, "[[0,2],[3,-1]]").unwrap();
    let out = run(&["hull", points.to_str().unwrap()]);
    assert!(out.status.success());
    let set: rivergeo::sets::SetDescription = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(set.contains(rivergeo::metric::Point::new(0.0, 2.0).unwrap(), 0.0));
    assert!(set.contains(rivergeo::metric::Point::new(1.7, 0.0).unwrap(), 0.0));
}
