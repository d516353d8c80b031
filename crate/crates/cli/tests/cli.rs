use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbframe")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn list_shows_catalog() {
    let o = run(&["list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 5);
    let v = json(&run(&["list", "--json"]));
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|d| d["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["flat", "generic2", "cartan2", "berwald2", "cb2"]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["verify", "--space", "nowhere"],
        &["verify", "--space", "generic2", "--suite", "everything"],
        &["verify", "--space", "generic2", "--samples", "0"],
        &["verify", "--space", "generic2", "--tol-d1=-1"],
        &["eval", "--space", "generic2", "--object", "torsion"],
        &["eval", "--space", "generic2", "--object", "metric", "--point", "9,9;1,1"],
        &["eval", "--space", "generic2", "--object", "metric", "--point", "0.1;0.5"],
    ] {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn verify_generic2_passes() {
    let o = run(&["verify", "--space", "generic2", "--samples", "5", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["overall_pass"], true);
    assert_eq!(v["schema_version"], 1);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["id"] == "wtensor.census" && c["status"] == "pass"));
}

#[test]
fn precondition_failure_exits_1() {
    let o = run(&["verify", "--space", "cartan2", "--suite", "berwald", "--samples", "5", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["checks"][0]["id"], "berwald.precondition");
    assert_eq!(v["checks"][0]["status"], "fail");
}

#[test]
fn flat_is_degenerate_not_failing() {
    let v = json(&run(&["verify", "--space", "flat", "--samples", "3", "--json"]));
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["degenerate"].as_u64().unwrap() > 100);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "--space", "berwald2", "--samples", "4", "--seed", "9", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let other = run(&["verify", "--space", "berwald2", "--samples", "4", "--seed", "10", "--json"]);
    assert_ne!(run(&args).stdout, other.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("tbframe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let args = ["verify", "--space", "cb2", "--samples", "3", "--json"];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = run(&with_out);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), run(&args).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_labels() {
    for (space, label) in [("flat", "cb"), ("generic2", "generic"), ("cartan2", "cartan"), ("berwald2", "berwald"), ("cb2", "cb")] {
        let o = run(&["classify", "--space", space, "--samples", "10", "--json"]);
        assert_eq!(code(&o), 0);
        assert_eq!(json(&o)["label"], label, "{space}");
    }
}

fn blocks(args: &[&str]) -> Vec<(String, f64)> {
    let o = run(args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    json(&o)["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| (b["name"].as_str().unwrap().to_string(), b["max_abs"].as_f64().unwrap()))
        .collect()
}

#[test]
fn eval_examples() {
    let flat = blocks(&["eval", "--space", "flat", "--object", "torsion.canonical", "--json"]);
    assert!(flat.iter().all(|(_, m)| *m == 0.0));
    let curv = blocks(&["eval", "--space", "generic2", "--object", "curvature.canonical", "--point", "0.3,-0.2;0.7,0.9", "--json"]);
    assert_eq!(curv.len(), 6);
    assert!(curv.iter().all(|(_, m)| *m < 1e-9));
    let w = blocks(&["eval", "--space", "cb2", "--object", "wtensor.dual", "--json"]);
    let live: Vec<&str> = w.iter().filter(|(_, m)| *m > 1e-12).map(|(n, _)| n.as_str()).collect();
    assert_eq!(live, ["W_hhh"]);
}

#[test]
fn eval_text_lists_entries() {
    let o = run(&["eval", "--space", "generic2", "--object", "metric"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("g_h [H_ H_]"));
    assert!(text.contains("[2,1]"));
}
