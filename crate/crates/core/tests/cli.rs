use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kahler-lab")).args(args).output().expect("spawn kahler-lab")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn envelope_has_schema_and_command() {
    let out = run(&["surface", "probe", "--lambda", "2", "--a", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["command"], "surface probe");
    assert!(v["report"]["engine_difference"].as_f64().unwrap() < 1e-6);
}

#[test]
fn tensor_suite_is_deterministic_across_job_counts() {
    let args = ["tensor", "check", "-n", "6", "--mc-samples", "2000", "--seed", "7"];
    let a = run(&[&["--jobs", "1"], &args[..]].concat());
    let b = run(&[&["--jobs", "3"], &args[..]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["report"]["count"], 6);
    assert_eq!(v["report"]["instances"].as_array().unwrap().len(), 6);
}

#[test]
fn corrupted_fixture_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"m": 2, "coeffs": [{"idx": [1,1,1,1], "re": 2.0, "im": 0.0}, {"idx": [1,1,2,2], "re": 1.0, "im": 0.0}, {"idx": [2,2,2,2], "re": 2.0, "im": 0.0}]}"#).unwrap();
    let out = run(&["tensor", "check", "--mc-samples", "2000", "--fixture", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"m": 2, "coeffs": [{"idx": [1,1,1,1], "re": 2.0, "im": 0.5}]}"#).unwrap();
    let out = run(&["tensor", "check", "--fixture", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(!v["report"]["violations"].as_array().unwrap().is_empty());
    assert_eq!(v["report"]["passed"], false);
}

#[test]
fn unreadable_input_is_an_error() {
    let out = run(&["tensor", "check", "--fixture", "/nonexistent/tensor.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = run(&["compare", "--theorem", "1.2i", "--model", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["compare", "--theorem", "7.7", "--model", "fubini-study"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn metric_show_writes_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fs.csv");
    let out = run(&["metric", "show", "--builtin", "fubini-study", "--grid-n", "5", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("param,A,B,C,A+C,A+B,A+(m-1)B"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert!((r[1] - 2.0).abs() < 1e-10 && (r[2] - 1.0).abs() < 1e-10 && (r[3] - 2.0).abs() < 1e-10);
    }
}

#[test]
fn compare_csv_has_equal_sides_on_the_model() {
    let out = run(&["compare", "--theorem", "1.2ii", "--model", "fubini-study", "--points", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("ell,lhs,rhs"));
    for l in lines {
        let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[1] - v[2]).abs() < 1e-6, "{l}");
    }
}

#[test]
fn classify_flat_fails_strict_positivity() {
    let out = run(&["metric", "classify", "--builtin", "flat", "--target", "i"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["metric", "classify", "--builtin", "fubini-study", "--target", "iii"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_example_reports_criteria() {
    let out = run(&["metric", "verify-example", "cubic", "--a", "0.83"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["report"]["verdict"], "pass");
    assert_eq!(v["report"]["criteria"].as_array().unwrap().len(), 5);
    let out = run(&["metric", "verify-example", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_unavailable_for_tensor_check() {
    let out = run(&["tensor", "check", "-n", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}
