use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use zonoehr::cli::exit_code;
use zonoehr::Error;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zonoehr"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json", "--no-timings"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn strs(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

const EXCEPTIONAL: &str = r#"{"dim":3,"generators":[[1,1,0],[-1,1,0],[1,1,2]]}"#;
const CUBE: &str = r#"{"dim":3,"generators":[[1,0,0],[0,1,0],[0,0,1]]}"#;

#[test]
fn ehrhart_exceptional() {
    let path = scratch("exceptional.json", EXCEPTIONAL);
    let r = json(&["ehrhart", path.to_str().unwrap(), "--verify"]);
    let out = &r["output"];
    assert_eq!(strs(&out["ehrhart"]), ["1", "3", "6", "4"]);
    assert_eq!(strs(&out["c"]), ["0", "3", "0"]);
    assert_eq!(strs(&out["hstar"]), ["1", "10", "13", "0"]);
    assert_eq!(out["degree"], 2);
    assert_eq!(out["interior_points"], "0");
    assert_eq!(r["verification"]["passed"], true);
    assert!(r.get("timings").is_none());
}

#[test]
fn ehrhart_cube_and_stdin() {
    let mut child = bin()
        .args(["--json", "--no-timings", "ehrhart", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(CUBE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(strs(&r["output"]["ehrhart"]), ["1", "3", "3", "1"]);
    assert_eq!(strs(&r["output"]["c"]), ["0", "0", "0"]);
    assert_eq!(strs(&r["output"]["hstar"]), ["1", "4", "1", "0"]);
}

#[test]
fn reports_are_deterministic() {
    let path = scratch("det.json", EXCEPTIONAL);
    let args = ["--json", "--no-timings", "width", path.to_str().unwrap()];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let timed = run(&["--json", "width", path.to_str().unwrap()]);
    let r: Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(r["timings"]["total_ms"].is_number());
}

#[test]
fn input_errors_exit_2() {
    let bad = scratch("bad.json", "{\"dim\": 3, \"generators\": [[1,0]");
    let out = run(&["ehrhart", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    assert_eq!(run(&["ehrhart", "/nonexistent/file.json"]).status.code(), Some(2));
    let rational = scratch("rational.json", r#"{"dim":2,"generators":[[1,0],[0,1]],"translate":["1/2","0"]}"#);
    assert_eq!(run(&["ehrhart", rational.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["classify", "bogus", "1", "2"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "zono2d", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eulerian", "12"]).status.code(), Some(2));
    assert_eq!(run(&["realize", "5", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_exit_4() {
    let path = scratch("budget.json", EXCEPTIONAL);
    let out = run(&["ehrhart", path.to_str().unwrap(), "--verify", "--budget", "50"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["census", "--dim", "2", "--bound", "2", "--max-generators", "2", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn error_classes_map_to_exit_codes() {
    assert_eq!(exit_code(&Error::Mismatch("x".into())), 3);
    assert_eq!(exit_code(&Error::ClassificationContradiction("x".into())), 3);
    assert_eq!(exit_code(&Error::BudgetExceeded { cells: 2, budget: 1 }), 4);
    assert_eq!(exit_code(&Error::Parse("x".into())), 2);
    assert_eq!(exit_code(&Error::NonLatticeTranslate), 2);
}

#[test]
fn classify_examples() {
    let r = json(&["classify", "zono2d", "2", "3"]);
    assert_eq!(r["output"]["accepted"], true);
    assert_eq!(
        r["output"]["witness"],
        serde_json::json!({"dim": 2, "generators": [[1, 0], [0, 2], [1, 2]]})
    );
    let r = json(&["classify", "scott", "9/2", "9/2"]);
    assert_eq!(r["output"]["case_label"], "Scott-(iii)");
    let r = json(&["classify", "hstar3d-deg2", "7", "4"]);
    assert_eq!(r["output"]["accepted"], false);
    assert!(r["output"]["reason"].as_str().unwrap().contains("2h1-h2 = 4 mod 6"));
    let r = json(&["classify", "zono2d", "-1", "2"]);
    assert_eq!(r["output"]["accepted"], false);
    let r = json(&["classify", "treutlein", "1", "3", "--strict-treutlein"]);
    assert_eq!(r["output"]["accepted"], false);
    let r = json(&["classify", "treutlein", "1", "3"]);
    assert_eq!(r["output"]["accepted"], true);
}

#[test]
fn width_examples() {
    let path = scratch("remark.json", r#"{"dim":3,"generators":[[1,0,0],[0,1,0],[1,1,5]]}"#);
    let r = json(&["width", path.to_str().unwrap()]);
    assert_eq!(r["output"]["lattice_width"], "2");
    let widths: Vec<&str> = r["output"]["facets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["width"].as_str().unwrap())
        .collect();
    assert_eq!(widths, ["5", "5", "5"]);
    assert!(r["output"]["width1_decomposition"].is_null());

    let cube = scratch("cube.json", CUBE);
    let r = json(&["width", cube.to_str().unwrap()]);
    assert_eq!(r["output"]["lattice_width"], "1");
    let factor = &r["output"]["width1_decomposition"]["factor"];
    assert_eq!(factor["dim"], 2);

    let ex = scratch("ex-width.json", EXCEPTIONAL);
    let r = json(&["width", ex.to_str().unwrap()]);
    assert_eq!(r["output"]["lattice_width"], "2");
    assert!(r["output"]["width1_decomposition"].is_null());
}

#[test]
fn degree2_command() {
    let path = scratch(
        "ex-shifted.json",
        r#"{"dim":3,"generators":[[1,1,0],[-1,1,0],[1,1,2]],"translate":["5","-2","7"]}"#,
    );
    let r = json(&["degree2", path.to_str().unwrap()]);
    assert_eq!(r["output"]["class"], "Exceptional");
    let cube = scratch("cube2.json", CUBE);
    assert_eq!(json(&["degree2", cube.to_str().unwrap()])["output"]["class"], "Width1Product");
}

#[test]
fn eulerian_and_realize() {
    let r = json(&["eulerian", "3", "2"]);
    assert_eq!(strs(&r["output"]["polynomials"][0]["coefficients"]), ["0", "2"]);
    let r = json(&["eulerian", "4"]);
    assert_eq!(r["output"]["polynomials"].as_array().unwrap().len(), 4);
    assert_eq!(strs(&r["output"]["polynomials"][3]["coefficients"]), ["0", "1", "4", "1"]);
    let r = json(&["realize", "0", "5"]);
    assert_eq!(r["output"]["zonotope"]["generators"], serde_json::json!([[1, 0], [1, 6]]));
    assert_eq!(strs(&r["output"]["ehrhart"]), ["1", "2", "6"]);
    let r = json(&["realize", "0", "3", "--dim", "3", "--exceptional"]);
    assert_eq!(strs(&r["output"]["ehrhart"]), ["1", "3", "6", "4"]);
}

#[test]
fn census_records_reproduce() {
    let out_path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join("census.jsonl");
    fs::create_dir_all(out_path.parent().unwrap()).unwrap();
    let args = [
        "--json",
        "--no-timings",
        "census",
        "--dim",
        "3",
        "--bound",
        "1",
        "--max-generators",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stdout));
    let records = fs::read_to_string(&out_path).unwrap();
    assert_eq!(run(&args).stdout, first.stdout);
    assert_eq!(fs::read_to_string(&out_path).unwrap(), records);

    let summary: Value =
        serde_json::from_str(&fs::read_to_string(out_path.with_extension("jsonl.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["violations"], 0);
    assert_eq!(summary["instances"], 13 + 91 + 455);

    for line in records.lines().step_by(37) {
        let rec: Value = serde_json::from_str(line).unwrap();
        let doc = scratch("record.json", &rec["zonotope"].to_string());
        let r = json(&["ehrhart", doc.to_str().unwrap()]);
        assert_eq!(r["output"]["ehrhart"], rec["ehrhart"]);
    }
}

#[test]
fn census_random_is_seeded() {
    let args = |seed: &'static str| {
        run(&[
            "--json",
            "--no-timings",
            "census",
            "--dim",
            "3",
            "--bound",
            "3",
            "--min-generators",
            "3",
            "--max-generators",
            "4",
            "--random",
            "20",
            "--seed",
            seed,
        ])
    };
    let a = args("5");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, args("5").stdout);
}
