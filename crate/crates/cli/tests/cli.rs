use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use jsonschema::JSONSchema;
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn schema() -> JSONSchema {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "report.schema.json"].iter().collect();
    let text = std::fs::read_to_string(path).unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn maxvis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxvis")).args(args).output().unwrap()
}

fn maxvis_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_maxvis"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

/// Runs a command expected to succeed and returns its schema-checked report.
fn report(args: &[&str]) -> Value {
    let out = maxvis(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let schema = schema();
    if let Err(errors) = schema.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{args:?} violates the schema: {msgs:?}");
    }
    v
}

fn failure(args: &[&str]) -> (i32, String) {
    let out = maxvis(args);
    assert!(out.stdout.is_empty(), "{args:?} printed to stdout on failure");
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn lambda_of_two_cycle() {
    let v = report(&["lambda", &data("cycle2.txt")]);
    assert_eq!(v["lambda"], "4");
    assert_eq!(v["mode"], "exact");
}

#[test]
fn golden_dimensions_and_rank() {
    let v = report(&["dims", &data("golden6.txt")]);
    let d = &v["dimensions"];
    assert_eq!(d["maxdim_eigencone"], 6);
    assert_eq!(d["maxdim_subeigencone"], 6);
    assert_eq!(d["linear_hull_dim"], 6);
    assert_eq!(d["linear_rank_star"], 5);
    let r = report(&["rank", &data("golden6.txt")]);
    assert_eq!(r["rank"]["star"], 5);
}

#[test]
fn golden_critical_graph_is_six_loops() {
    let v = report(&["critical", &data("golden6.txt")]);
    assert_eq!(v["lambda"], "1");
    let edges: Vec<[u64; 2]> = serde_json::from_value(v["critical"]["edges"].clone()).unwrap();
    assert_eq!(edges, (0..6).map(|i| [i, i]).collect::<Vec<_>>());
}

#[test]
fn divergent_star_is_a_domain_error() {
    let (code, err) = failure(&["star", &data("diverges1.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("> 1") && err.contains("diverges"), "{err}");
}

#[test]
fn malformed_input_exits_with_one() {
    let out = maxvis_stdin(&["lambda"], "2\n1 2\n1 x\n");
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("column 3"), "{err}");

    let out = maxvis_stdin(&["lambda", "-"], "1\n-3\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative entry"));

    assert_eq!(failure(&["bogus"]).0, 1);
    assert_eq!(failure(&["basis", &data("golden6.txt")]).0, 1);
    assert_eq!(failure(&["--mode", "exact", "lambda", &data("plus2.txt")]).0, 1);
    assert_eq!(failure(&["lambda", "/nonexistent/matrix.txt"]).0, 1);
}

#[test]
fn domain_errors_exit_with_two() {
    let acyclic = "2\n0 1\n0 0\n";
    let out = maxvis_stdin(&["visualize"], acyclic);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no cycle"));
    let out = maxvis_stdin(&["assign"], "2\n1 1\n0 0\n");
    assert_eq!(out.status.code(), Some(2));
    let out = maxvis_stdin(&["visualize", "--method", "perron"], "2\n1 1\n0 1\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reducible"));
    assert_eq!(failure(&["preserve", "--scaling", &data("scaling2.txt"), &data("definite2.txt")]).0, 2);
}

#[test]
fn visualize_methods() {
    let v = report(&["visualize", &data("definite2.txt")]);
    assert_eq!(v["scaling"]["vector"], serde_json::json!(["3", "9/8"]));
    assert_eq!(v["visualization"]["status"], "strictly_visualized");
    let v = report(&["visualize", "--method", "perron", &data("definite2.txt")]);
    assert_eq!(v["scaling"]["vector"], serde_json::json!(["4", "1"]));
    let v = report(&["visualize", "--method", "logconvex", "--weights", "1/2,1/2", &data("definite2.txt")]);
    assert_eq!(v["visualization"]["status"], "strictly_visualized");
    let (code, err) = failure(&["visualize", "--method", "logconvex", "--weights", "1/3,1/3", &data("definite2.txt")]);
    assert_eq!(code, 1);
    assert!(err.contains("sum to"), "{err}");
}

#[test]
fn assignment_report() {
    let v = report(&["assign", &data("assign2.txt")]);
    let a = &v["assignment"];
    assert_eq!(a["permutation"], serde_json::json!([0, 1]));
    assert_eq!(a["result"], serde_json::json!([["1", "8/9"], ["3/4", "1"]]));
}

#[test]
fn preservation_and_quotient() {
    let dir = std::env::temp_dir().join(format!("maxvis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ones = dir.join("ones.txt");
    std::fs::write(&ones, "6\n1 1 1 1 1 1\n").unwrap();
    let skewed = dir.join("skewed.txt");
    std::fs::write(&skewed, "6\n1 1 1 2 2 2\n").unwrap();
    let golden = data("golden6.txt");
    let v = report(&["preserve", "--scaling", ones.to_str().unwrap(), &golden]);
    assert_eq!(v["preservation"], "makes_strict");
    let v = report(&["preserve", "--scaling", skewed.to_str().unwrap(), &golden]);
    assert_eq!(v["preservation"], "breaks");
    let v = report(&["quotient", &golden]);
    assert_eq!(v["quotient"]["m"], 6);
    assert_eq!(v["quotient"]["star_block_structure"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn every_subcommand_matches_the_schema() {
    let golden = data("golden6.txt");
    let definite = data("definite2.txt");
    let plus = data("plus2.txt");
    let cases: Vec<Vec<&str>> = vec![
        vec!["lambda", &golden],
        vec!["star", &golden],
        vec!["critical", &definite],
        vec!["basis", "--eigen", &golden],
        vec!["basis", "--subeigen", &definite],
        vec!["dims", &definite],
        vec!["rank", &definite],
        vec!["check", &definite],
        vec!["visualize", "--method", "perron", &golden],
        vec!["quotient", &golden],
        vec!["assign", &golden],
        vec!["--mode", "float", "critical", &golden],
        vec!["--mode", "float", "dims", &golden],
        vec!["check", &plus],
        vec!["--timing", "lambda", &definite],
        vec!["oracle", "star", "--trials", "20"],
    ];
    for args in cases {
        report(&args);
    }
}

#[test]
fn float_values_have_seventeen_digits() {
    let v = report(&["--mode", "float", "lambda", &data("cycle2.txt")]);
    let s = v["lambda"].as_str().unwrap();
    let mantissa = s.split('e').next().unwrap().replace('.', "");
    assert_eq!(mantissa.len(), 17, "{s}");
    assert!((s.parse::<f64>().unwrap() - 4.0).abs() < 1e-12);
    assert!(v.get("timing").is_none());
    assert!(report(&["--timing", "lambda", &data("cycle2.txt")])["timing"]["seconds"].is_number());
}

#[test]
fn oracle_stages_agree_and_are_deterministic() {
    for stage in ["lambda", "star", "critical", "assign"] {
        for mode in ["exact", "float"] {
            let v = report(&["--mode", mode, "--seed", "11", "oracle", stage, "--trials", "40"]);
            assert_eq!(v["oracle"]["agreements"], 40, "{stage} {mode}: {v}");
        }
    }
    let a = maxvis(&["--seed", "5", "oracle", "lambda", "--trials", "10"]);
    let b = maxvis(&["--seed", "5", "oracle", "lambda", "--trials", "10"]);
    assert_eq!(a.stdout, b.stdout);
    let v = report(&["oracle", "assign", &data("assign2.txt")]);
    assert_eq!(v["oracle"]["trials"], 1);
    assert_eq!(failure(&["oracle", "lambda", "--max-n", "12"]).0, 1);
}
