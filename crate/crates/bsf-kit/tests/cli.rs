use std::path::PathBuf;
use std::process::{Command, Output};

use bsf_kit::corpus::{run_entry, ENTRIES};
use bsf_kit::job::parse_syntax;
use bsf_kit::run::parse_job;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bsf-kit"))
}

fn job_file(tag: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bsf-kit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{tag}.job"));
    std::fs::write(&path, text).unwrap();
    path
}

fn run_file(tag: &str, text: &str, extra: &[&str]) -> Output {
    bin().arg("run").arg(job_file(tag, text)).args(extra).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const SATURATE: &str = "ring R = QQ[x, y] grevlex;\nideal I = (x*y) in R;\nrun saturate I by x;\n";

#[test]
fn saturate_job_prints_y() {
    let out = run_file("saturate", SATURATE, &[]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["result"]["gb"], serde_json::json!(["y"]));
    let text = run_file("saturate_text", SATURATE, &["--format", "text"]);
    assert!(String::from_utf8(text.stdout).unwrap().contains("gb: [y]"));
}

#[test]
fn exit_codes_follow_failure_kind() {
    let syntax = run_file("syntax", "ring R = QQ[x, y] grevlex\nrun groebner R;\n", &[]);
    assert_eq!(syntax.status.code(), Some(1));
    assert_eq!(json(&syntax)["error"]["code"], "E001");

    let math = "algebra B dim 2;\ne2*e2 = 1;\nring X = QQ[x];\nrun product_form_over X over B center (e2 - 1)*x;\n";
    let math = run_file("math", math, &[]);
    assert_eq!(math.status.code(), Some(2));

    let heavy = "ring R = QQ[x, y, z] lex;\nideal I = (x^2 - y, x^3 - z, y*z - x) in R;\nrun groebner I;\n";
    let budget = bin().env("BSFKIT_GB_STEP_LIMIT", "1").arg("run").arg(job_file("budget", heavy)).output().unwrap();
    assert_eq!(budget.status.code(), Some(3));
    assert_eq!(json(&budget)["error"]["code"], "budget");

    let missing = bin().args(["run", "/nonexistent/job.txt"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn diagnostics_have_distinct_codes() {
    let cases = [
        ("ring R = QQ[x];\nrun groebner J;", "E002"),
        ("ring R = QQ[x];\nideal I = (x) in R;\nrun saturate I;", "E003"),
        ("ring R = QQ[x];\nrun groebner R;", "E004"),
        ("ring R = QQ[x];\nring R = QQ[y];\nrun groebner R;", "E005"),
        ("ring R = QQ[x];\nrun frobnicate R;", "E006"),
    ];
    for (text, code) in cases {
        let out = run_file(code, text, &[]);
        assert_eq!(out.status.code(), Some(1), "{text}");
        assert_eq!(json(&out)["error"]["code"], code, "{text}");
    }
}

#[test]
fn corpus_list_and_single_runs() {
    let out = bin().args(["corpus", "list"]).output().unwrap();
    let listed: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(listed.len(), ENTRIES.len());
    let one = bin().args(["corpus", "run", "ideal_ops.saturate_node"]).output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(json(&one)["passed"], 1);
    let unknown = bin().args(["corpus", "run", "no.such.entry"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn every_corpus_entry_passes() {
    for e in ENTRIES {
        let r = run_entry(e);
        assert!(r.passed, "{}: {:?}", r.name, r.failures);
    }
}

#[test]
fn printed_jobs_parse_back_unchanged() {
    for e in ENTRIES {
        let Ok(job) = parse_syntax(e.job) else { continue };
        let printed = job.to_string();
        let again = parse_syntax(&printed).unwrap_or_else(|d| panic!("{}: {d:?}\n{printed}", e.name));
        assert_eq!(again, job, "{}", e.name);
        assert_eq!(again.to_string(), printed, "{}", e.name);
        assert_eq!(parse_job(&printed).is_ok(), parse_job(e.job).is_ok(), "{}", e.name);
    }
}

#[test]
fn identical_jobs_give_identical_bytes() {
    let a = run_file("det_a", SATURATE, &[]);
    let b = run_file("det_b", SATURATE, &[]);
    assert_eq!(a.stdout, b.stdout);
}
