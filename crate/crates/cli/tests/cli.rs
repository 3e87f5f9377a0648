use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use simsel_cli::{presets, BenchmarkTable};

fn simsel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simsel"))
        .args(args)
        .output()
        .expect("spawn simsel")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const UNSAT: &str = "cnf(a, axiom, p(a)). cnf(b, axiom, ~p(X) | q(X)). cnf(g, negated_conjecture, ~q(a)).";
const SAT: &str = "cnf(a, axiom, p(a)). cnf(g, negated_conjecture, ~q(a)).";
const GROWING: &str = "cnf(a, axiom, p(a)). cnf(s, axiom, ~p(X) | p(s(X))). cnf(g, negated_conjecture, ~q(a)).";

#[test]
fn exit_codes_follow_the_outcome() {
    let dir = tempfile::tempdir().unwrap();
    let unsat = write(dir.path(), "unsat.p", UNSAT);
    let sat = write(dir.path(), "sat.p", SAT);
    let growing = write(dir.path(), "growing.p", GROWING);
    let bad = write(dir.path(), "bad.p", "cnf(a, axiom, p(a)");

    assert_eq!(code(&simsel(&[unsat.to_str().unwrap()])), 0);
    assert_eq!(code(&simsel(&[sat.to_str().unwrap()])), 1);
    assert_eq!(code(&simsel(&[growing.to_str().unwrap(), "--max-processed", "20"])), 2);
    assert_eq!(code(&simsel(&[bad.to_str().unwrap()])), 3);
    assert_eq!(code(&simsel(&[dir.path().join("missing.p").to_str().unwrap()])), 3);
    assert_eq!(code(&simsel(&[unsat.to_str().unwrap(), "--heuristic", "(1*Nope(ConstPrio))"])), 3);
    assert_eq!(code(&simsel(&[unsat.to_str().unwrap(), "--bogus-flag"])), 3);
    assert_eq!(code(&simsel(&[])), 3);
    assert_eq!(code(&simsel(&["--help"])), 0);
}

#[test]
fn json_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let growing = write(dir.path(), "growing.p", GROWING);
    let out = simsel(&[growing.to_str().unwrap(), "--json", "--max-processed", "15", "--heuristic", "term"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["problem"], "growing");
    assert_eq!(v["outcome"], "resource_out");
    assert_eq!(v["limit"], "processed");
    assert_eq!(v["processed"], 15);
    assert_eq!(v["heuristic"], presets::preset("term").unwrap().to_string());
    assert!(v["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert!(v.get("derivation").is_none());
}

#[test]
fn derivation_ends_in_the_empty_clause() {
    let dir = tempfile::tempdir().unwrap();
    let unsat = write(dir.path(), "unsat.p", UNSAT);
    let out = simsel(&[unsat.to_str().unwrap(), "--derivation"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.contains("$false"), "{text}");
    assert!(text.contains("[input]"));

    let out = simsel(&[unsat.to_str().unwrap(), "--derivation", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let lines = v["derivation"].as_array().unwrap();
    assert!(lines.last().unwrap().as_str().unwrap().contains("$false"));
}

#[test]
fn empty_benchmark_directory_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "notes.txt", "not a problem");
    let out = simsel(&["--benchmark", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no problem files"));
}

#[test]
fn benchmark_table_counts_against_the_baseline() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a_unsat.p", UNSAT);
    write(dir.path(), "b_sat.p", SAT);
    write(dir.path(), "c_broken.tptp", "cnf(");
    let out = simsel(&[
        "--benchmark",
        dir.path().to_str().unwrap(),
        "--json",
        "--heuristic",
        "lev",
        "--heuristic",
        "ted",
        "--max-processed",
        "100",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let table: BenchmarkTable = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(table.problems, ["a_unsat", "b_sat", "c_broken"]);
    let names: Vec<&str> = table.rows.iter().map(|r| r.heuristic.as_str()).collect();
    assert_eq!(names.len(), 3);
    assert_eq!(names[0], table.baseline);
    for row in &table.rows {
        assert_eq!(row.solved, 1);
        assert_eq!(row.ref_plus_pct, Some(0.0));
        assert_eq!(row.complementarity, 0);
        assert_eq!(row.runs[2].outcome, "error");
    }
}

#[test]
fn one_heuristic_per_problem() {
    let dir = tempfile::tempdir().unwrap();
    let unsat = write(dir.path(), "unsat.p", UNSAT);
    let out = simsel(&[unsat.to_str().unwrap(), "--heuristic", "lev", "--heuristic", "ted"]);
    assert_eq!(code(&out), 3);
}
