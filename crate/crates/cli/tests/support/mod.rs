//! Helpers for driving the binary on the fixtures.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use paritycx::json;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

pub fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_paritycx"));
    cmd.args(args).env_remove("PARITY_DESC_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn f(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

/// One invocation of every subcommand, on the fixtures.
pub fn documented_commands() -> Vec<Vec<String>> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        s(&["build", "point"]),
        s(&["build", "interval"]),
        s(&["build", "simplex", "3"]),
        s(&["build", "cube", "2"]),
        s(&["build", "glob", "3"]),
        s(&["combine", "product", &f("interval.json"), &f("simplex1.json")]),
        s(&["combine", "join", &f("point.json"), &f("simplex1.json")]),
        s(&["combine", "rcone", &f("simplex1.json")]),
        s(&["combine", "lcone", &f("simplex1.json")]),
        s(&["check", &f("simplex2.json")]),
        s(&["check", &f("z2.json")]),
        s(&["check", &f("hom_arrow_z2.json")]),
        s(&["check", &f("chain_simplex2.json")]),
        s(&["cells", &f("simplex2.json")]),
        s(&["cells", &f("square.json"), "--dim", "1"]),
        s(&["cells", &f("glob2.json"), "--atoms-only"]),
        s(&["atom", &f("simplex2.json"), "012"]),
        s(&["order", &f("square.json")]),
        s(&["order", &f("simplex2.json"), "--dot"]),
        s(&["snapshot", &f("simplex2.json")]),
        s(&["nerve", &f("path.json")]),
        s(&["nerve", &f("path.json"), "--classical"]),
        s(&["cosimp", "hom", &f("arrow.json"), &f("z2.json"), "--top", "2"]),
        s(&["cosimp", "constant", &f("z2.json")]),
        s(&["desc", &f("hom_arrow_z2.json")]),
        s(&["desc", &f("hom_z2_arrow.json"), "--method", "both"]),
        s(&["desc", &f("constant_triangle.json"), "--n", "2", "--method", "general"]),
        s(&["chain", &f("square.json")]),
        s(&["homology", &f("chain_simplex2.json")]),
        s(&["theta", &f("theta_input.json")]),
        s(&["theta", &f("theta_input.json"), "--groups"]),
        s(&["iso", &f("simplex1.json"), &f("interval.json")]),
    ]
}

/// Parses a fixture with the matching reader and writes it back canonically.
pub fn reserialize(text: &str) -> String {
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    if v.get("elements").is_some() {
        json::complex_to_json(&json::complex_from_json(text).unwrap())
    } else if v.get("cells").is_some() {
        json::cat_to_json(&json::cat_from_json(text).unwrap())
    } else if v.get("cofaces").is_some() {
        json::cosimp_to_json(&json::cosimp_from_json(text).unwrap())
    } else if v.get("basis").is_some() {
        json::chain_to_json(&json::chain_from_json(text).unwrap())
    } else {
        json::simplicial_to_json(&json::simplicial_from_json(text).unwrap())
    }
}

/// Every fixture that should parse, by file name.
pub fn valid_fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "malformed.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}
