mod common;

use decause::cli::run_cli;
use decause::corpus;
use decause::io::{parse_problem, serialize_model};

fn run(args: &[&str]) -> (i32, String, String) {
    std::env::set_current_dir(common::crate_dir()).unwrap();
    run_cli(std::iter::once("decause").chain(args.iter().copied()))
}

#[test]
fn golden_transcripts() {
    let bad = common::check_goldens(&common::golden_dir());
    assert!(bad.is_empty(), "mismatched transcripts: {bad:?}");
}

#[test]
fn output_files() {
    let dir = std::env::temp_dir().join(format!("decause-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("medical.diagram.json");
    let (code, stdout, stderr) = run(&["canonicalize", "corpus/medical.table.json", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{stderr}");
    assert!(stdout.is_empty());
    assert!(stderr.starts_with("wrote "));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), corpus::text("fig1b.diagram.json"));

    let theory = dir.join("theory.json");
    let (code, stdout, stderr) = run(&["export-pearl", "corpus/fig2b.diagram.json", "-o", theory.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert!(stderr.contains("parameters: 13 -> 31"), "{stderr}");
    let doc = parse_problem(&std::fs::read_to_string(&theory).unwrap()).unwrap().into_diagram().unwrap();
    assert!(doc.by_name("t(r,g)").is_ok());

    let table = dir.join("bet.table.json");
    let (code, _, _) = run(&["flatten", "corpus/bet.model.json", "-o", table.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["independent", table.to_str().unwrap(), "--x", "w"]);
    assert_eq!((code, stdout.as_str()), (0, "independent\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_results_parse() {
    let commands: [&[&str]; 7] = [
        &["validate", "corpus/omelet.table.json"],
        &["unresponsive", "corpus/omelet.table.json", "--x", "o", "--limit"],
        &["independent", "corpus/bet.table.json", "--x", "w"],
        &["causes", "corpus/medical.table.json", "--x", "c"],
        &["mapvar", "corpus/medical.table.json", "--x", "t", "--y", "r"],
        &["check-canonical", "corpus/fig1a.diagram.json", "corpus/medical.table.json"],
        &["selftest", "--budget", "40"],
    ];
    for args in commands {
        let mut v: Vec<&str> = args.to_vec();
        v.extend(["--format", "json"]);
        let (code, out, err) = run(&v);
        assert!(code <= 1, "{args:?}: {err}");
        serde_json::from_str::<serde_json::Value>(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    }
}

#[test]
fn witness_names_state_and_alternatives() {
    let (code, out, _) = run(&["unresponsive", "corpus/omelet.table.json", "--x", "o", "--limit", "--format", "json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witness"]["state"], "good");
    assert_eq!(v["witness"]["alternatives"][0], "d=break_into_bowl");
    assert_eq!(v["witness"]["alternatives"][1], "d=throw_away");
}

#[test]
fn help_and_version_succeed() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in [
        "validate", "unresponsive", "independent", "causes", "mapvar", "canonicalize", "flatten", "check-canonical", "dsep",
        "params", "export-pearl", "export-dot", "selftest",
    ] {
        assert!(out.contains(sub), "help lists {sub}");
    }
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn invalid_documents() {
    let dir = std::env::temp_dir().join(format!("decause-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let syntax = dir.join("syntax.json");
    std::fs::write(&syntax, "{\n  \"kind\": ").unwrap();
    let (code, _, err) = run(&["validate", syntax.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    let mut doc: serde_json::Value = serde_json::from_str(corpus::text("bet.table.json")).unwrap();
    doc["states"][0]["probability"] = "1/3".into();
    let invalid = dir.join("invalid.json");
    std::fs::write(&invalid, doc.to_string()).unwrap();
    let (code, out, _) = run(&["validate", invalid.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid: "), "{out}");
    let (code, _, _) = run(&["causes", invalid.to_str().unwrap(), "--x", "w"]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn canonicalize_accepts_structural_input() {
    let (code, out, _) = run(&["canonicalize", "corpus/medical-gene.model.json"]);
    assert_eq!(code, 0);
    let d = parse_problem(&out).unwrap().into_diagram().unwrap();
    assert_eq!(serialize_model(&d), out);
}
