use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzznorm"))
        .args(args)
        .env_remove("FUZZNORM_BUDGET_OVERRIDE")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_examples() {
    assert_eq!(
        code(&[
            "check",
            "tnorm:lukasiewicz",
            "--props",
            "axioms,archimedean",
            "--grid",
            "10"
        ]),
        0
    );
    let out = run(&["check", "tnorm:min", "--props", "archimedean"]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verdict"], "FAILS");
    assert!(!json["witnesses"].as_array().unwrap().is_empty());
    assert_eq!(code(&["check", "tnorm:min", "--props", "axioms"]), 0);
}

#[test]
fn substructure_examples() {
    assert_eq!(
        code(&[
            "substructure",
            "--mu",
            "builtin:identity",
            "--carrier",
            "tnorm:min",
            "--kind",
            "t-subnorm"
        ]),
        0
    );
    let out = run(&[
        "substructure",
        "--mu",
        "builtin:identity",
        "--carrier",
        "tnorm:product",
        "--kind",
        "t-subnorm",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("\"1/2\""),
        "witness should mention 1/2: {text}"
    );
    assert_eq!(
        code(&[
            "substructure",
            "--mu",
            "builtin:one",
            "--carrier",
            "uninorm:umax(1/2,product,probsum)",
            "--kind",
            "u-submonoid"
        ]),
        0
    );
}

#[test]
fn vacuous_results_exit_2() {
    // A constant mu makes the fuzzy Archimedean property vacuous.
    assert_eq!(
        code(&[
            "substructure",
            "--mu",
            "builtin:one",
            "--carrier",
            "tnorm:lukasiewicz",
            "--props",
            "farch",
            "--grid",
            "6"
        ]),
        2
    );
}

#[test]
fn parse_errors_exit_64_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "mu.json",
        "{\"form\": \"table\",\n \"entries\": [[\"0\", 1]]}",
    );
    let out = run(&["substructure", "--mu", &bad, "--carrier", "tnorm:min"]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("line 2") && err.contains("entries[0][1]"),
        "{err}"
    );

    assert_eq!(code(&["check", "tnorm:nonsense"]), 64);
    assert_eq!(code(&["check", "tnorm:min", "--grid", "1"]), 64);
    assert_eq!(code(&["frobnicate"]), 64);
}

#[test]
fn partial_subsets_exit_65() {
    let dir = tempfile::tempdir().unwrap();
    let mu = write(
        dir.path(),
        "mu.json",
        r#"{"form":"table","entries":[["0","1"],["1","1"]]}"#,
    );
    let out = run(&[
        "substructure",
        "--mu",
        &mu,
        "--carrier",
        "tnorm:min",
        "--grid",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8(out.stderr).unwrap().contains("not total"));
}

#[test]
fn finite_carrier_files() {
    let dir = tempfile::tempdir().unwrap();
    let carrier = write(
        dir.path(),
        "z2.json",
        r#"{"elements":["e","a"],"op":[["e","a"],["a","e"]],"identity":"e"}"#,
    );
    let good = write(
        dir.path(),
        "good.json",
        r#"{"form":"table","entries":[["e","1"],["a","1/2"]]}"#,
    );
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"form":"table","entries":[["e","1/2"],["a","1"]]}"#,
    );
    assert_eq!(
        code(&[
            "substructure",
            "--mu",
            &good,
            "--carrier",
            &carrier,
            "--kind",
            "subgroup"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "substructure",
            "--mu",
            &bad,
            "--carrier",
            &carrier,
            "--kind",
            "submonoid"
        ]),
        1
    );
}

#[test]
fn vague_command() {
    assert_eq!(
        code(&["vague", "--tnorm", "tnorm:lukasiewicz", "--grid", "4"]),
        0
    );
    // 1-|x-y| is not transitive for the minimum.
    let out = run(&["vague", "--tnorm", "tnorm:min", "--grid", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("NOT_A_FUZZY_EQUALITY"));
}

#[test]
fn lattice_and_enumerate_commands() {
    let dir = tempfile::tempdir().unwrap();
    let diamond = write(
        dir.path(),
        "diamond.json",
        r#"{"elements":["0","a","b","1"],"covers":[["0","a"],["0","b"],["a","1"],["b","1"]]}"#,
    );
    let out = run(&["enumerate", "--lattice", "chain:3"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["count"], 2);
    let out = run(&["enumerate", "--lattice", &diamond]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["count"], 4);

    assert_eq!(
        code(&["lattice", "--lattice", &diamond, "--props", "tnorm,subnorm"]),
        0
    );
    assert_eq!(
        code(&[
            "lattice",
            "--lattice",
            "chain:3",
            "--tnorm",
            "t1",
            "--props",
            "vague"
        ]),
        0
    );
    // On the 2-chain, mu = 1 is a subnorm that is not fuzzy cancellative.
    assert_eq!(
        code(&[
            "lattice",
            "--lattice",
            "chain:2",
            "--mu",
            "const:1",
            "--props",
            "fcancel"
        ]),
        1
    );
    assert_eq!(
        code(&["lattice", "--lattice", "chain:3", "--tnorm", "t9"]),
        64
    );
}

#[test]
fn suite_rows_and_text_output() {
    let out = run(&["suite", "--only", "prop21,prop22"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows
        .iter()
        .all(|r| r["status"] == "CONFIRMED" && r["counterexamples"] == 0));

    let out = run(&["suite", "--only", "prop20", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("prop20"));

    assert_eq!(code(&["suite", "--only", "prop99"]), 64);
    assert_eq!(code(&["suite"]), 64);
}

#[test]
fn budget_override_and_skips() {
    let out = Command::new(env!("CARGO_BIN_EXE_fuzznorm"))
        .args(["suite", "--only", "prop17"])
        .env("FUZZNORM_BUDGET_OVERRIDE", r#"{"max_universe": 10}"#)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("SKIPPED"));

    let out = Command::new(env!("CARGO_BIN_EXE_fuzznorm"))
        .args(["check", "tnorm:min"])
        .env("FUZZNORM_BUDGET_OVERRIDE", r#"{"n_max": "lots"}"#)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn out_flag_and_text_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&[
            "check",
            "tnorm:min",
            "--props",
            "archimedean",
            "--grid",
            "4",
            "--format",
            "text",
            "--out",
            p
        ]),
        1
    );
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("witness (0.25, 0.25)"), "{text}");
}

#[test]
fn json_is_deterministic() {
    let args = [
        "check",
        "uninorm:umin(1/2,product,probsum)",
        "--props",
        "axioms,classify,strict",
        "--grid",
        "6",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
