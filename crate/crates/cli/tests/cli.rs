use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewbrace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!(
        "{}/../core/fixtures/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    )
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validates_the_zero_brace() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        &dir,
        "zero.json",
        r#"{"order": 1, "add": [[0]], "mul": [[0]]}"#,
    );
    let out = run(&["validate", &p]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn rejects_tables_that_are_not_a_brace() {
    let dir = tempfile::tempdir().unwrap();
    // Z/2 with a constant multiplication is not even a group
    let p = write(
        &dir,
        "bad.json",
        r#"{"order": 2, "add": [[0,1],[1,0]], "mul": [[0,0],[0,0]]}"#,
    );
    assert_eq!(run(&["validate", &p]).status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "broken.json", "{ not json");
    assert_eq!(run(&["validate", &p]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["validate"]).status.code(), Some(2));
}

#[test]
fn fixture_inputs_resolve_named_sets() {
    let out = run(&["ideals", &fixture("b24")]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "ideal");
    assert!(v["count"].as_u64().unwrap() >= 2);

    let out = run(&["subideal", &fixture("b24"), "--set", "SocI"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["analyze", "B16"],
        vec!["commutator", "B16", "--samples", "500", "--seed", "7"],
        vec!["series", "B16", "--kind", "chief", "--seed", "3"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if *a == "B16" {
                    fixture("b16")
                } else {
                    a.to_string()
                }
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(
            a.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn enumerate_reports_known_count() {
    let out = run(&["enumerate", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 6);
}

#[test]
fn json_flag_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["--json", path.to_str().unwrap(), "ybe", &fixture("b16")]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    let v: Value = serde_json::from_slice(&written).unwrap();
    assert_eq!(v, serde_json::from_slice::<Value>(&out.stdout).unwrap());
}
