use std::process::Command;

use hochrr_cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, REPORT_SCHEMA};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hochrr").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn invoke_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, _) = invoke(&all);
    (code, serde_json::from_str(&out).unwrap())
}

fn validate(doc: &Value) {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{e} at {}", e.instance_path))
            .collect(),
    };
    panic!("schema violations: {msgs:?}\n{doc:#}");
}

#[test]
fn rr_verify_examples() {
    let (code, doc) = invoke_json(&["rr-verify", "--variety", "P2", "--sheaf", "O(3)"]);
    assert_eq!(code, EXIT_OK);
    let r = &doc["result"]["reports"][0];
    assert_eq!(
        (r["chi_cohomology"].as_str(), r["chi_rr"].as_str()),
        (Some("10"), Some("10"))
    );
    let (code, doc) = invoke_json(&["rr-verify", "--variety", "P1xP1", "--sheaf", "O(2,3)"]);
    assert_eq!(code, EXIT_OK);
    let r = &doc["result"]["reports"][0];
    assert_eq!(
        (r["chi_cohomology"].as_str(), r["chi_rr"].as_str()),
        (Some("12"), Some("12"))
    );
}

#[test]
fn coefficients_example() {
    let (code, doc) = invoke_json(&["coefficients", "--which", "l", "--order", "4"]);
    assert_eq!(code, EXIT_OK);
    let cs: Vec<&str> = doc["result"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(cs, ["1", "-1/2", "1/12", "0", "-1/720"]);
    let (_, text, _) = invoke(&["coefficients", "--which", "t", "--order", "2"]);
    assert_eq!(text, "t_1..t_2 = [-1/2, -1/24]\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &[][..],
        &["rr-verify", "--variety", "P2"][..],
        &["rr-verify", "--variety", "Q2", "--sheaf", "O"][..],
        &["rr-verify", "--variety", "P2", "--sheaf", "O(3"][..],
        &["rr-verify", "--variety", "P2", "--sheaf", "O(1,1)"][..],
        &["hh", "--nvars", "9"][..],
        &["coefficients", "--which", "q"][..],
        &["todd", "--variety", "P2", "--no-such-flag"][..],
    ] {
        let (code, _, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, doc) = invoke_json(&["rr-verify", "--variety", "P2", "--sheaf", "wedge^3 T"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(doc["status"], "error");
    validate(&doc);
}

#[test]
fn failures_are_not_usage_errors() {
    // every identity holds, so exit 1 only arises from a genuine mismatch:
    // truncating the cochains below the tensor length breaks the dimension count
    let (code, doc) = invoke_json(&["hh", "--nvars", "2", "--max-degree", "1"]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(doc["status"], "failure");
    validate(&doc);
}

#[test]
fn every_command_validates_against_the_schema() {
    let jobs: &[&[&str]] = &[
        &[
            "hh",
            "--nvars",
            "2",
            "--max-length",
            "2",
            "--max-degree",
            "3",
        ],
        &["hkr-check", "--nvars", "2", "--max-degree", "3"],
        &[
            "cohomology",
            "--variety",
            "P2",
            "--sheaf",
            "O(-4)",
            "--sheaf",
            "T",
        ],
        &["chern", "--variety", "P1xP1", "--sheaf", "O(1,2)"],
        &["todd", "--variety", "P2"],
        &["atiyah-check", "--variety", "P1"],
        &["todd-annihilation", "--variety", "P1"],
        &["l-adjoint", "--variety", "P1"],
        &[
            "rr-verify",
            "--variety",
            "P2",
            "--sheaf",
            "T",
            "--sheaf",
            "Omega^1(1)",
        ],
        &["coefficients", "--which", "t", "--order", "6"],
    ];
    for job in jobs {
        let (code, doc) = invoke_json(job);
        assert_eq!(code, EXIT_OK, "{job:?} {doc:#}");
        assert_eq!(doc["command"], job[0]);
        validate(&doc);
    }
}

#[test]
fn reports_are_deterministic() {
    let job = ["atiyah-check", "--variety", "P2", "--json"];
    let (_, a, _) = invoke(&job);
    let (_, b, _) = invoke(&job);
    assert_eq!(a, b);
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("hochrr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    std::fs::write(
        &path,
        r#"{"command": "rr-verify", "variety": "P2", "sheaf": ["O(3)"], "json": true}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = invoke(&["--config", p]);
    assert_eq!(code, EXIT_OK);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["result"]["reports"][0]["chi_rr"], "10");
    let (_, out, _) = invoke(&["--config", p, "--sheaf", "O(1)"]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["result"]["reports"][0]["chi_rr"], "3");
    std::fs::write(&path, r#"{"command": "todd", "colour": "blue"}"#).unwrap();
    assert_eq!(invoke(&["--config", p]).0, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hochrr");
    let ok = Command::new(bin)
        .args(["rr-verify", "--variety", "P1", "--sheaf", "O(4)"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout),
        "O(4) on P1: chi_cohomology = 5, chi_rr = 5, equal\n"
    );
    let bad = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let window = Command::new(bin)
        .args(["cohomology", "--variety", "P2", "--sheaf", "O(6)"])
        .env("HOCHRR_MAX_WINDOW", "1")
        .output()
        .unwrap();
    assert_eq!(window.status.code(), Some(EXIT_USAGE));
}
