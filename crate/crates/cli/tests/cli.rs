use goguen_core::builtin_quantale;
use std::path::PathBuf;
use std::process::{Command, Output};

fn goguen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goguen")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("goguen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn builtin_quantale_passes() {
    let out = goguen(&["check-quantale", "builtin:lukasiewicz:4"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn corrupted_tensor_fails_with_witness() {
    let q = builtin_quantale("lukasiewicz:4").unwrap();
    let mut def = q.to_def();
    def.tensor[1][2] = "1/3".into();
    let path = scratch("corrupt.json");
    std::fs::write(&path, serde_json::to_string(&def).unwrap()).unwrap();
    let report_path = scratch("corrupt-report.json");
    let out = goguen(&["check-quantale", path.to_str().unwrap(), "--json", report_path.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["overall"], "fail");
    let assoc = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "associativity").unwrap();
    assert_eq!(assoc["status"], "fail");
    assert!(assoc["counterexample"].is_object());
}

#[test]
fn missing_and_malformed_inputs_exit_2() {
    assert_eq!(code(&goguen(&["check-quantale", "/nonexistent/q.json"])), 2);
    let path = scratch("garbage.json");
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(code(&goguen(&["check-quantale", path.to_str().unwrap()])), 2);
    assert_eq!(code(&goguen(&["verify", "no-such-suite"])), 2);
    assert_eq!(code(&goguen(&["verify", "step1", "--quantale", "builtin:nope"])), 2);
    assert_eq!(code(&goguen(&["verify", "step1", "--max-size", "x"])), 2);
}

#[test]
fn step1_sweep_and_gate() {
    let out = goguen(&["verify", "step1", "--quantale", "builtin:lukasiewicz:3", "--max-size", "2"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = goguen(&["verify", "step1", "--quantale", "builtin:endo:3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("hypothesis-unmet"));
}

#[test]
fn verify_reports_are_byte_identical() {
    let args = |p: &str| {
        vec![
            "verify",
            "monad:P2",
            "--quantale",
            "builtin:bool",
            "--max-size",
            "1",
            "--samples",
            "256",
            "--seed",
            "42",
            "--json",
        ]
        .into_iter()
        .map(String::from)
        .chain([p.to_string()])
        .collect::<Vec<_>>()
    };
    let (a, b) = (scratch("p2-a.json"), scratch("p2-b.json"));
    for p in [&a, &b] {
        let argv = args(p.to_str().unwrap());
        let out = goguen(&argv.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(code(&out), 0, "{}", stdout(&out));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn enumeration_counts() {
    for (args, expected) in [
        (vec!["enumerate", "filters", "--quantale", "builtin:bool", "--size", "2"], "3"),
        (vec!["enumerate", "algebras", "--quantale", "builtin:bool", "--size", "3"], "6"),
        (vec!["enumerate", "filters", "--quantale", "builtin:lukasiewicz:3", "--size", "1"], "1"),
    ] {
        let out = goguen(&args);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out).trim(), expected, "{args:?}");
    }
}

#[test]
fn enumeration_json_listing() {
    let path = scratch("filters.json");
    let out = goguen(&["enumerate", "filters", "--size", "1", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let listing: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(listing["count"], 1);
    assert_eq!(listing["items"][0]["table"], serde_json::json!({"0": "0", "1": "1"}));
    assert_eq!(listing["arguments"], serde_json::json!([["0"], ["1"]]));
}

#[test]
fn suites_are_listed() {
    let out = goguen(&["suites"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 29);
}
