use std::path::PathBuf;
use std::process::{Command, Output};

fn hypcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypcheck")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hypcheck-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn eval_prints_value_and_bound() {
    let o = hypcheck(&["eval", "--a", "1/2", "--b", "1/2", "--c", "3/2", "--z", "1/4", "--digits", "30"]);
    assert_eq!(code(&o), 0);
    // arcsin(1/2)/(1/2) = π/3
    assert!(stdout(&o).contains("1.04719755119659774615421446109"), "{}", stdout(&o));
}

#[test]
fn eval_json_and_forced_strategies_agree() {
    let run = |s: &str| {
        let o = hypcheck(&[
            "eval",
            "--a",
            "1/3",
            "--b",
            "1/2",
            "--c",
            "2",
            "--z",
            "-1/2",
            "--digits",
            "40",
            "--strategy",
            s,
            "--report",
            "json",
        ]);
        assert_eq!(code(&o), 0, "{s}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["value"].as_str().unwrap()[..40].to_string()
    };
    let series = run("series");
    assert_eq!(series, run("integral"));
    assert_eq!(series, run("auto"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&hypcheck(&["eval", "--a", "one", "--b", "1", "--c", "1", "--z", "0"])), 3);
    assert_eq!(code(&hypcheck(&["eval", "--a", "1/2", "--b", "1/2", "--c", "0", "--z", "1/2"])), 3);
    assert_eq!(
        code(&hypcheck(&["eval", "--a", "1/2", "--b", "1/2", "--c", "1", "--z", "2", "--strategy", "series"])),
        3
    );
    assert_eq!(code(&hypcheck(&["frobnicate"])), 3);
    assert_eq!(code(&hypcheck(&["verify", "--only", "no-such-record"])), 3);
    assert_eq!(code(&hypcheck(&["--help"])), 0);
}

#[test]
fn verify_exit_codes_follow_verdicts() {
    let o = hypcheck(&["verify", "--only", "campbell-levrie", "--only", "apagodu-zeilberger"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("2 pass"));

    let o = hypcheck(&["verify", "--only", "conclusion", "--report", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["entries"][0]["verdict"], "fail");
    let diag = v["entries"][0]["diagnostics"][0].as_str().unwrap();
    assert!(diag.contains("lhs 0.9031416027") && diag.contains("rhs 0.5394337240"), "{diag}");

    let o = hypcheck(&["verify", "--only", "conclusion-corrected"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_custom_catalogs() {
    let empty = scratch_file("empty.json", r#"{"schema_version": 1, "records": []}"#);
    assert_eq!(code(&hypcheck(&["verify", "--catalog", empty.to_str().unwrap()])), 0);

    let mixed = scratch_file(
        "mixed.json",
        r#"{"schema_version": 1, "records": [
          {"id": "later", "kind": "oracle-lookup", "source": "a newer tool"},
          {"id": "quarter", "kind": "point-evaluation", "source": "arcsine",
           "lhs": {"params": {"a": "1/2", "b": "1/2", "c": "3/2"}, "z": "1/4"},
           "rhs": {"gamma": {"pi": "1", "rat": [["3", "-1"]]}}}]}"#,
    );
    let o = hypcheck(&["verify", "--catalog", mixed.to_str().unwrap(), "--digits", "40", "--jobs", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("1 pass, 0 fail, 0 inconclusive, 1 skipped"));

    let broken = scratch_file("broken.json", r#"{"schema_version": 1, "records": [{"id": "x"}]}"#);
    let o = hypcheck(&["verify", "--catalog", broken.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.json"));
    for p in [empty, mixed, broken] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn derive_chain_writes_trace() {
    let trace = std::env::temp_dir().join(format!("hypcheck-cli-{}-trace.json", std::process::id()));
    let o = hypcheck(&["derive-chain", "--digits", "150", "--trace", trace.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("final parameters: (7/48, 31/48; 9/8)"));
    assert!(out.contains("29884728384/34239431521 (matches printed: true)"));
    assert!(out.contains("verdict: equal-within-bounds"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(v["final_argument"], "29884728384/34239431521");
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    let _ = std::fs::remove_file(trace);
}

#[test]
fn proof_check_and_quadcheck() {
    let o = hypcheck(&["proof-check", "--b", "3/4", "--digits", "40", "--report", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["steps"].as_array().unwrap().iter().all(|s| s["verdict"] == "equal-within-bounds"));
    // outside the range where the proof's integrals converge
    assert_eq!(code(&hypcheck(&["proof-check", "--b", "1/4"])), 3);

    let o = hypcheck(&["quadcheck", "--expr", "beta", "--x", "2/3", "--y", "5/4", "--digits", "40"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = hypcheck(&["quadcheck", "--expr", "euler", "--a", "1/4", "--b", "1/3", "--c", "5/3", "--digits", "40"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&hypcheck(&["quadcheck", "--expr", "euler", "--a", "1", "--b", "1", "--c", "3/2"])), 3);
}
