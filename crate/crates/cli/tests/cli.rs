use assert_cmd::Command;
use serde_json::Value;

fn occupancy() -> Command {
    Command::cargo_bin("occupancy").unwrap()
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = occupancy().args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (json, code)
}

#[test]
fn occupancy_of_k33() {
    let (r, code) = report(&["occupancy", "--graph", "kdd:3", "--lambda", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["occupancy"], "4/15");
    assert_eq!(r["verdict"], "pass");
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "inputs", "results", "verdict", "timing"]);
}

#[test]
fn grid_reports_a_list() {
    let (r, code) = report(&["occupancy", "--graph", "cycle:6", "--grid", "1/2,1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"][1]["occupancy"], "5/18");
}

#[test]
fn certificates_pass() {
    let (r, code) = report(&["certify", "hardcore", "--d", "3", "--lambda", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["valid"], true);
    assert_eq!(r["results"]["dual_values"]["Lambda_1"], "16/15");
    let (r, code) = report(&["certify", "matching", "--d", "3", "--lambda", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "pass");
}

#[test]
fn usage_errors_exit_2() {
    occupancy().args(["certify", "matching", "--d", "3", "--lambda", "0"]).assert().code(2);
    occupancy().args(["occupancy", "--graph", "kdd:3", "--lambda", "0.5"]).assert().code(2);
    occupancy().args(["frobnicate"]).assert().code(2);
    occupancy().args(["counts", "wheel:5"]).assert().code(2);
}

#[test]
fn capability_errors_exit_3() {
    occupancy().args(["counts", "hypercube:6"]).assert().code(3);
}

#[test]
fn counts_and_tree() {
    let (r, _) = report(&["counts", "cycle:8"]);
    assert_eq!(r["results"]["independent"], serde_json::json!([1, 8, 20, 16, 2]));
    let (r, code) = report(&["tree", "--d", "3", "--lambda", "1", "--tol", "1/1000000"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["lambda_c"], "4");
    let mid = r["results"]["midpoint"].as_f64().unwrap();
    assert!((mid - 0.2411).abs() < 1e-4);
}

#[test]
fn corpus_files() {
    let dir = std::env::temp_dir().join(format!("occupancy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // C6 and the Petersen graph in graph6.
    let g6 = dir.join("corpus.g6");
    std::fs::write(&g6, "EhEG\nIheA@GUAo\n").unwrap();
    let path = g6.to_str().unwrap();
    let (r, code) = report(&["verify", "given-size", "--corpus", path]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "not-applicable");
    let (r, code) = report(&["verify", "lower-bound", "--corpus", path, "--lambda", "1"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["results"][0]["report"]["verdict"], "pass");
    assert!(r["results"][1]["skipped"].as_str().unwrap().contains("bipartite"));

    let el = dir.join("c4.txt");
    std::fs::write(&el, "4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let spec = format!("file:{}", el.to_str().unwrap());
    let (r, _) = report(&["--format", "edgelist", "occupancy", "--graph", &spec, "--lambda", "1"]);
    assert_eq!(r["results"]["occupancy"], "2/7");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn conjectures_never_fail() {
    let (r, code) = report(&["conjectures", "--corpus", "bundled"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "pass");
}

#[test]
fn selftest_quick_and_mutation() {
    occupancy().args(["selftest", "--quick"]).assert().code(0);
    let out = occupancy().args(["selftest", "--quick", "--mutate-gamma-f"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0,0,1)"));
}
