use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamcircle")).args(args).env_remove("HC_BUDGET_MS").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn construct_writes_object_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = hc(&["construct", "arcZ", "--gens", "2,3", "--radius", "12", "--verify", "--out", d]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let art: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("arcZ.json")).unwrap()).unwrap();
    assert_eq!(art["certificate"]["verified_radii"], serde_json::json!([12]));
    let dot = fs::read_to_string(dir.path().join("arcZ.dot")).unwrap();
    assert!(dot.starts_with("graph") || dot.starts_with("digraph"));
}

#[test]
fn saved_object_verifies_again() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(code(&hc(&["construct", "rapaport-k2", "--case", "i", "--m", "2", "--radius", "8", "--out", d])), 0);
    let obj = dir.path().join("rapaport-k2.json");
    let o = hc(&["verify", "--object", obj.to_str().unwrap(), "--radius", "6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(json(&o).as_array().is_some_and(|a| a.len() == 1));
    let dot = fs::read_to_string(dir.path().join("rapaport-k2.dot")).unwrap();
    assert!(dot.contains("penwidth"));
}

#[test]
fn tampered_object_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(code(&hc(&["construct", "arcZ", "--gens", "1", "--out", d])), 0);
    let path = dir.path().join("arcZ.json");
    let mut art: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    // both tails now step by +1, so the negative tail retraces the positive one
    art["object"]["DoubleRay"]["negative"]["period"] = serde_json::json!([0]);
    fs::write(&path, serde_json::to_string(&art).unwrap()).unwrap();
    let o = hc(&["verify", "--object", path.to_str().unwrap(), "--radius", "6"]);
    assert_eq!(code(&o), 2, "{}\n{}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr));
}

#[test]
fn oracle_exit_codes() {
    assert_eq!(code(&hc(&["oracle", "cycle", "--named", "petersen"])), 2);
    assert_eq!(code(&hc(&["oracle", "path", "--named", "petersen"])), 0);
    assert_eq!(code(&hc(&["oracle", "cycle", "--named", "q3"])), 0);
}

#[test]
fn budget_exceeded_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k15_16.txt");
    let mut text = String::from("31\n");
    for i in 0..15 {
        for j in 0..16 {
            text.push_str(&format!("{i} {}\n", 15 + j));
        }
    }
    fs::write(&path, text).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_hamcircle"))
        .args(["oracle", "cycle", "--graph", path.to_str().unwrap()])
        .env("HC_BUDGET_MS", "20")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o), Value::String("BudgetExceeded".into()));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&hc(&["bogus"])), 1);
    assert_eq!(code(&hc(&["construct", "arcZ"])), 1);
    assert_eq!(code(&hc(&["construct", "arcZ", "--gens", "2,4"])), 1);
    assert_eq!(code(&hc(&["construct", "arcZ", "--gens", "1", "--radius", "1"])), 1);
    assert_eq!(code(&hc(&["oracle", "cycle"])), 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["construct", "split-zp", "--radius", "6", "--verify"];
    let a = hc(&args);
    let b = hc(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = hc(&["window", "--gens", "r1,s0,s1", "--radius", "4", "--format", "dot"]);
    let d = hc(&["window", "--gens", "r1,s0,s1", "--radius", "4", "--format", "dot"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn words_with_spaced_names() {
    let o = hc(&["construct", "add-gen", "--gens", "s0,s1", "--a", "b ab", "--verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let art = json(&o);
    assert_eq!(art["certificate"]["route"], "double ladder");
}

#[test]
fn genset_reports() {
    let o = hc(&["genset", "free", "--rank", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["report"]["symbol_count"], 16);
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("s3.toml");
    fs::write(&spec, "family = \"finite\"\ntable = \"S3\"\n").unwrap();
    let o = hc(&["genset", "pak", "--spec", spec.to_str().unwrap(), "--radius", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(json(&o)["report"]["pair_count"].as_u64().unwrap() <= 2);
}
