use std::path::PathBuf;
use std::process::{Command, Output};

fn epw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epw")).args(args).env("EPW_THREADS", "2").output().expect("runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("epw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_chern_prints_the_porteous_class() {
    let o = epw(&["verify", "chern"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("40h^3"));
    let j = epw(&["verify", "chern", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["suite"], "chern");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn six_hyperplanes_from_the_command_line() {
    let a = scratch("a-iii.json");
    let a = a.to_str().unwrap();
    assert_eq!(epw(&["menagerie", "--which", "a-iii", "--out", a]).status.code(), Some(0));
    let poly = scratch("a-iii-sextic.json");
    let o = epw(&["build-sextic", "--lagrangian", a, "--out", poly.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&poly).unwrap()).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["exp"], serde_json::json!([1, 1, 1, 1, 1, 1]));
    let o = epw(&["corank", "--lagrangian", a, "--point", "1,1,1,1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
    let o = epw(&["corank", "--lagrangian", a, "--point", "1,0,0,0,0,0"]);
    assert_ne!(stdout(&o).trim(), "0");
}

#[test]
fn theta_enumeration_and_census() {
    let a = scratch("a-plus.json");
    let a = a.to_str().unwrap();
    epw(&["menagerie", "--which", "a-plus", "--out", a]);
    let o = epw(&["theta-enum", "--lagrangian", a]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 40);
    assert_eq!(v["prime"], 3);
    let o = epw(&["census", "--lagrangian", a, "--prime", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let total: u64 = v["corank_counts"].as_object().unwrap().values().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(total, 364);
    assert_eq!(epw(&["theta-enum", "--lagrangian", a, "--prime", "7"]).status.code(), Some(2));
}

#[test]
fn random_and_dual_are_deterministic_involutions() {
    let r1 = epw(&["random", "--seed", "5"]);
    let r2 = epw(&["random", "--seed", "5"]);
    assert_eq!(r1.stdout, r2.stdout);
    let a = scratch("random.json");
    std::fs::write(&a, &r1.stdout).unwrap();
    let d = scratch("dual.json");
    let dd = scratch("dual-dual.json");
    assert_eq!(epw(&["dual", "--lagrangian", a.to_str().unwrap(), "--out", d.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(epw(&["dual", "--lagrangian", d.to_str().unwrap(), "--out", dd.to_str().unwrap()]).status.code(), Some(0));
    let basis = |p: &PathBuf| serde_json::from_str::<serde_json::Value>(&std::fs::read_to_string(p).unwrap()).unwrap()["basis"].clone();
    assert_eq!(basis(&a), basis(&dd));
}

#[test]
fn curve_invariants_and_genlag() {
    let o = epw(&["curve", "--type", "E2dual", "--invariants"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["span_dim"], 3);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["splitting_type"], serde_json::json!([1, 1, 1]));
    let out = scratch("genlag-d.json");
    let o = epw(&["genlag", "--type", "D", "--seed", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    // the emitted Lagrangian reloads and has a corank computable at any point
    assert_eq!(epw(&["corank", "--lagrangian", out.to_str().unwrap(), "--point", "1,2,3,4,5,6"]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_with_two() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"basis": [["1", "0"]]}"#).unwrap();
    let o = epw(&["corank", "--lagrangian", bad.to_str().unwrap(), "--point", "1,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(epw(&["curve", "--type", "Z"]).status.code(), Some(2));
    assert_eq!(epw(&["menagerie", "--which", "a-zero"]).status.code(), Some(2));
    assert_eq!(epw(&["corank", "--lagrangian", "/nonexistent.json", "--point", "1,0,0,0,0,0"]).status.code(), Some(2));
    assert_eq!(epw(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(epw(&["random", "--seed", "x"]).status.code(), Some(2));
}
