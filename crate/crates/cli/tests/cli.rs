use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lierig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lierig")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lierig-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn algebra_check_builtins() {
    for name in ["sl2", "heisenberg3", "abelian(3)", "w1"] {
        let out = lierig(&["algebra", "check", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(report(&out)["pass"], true);
    }
    let w1 = report(&lierig(&["algebra", "check", "--algebra", "w1"]));
    assert_eq!(w1["report"]["scan_bound"], 24);
}

#[test]
fn algebra_check_reports_antisymmetry_indices() {
    let path = scratch_file(
        "skewless.json",
        r#"{"basis": ["a", "b"], "brackets": [{"i": 0, "j": 1, "out": {"a": "1"}}, {"i": 1, "j": 0, "out": {"a": "1"}}]}"#,
    );
    let out = lierig(&["algebra", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["report"]["antisymmetry_violations"][0], serde_json::json!(["a", "b"]));
}

#[test]
fn malformed_file_is_a_usage_error_with_location() {
    let path = scratch_file("broken.json", "{\"basis\": [\"a\",\n  \"b\"] \"brackets\": []}");
    let out = lierig(&["algebra", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lierig(&["cohomology", "lie"]).status.code(), Some(2));
    assert_eq!(lierig(&["cohomology", "lie", "nosuch"]).status.code(), Some(2));
    assert_eq!(lierig(&["certify", "sl2", "--max-degree", "0"]).status.code(), Some(2));
    assert_eq!(lierig(&["verify", "forms", "--expr", "w1 +"]).status.code(), Some(2));
}

#[test]
fn leibniz_sl2_vanishes() {
    let r = report(&lierig(&["cohomology", "leibniz", "sl2", "--max-degree", "4"]));
    let betti: Vec<u64> = r["report"]["slices"].as_array().unwrap().iter().map(|s| s["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, vec![1, 0, 0, 0, 0]);
}

#[test]
fn w1_weight_zero_tables() {
    let lie = report(&lierig(&["cohomology", "lie", "w1", "--weight", "0", "--max-degree", "4"]));
    assert_eq!(lie["report"]["slices"][3]["betti"], 1);
    assert_eq!(lie["report"]["weight_window"], Value::Null);
    let coad = report(&lierig(&["cohomology", "coadjoint", "--algebra", "w1", "--weight", "0", "--max-degree", "5"]));
    let betti: Vec<u64> = coad["report"]["slices"].as_array().unwrap().iter().map(|s| s["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, vec![0, 0, 1, 1, 0, 0]);
}

#[test]
fn window_is_recorded() {
    let r = report(&lierig(&["cohomology", "lie", "w1", "--weight-window", "1", "--max-degree", "2"]));
    assert_eq!(r["report"]["weight_window"], 1);
    assert_eq!(r["config"]["weight_window"], 1);
    assert_eq!(r["report"]["slices"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_targets_pass() {
    for args in [
        &["verify", "maps", "sl2"][..],
        &["verify", "maps", "heisenberg3"],
        &["verify", "les", "heisenberg3"],
        &["verify", "filtration", "sl2"],
        &["verify", "forms"],
        &["verify", "maurer-cartan", "--k", "8"],
        &["verify", "zeta"],
    ] {
        let out = lierig(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let z = report(&lierig(&["verify", "zeta"]));
    assert_eq!(z["report"]["image"], "w1'^w0^w1^w2");
    let mc = report(&lierig(&["verify", "maurer-cartan", "--k", "8"]));
    assert_eq!(mc["report"]["maurer_cartan"]["epsilon"], 1);
}

#[test]
fn forms_expression() {
    let r = report(&lierig(&["verify", "forms", "--expr", "d(w2)"]));
    assert_eq!(r["report"]["expr"]["normal_form"], "w0^w3 + w1^w2");
    assert_eq!(r["report"]["expr"]["differential"], "0");
}

#[test]
fn certificates() {
    let sl2 = report(&lierig(&["certify", "sl2", "--max-degree", "4"]));
    let verdicts: Vec<&str> = sl2["report"]["verdicts"].as_array().unwrap().iter().map(|v| v["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, vec!["rigid"; 4]);
    let w1 = report(&lierig(&["certify", "w1", "--max-degree", "4", "--weight-window", "1"]));
    let verdicts: Vec<&str> = w1["report"]["verdicts"].as_array().unwrap().iter().map(|v| v["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, vec!["rigid", "rigid", "not-certified", "not-certified"]);
    assert_eq!(w1["report"]["weight_window"], 1);
    let line = lierig(&["certify", "abelian(1)", "--max-degree", "1"]);
    assert_eq!(line.status.code(), Some(0));
    assert_eq!(report(&line)["report"]["verdicts"][0]["verdict"], "not-certified");
}

#[test]
fn same_seed_same_bytes() {
    let a = lierig(&["verify", "forms", "--seed", "7"]);
    let b = lierig(&["verify", "forms", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["config"]["seed"], 7);
    let c = lierig(&["verify", "forms", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("lierig-out-{}.json", std::process::id()));
    let out = lierig(&["certify", "sl2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["report"]["routes_agree"], true);
    std::fs::remove_file(path).ok();
}
