use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lauricella")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gamma_single_block_entry() {
    let out = run(&["gamma", "--config", r#"{"sizes":[2],"weights":["1"]}"#, "--point", r#"["5","2"]"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["k"], 2);
    assert_eq!(entries[0]["i"], 2);
    assert_eq!(entries[0]["j"], 2);
    assert_eq!(entries[0]["value"], "-1");
}

#[test]
fn verify_seeded_passes() {
    let out = run(&["verify", "--config", r#"{"sizes":[3,2],"weights":["1/3","1/2"]}"#, "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert!(checks.iter().any(|c| c["name"] == "dual_curvature"));
    assert_eq!(checks[0]["witness"]["value"], "0");
}

#[test]
fn verify_non_regular_point_exits_2() {
    let out = run(&["verify", "--config", r#"{"sizes":[2],"weights":["1"]}"#, "--point", r#"["5","0"]"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not regular"));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["gamma", "--config", r#"{"sizes":[2],"weights":["1"]"#, "--point", r#"["5","2"]"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gamma", "--config", r#"{"sizes":[2],"weights":["1"]}"#, "--point", r#"["5","x"]"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gamma", "--config", r#"{"sizes":[2,1],"weights":["1"]}"#, "--point", r#"["5","2","1"]"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gamma", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_from_file() {
    let dir = std::env::temp_dir().join(format!("lauricella-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(&path, r#"{"sizes":[1,1],"weights":["1/2","1/3"]}"#).unwrap();
    let out = run(&["dual", "--config", path.to_str().unwrap(), "--point", r#"["2","3"]"#, "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("k\ti\tj\tvalue"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn hierarchy_kodama_first_potential() {
    let out = run(&["hierarchy", "--kodama", "3", "--steps", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    let mut a1: Vec<(String, Vec<u64>)> = steps[1]["a"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["coeff"].as_str().unwrap().to_string(), t["exps"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect()))
        .collect();
    a1.sort();
    assert_eq!(a1, vec![("-1".to_string(), vec![0, 1, 0]), ("-1/2".to_string(), vec![2, 0, 0])]);
}

#[test]
fn hierarchy_flows_checked_at_point() {
    let out = run(&[
        "hierarchy",
        "--config",
        r#"{"sizes":[2,1],"weights":["1/3","-2/5"]}"#,
        "--steps",
        "3",
        "--point",
        r#"["3","2","-1"]"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["report"]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn tsarev_reports() {
    // ε-system in two components with ε = (1/2, 1/3)
    let eps = r#"{"speeds":[[{"coeff":"1/2","exps":[1,0]},{"coeff":"-1/3","exps":[0,1]}],[{"coeff":"-1/2","exps":[1,0]},{"coeff":"2/3","exps":[0,1]}]]}"#;
    let out = run(&["tsarev", "--system", eps, "--point", r#"["3","1"]"#]);
    assert_eq!(out.status.code(), Some(0));
    let non_rich = r#"{"speeds":[[{"coeff":"1","exps":[0,1,0]},{"coeff":"1","exps":[0,0,1]}],[{"coeff":"1","exps":[1,0,1]}],[{"coeff":"1","exps":[1,1,0]}]]}"#;
    let out = run(&["tsarev", "--system", non_rich, "--point", r#"["1","2","4"]"#]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let semi = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "semi_hamiltonian").unwrap();
    assert_eq!(semi["pass"], false);
}

#[test]
fn sweep_is_deterministic() {
    let a = run(&["sweep", "--dim", "3", "--points", "2", "--seed", "4"]);
    let b = run(&["sweep", "--dim", "3", "--points", "2", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["configs"], 7);
    assert_eq!(v["points"], 14);
    let bad = run(&["sweep", "--dim", "0"]);
    assert_eq!(bad.status.code(), Some(2));
}
