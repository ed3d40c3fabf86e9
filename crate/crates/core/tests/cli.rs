//! End-to-end runs of the `bohr` binary.

use std::process::{Command, Output};

fn bohr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohr"))
        .args(args)
        .env_remove("BOHR_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn radius_examples() {
    let out = bohr(&["radius", "--theorem", "convex", "--n", "1", "--m", "1", "--t", "0.75"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["radius"], 0.5);

    let out = bohr(&["radius", "--theorem", "deriv", "--n", "1", "--m", "1", "--lambda", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["radius"].as_f64().unwrap();
    assert!((r - 0.3191).abs() < 5e-4);

    let out = bohr(&["radius", "--theorem", "convex", "--n", "2", "--m", "1", "--t", "0"]);
    let r = json(&out)["radius"].as_f64().unwrap();
    assert!((r - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn invalid_parameters_are_usage_errors() {
    let out = bohr(&["radius", "--theorem", "convex", "--t", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(bohr(&["radius", "--theorem", "deriv", "--lambda", "-1"]).status.code(), Some(1));
    assert_eq!(bohr(&["verify", "--theorem", "convex", "--t", "0", "--a-grid", "5"]).status.code(), Some(1));
    assert_eq!(bohr(&[]).status.code(), Some(1));
}

#[test]
fn verify_examples() {
    let out = bohr(&["verify", "--theorem", "convex", "--t", "0", "--a-grid", "200", "--rho-grid", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["violation_count"], 0);
    assert!(v["max_value"].as_f64().unwrap() <= 1.0 + 1e-12);

    let out = bohr(&[
        "verify", "--theorem", "deriv", "--n", "2", "--m", "2", "--lambda", "2", "--a-grid", "100",
        "--rho-grid", "100",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["violation_count"], 0);
}

#[test]
fn inflated_radius_is_caught() {
    let out = bohr(&["verify", "--theorem", "convex", "--t", "0", "--inflate", "0.01"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert!(v["violation_count"].as_u64().unwrap() >= 1);
    let first = &v["violations"][0];
    assert!(first["a"].is_number() && first["rho"].is_number());
}

#[test]
fn verify_with_lemmas() {
    let out = bohr(&["verify", "--theorem", "sq-deriv", "--lambda", "2", "--a-grid", "20", "--rho-grid", "20", "--lemmas"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lemmas"]["passed"], true);
    assert_eq!(v["lemmas"]["seed"], 0x5eed_b0b7u64);
}

#[test]
fn seed_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bohr"))
        .args(["verify", "--theorem", "convex", "--t", "0", "--a-grid", "10", "--rho-grid", "10", "--lemmas"])
        .env("BOHR_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json(&out)["lemmas"]["seed"], 7);
}

#[test]
fn sharpness_reports_witness_or_fails() {
    let out = bohr(&["sharpness", "--theorem", "convex", "--t", "0.3", "--n", "2", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["value"].as_f64().unwrap() > 1.0);

    let out = bohr(&["sharpness", "--theorem", "deriv", "--lambda", "0.25"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_examples() {
    let out = bohr(&["sweep", "--theorem", "convex", "--param", "t", "--from", "0", "--to", "1", "--steps", "101"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "param,radius,rho_root,residual");
    assert_eq!(lines.len(), 102);
    assert_eq!(lines[1], "0,0.333333333333,0.333333333333,0");
    assert!(lines[101].starts_with("1,1,1,"));
    assert!(!text.contains('\r'));

    let out = bohr(&["sweep", "--theorem", "deriv", "--param", "lambda", "--from", "0.1", "--to", "3", "--steps", "291"]);
    let radii: Vec<f64> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(radii.windows(2).all(|w| (w[0] - w[1]).abs() < 5e-3));

    let out = bohr(&["sweep", "--theorem", "convex", "--t", "0.3", "--m", "2", "--param", "n", "--from", "1", "--to", "8"]);
    let radii: Vec<f64> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(radii.len(), 8);
    assert!(radii.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn table_examples() {
    let out = bohr(&[
        "table", "--theorem", "convex", "--n-values", "1,2,3", "--m-values", "1,2", "--params", "0,0.5,0.75,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 24);
    for row in rows {
        let residual: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(residual <= 1e-12);
    }

    let out = bohr(&["table", "--theorem", "convex", "--pairs", "1:1", "--params", "0"]);
    assert_eq!(stdout(&out).lines().nth(1).unwrap(), "1,1,0,0.333333333333,0.333333333333,0");

    let out = bohr(&["table", "--theorem", "convex", "--pairs", "", "--params", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n,m,param,radius,rho_root,residual\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--theorem", "sq-deriv", "--n", "3", "--m", "2", "--lambda", "1.5", "--lemmas", "--a-grid", "30", "--rho-grid", "30"];
    assert_eq!(bohr(&args).stdout, bohr(&args).stdout);
    let args = ["table", "--theorem", "deriv", "--n-values", "1,2", "--m-values", "1,3", "--params", "0.3,1", "--format", "text"];
    assert_eq!(bohr(&args).stdout, bohr(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("bohr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("radius.json");
    let out = bohr(&["radius", "--theorem", "convex", "--t", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((v["radius"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    std::fs::remove_dir_all(&dir).unwrap();
}
