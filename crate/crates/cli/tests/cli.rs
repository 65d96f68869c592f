use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gue-equiv"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn without_timestamp(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("# timestamp:") && !l.contains("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn sineref_table() {
    let text = stdout(&["sineref"]);
    let rows = data_rows(&text);
    assert_eq!(rows[0], "t,gap_det,p2,cdf");
    assert_eq!(rows.len(), 62);
    assert!(text.lines().any(|l| l.starts_with("# seed: ")));
    let last: Vec<f64> = rows[61].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 3.0);
    assert!(last[3] > 0.99 && last[3] <= 1.0);
}

#[test]
fn outputs_are_deterministic() {
    let args = ["paircorr", "--T", "20000", "--bins", "0.5", "--max-separation", "2"];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(without_timestamp(&a), without_timestamp(&b));
    assert!(a.contains("# checksum: a2693b8b"));
}

#[test]
fn spacing_pmf_has_unit_mass() {
    let text = stdout(&["spacings", "--K", "2", "--n", "20000", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let columns = v["columns"].as_array().unwrap();
    let mass_col = columns.iter().position(|c| c == "mass").unwrap();
    let total: f64 = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[mass_col].as_f64().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-12, "{total}");
    assert_eq!(v["metadata"]["config"]["big_k"], 2);
}

#[test]
fn run_reproduces_an_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("occ.csv");
    let second = dir.path().join("again.csv");
    let first_s = first.to_str().unwrap();
    stdout(&["occupancy", "--interval", "0,1", "--interval", "1,2", "--samples", "2000", "--out", first_s]);
    stdout(&["run", first_s, "--out", second.to_str().unwrap()]);
    let read = |p: &Path| std::fs::read_to_string(p).unwrap();
    assert_eq!(without_timestamp(&read(&first)), without_timestamp(&read(&second)));
}

#[test]
fn saved_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let out = dir.path().join("synth.json");
    let direct = stdout(&[
        "synth", "--kind", "poisson", "--T", "50", "--seed", "7", "--format", "json",
        "--save-config", cfg.to_str().unwrap(),
    ]);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&cfg).unwrap()).unwrap();
    assert_eq!(saved["command"], "synth");
    assert_eq!(saved["seed"], 7);
    stdout(&["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    let replayed = std::fs::read_to_string(&out).unwrap();
    assert_eq!(without_timestamp(&direct), without_timestamp(&replayed));
}

#[test]
fn unfold_writes_a_reusable_cache() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("z.txt");
    std::fs::write(&table, "14.134725142\n21.022039639\n25.010857580\n").unwrap();
    let cache = dir.path().join("u.bin");
    let args = ["unfold", "--zeros", table.to_str().unwrap(), "--cache", cache.to_str().unwrap()];
    let a = stdout(&args);
    assert!(cache.exists());
    let b = stdout(&args);
    assert_eq!(without_timestamp(&a), without_timestamp(&b));
    assert_eq!(data_rows(&a).len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["occupancy"]).status.code(), Some(1));
    assert_eq!(run(&["sineref", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["unfold", "--zeros", "/no/such/table.txt"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "21.0\n14.1\n").unwrap();
    let out = run(&["unfold", "--zeros", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-monotone at line 2"));

    let pass = run(&["verify", "--only", "1,2"]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&pass.stdout).contains("2 of 2 criteria passed"));
    // an impossible tolerance forces a verification failure
    let fail = run(&["verify", "--only", "2", "--tolerance", "duality=0"]);
    assert_eq!(fail.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&fail.stdout).contains("[FAIL]"));
    assert_eq!(run(&["verify", "--tolerance", "nope=1"]).status.code(), Some(1));
}
