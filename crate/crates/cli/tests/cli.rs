use std::collections::HashMap;
use std::process::{Command, Output};

use concave_core::exact::partition_pairs;
use concave_core::stats::chi_square;
use concave_core::Partition;

fn tool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concave-lab"))
        .args(args)
        .env_remove("CONCAVE_LAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn manifest(o: &Output) -> serde_json::Value {
    let err = String::from_utf8_lossy(&o.stderr);
    serde_json::from_str(err.lines().last().unwrap()).unwrap()
}

#[test]
fn count_prints_v3() {
    let o = tool(&["count", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "V(3) = 13\n");
    let m = manifest(&o);
    assert_eq!(m["exit_status"], 0);
    assert_eq!(m["config"]["n"], 3);
}

#[test]
fn count_empty_table() {
    let o = tool(&["count", "--n-max", "0"]);
    assert_eq!(
        stdout(&o),
        "{\"n_max\":0,\"p\":[\"1\"],\"p2\":[\"1\"],\"v\":[\"1\"]}\n"
    );
}

#[test]
fn count_asymptotic_ratio() {
    let o = tool(&["count", "--n", "1000", "--check-asymptotic"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let ratio: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((ratio - 0.9819).abs() < 1e-3, "{line}");
}

#[test]
fn exit_codes() {
    assert_eq!(tool(&["count", "--n-max", "20000"]).status.code(), Some(2));
    assert_eq!(tool(&["enumerate", "--n", "26"]).status.code(), Some(2));
    assert_eq!(
        tool(&["sample", "--n", "20000", "--uniform"]).status.code(),
        Some(3)
    );
    assert_eq!(
        tool(&["verify", "weights", "--n", "300"]).status.code(),
        Some(4)
    );
    assert_eq!(
        tool(&["verify", "weights", "--n", "300", "--warn-only"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        tool(&["sample", "--n", "0", "--boltzmann"]).status.code(),
        Some(5)
    );
    assert_eq!(tool(&["sample", "--n", "3"]).status.code(), Some(5));
    assert_eq!(tool(&["verify", "gravity"]).status.code(), Some(5));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_concave-lab"))
        .args(["sample", "--n", "40", "--uniform"])
        .env("CONCAVE_LAB_BUDGET", "30")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_concave-lab"))
        .args(["sample", "--n", "40", "--uniform"])
        .env("CONCAVE_LAB_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "n = 5\nseed = 9\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(stdout(&tool(&["count", "--config", c])), "V(5) = 44\n");
    assert_eq!(
        stdout(&tool(&["count", "--config", c, "--n", "4"])),
        "V(4) = 23\n"
    );
    std::fs::write(&cfg, "n = 5\nsed = 9\n").unwrap();
    assert_eq!(tool(&["count", "--config", c]).status.code(), Some(5));
}

#[test]
fn files_end_with_newline_and_manifest_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let man = dir.path().join("m.json");
    let o = tool(&[
        "verify",
        "weights",
        "--n",
        "100",
        "--warn-only",
        "--out",
        out.to_str().unwrap(),
        "--manifest",
        man.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("k,w\n0,"));
    assert!(csv.ends_with('\n'));
    assert_eq!(csv.lines().count(), 102);
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&man).unwrap()).unwrap();
    assert_eq!(m["reports"].as_array().unwrap().len(), 3);
    assert_eq!(m["pass"], false);
}

#[test]
fn uniform_samples_at_three_are_uniform() {
    let o = tool(&[
        "sample",
        "--n",
        "3",
        "--uniform",
        "-m",
        "100000",
        "--seed",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let pairs = partition_pairs(3);
    let index: HashMap<_, _> = pairs
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut observed = vec![0u64; pairs.len()];
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let part = |k: &str| Partition::new(serde_json::from_value(v[k].clone()).unwrap()).unwrap();
        observed[index[&(part("minus"), part("plus"))]] += 1;
    }
    let r = chi_square(&observed, &[0.1; 10], 1e-3).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn sample_stats_csv() {
    let o = tool(&[
        "sample",
        "--n",
        "500",
        "--boltzmann",
        "-m",
        "3",
        "--stats",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("index,trials,len_minus"));
    assert!(lines[3].starts_with("2,1,"));
}

#[test]
fn figure_composition_profile() {
    let o = tool(&[
        "shape",
        "--n",
        "54",
        "--from-parts",
        "8,6,6,3,2,1,1,1,0,1,1,1,2,5,5,5,6",
        "--y-grid",
        "1,2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("x,y,series\n"));
    let r = 54f64.sqrt();
    // the leftmost step: part 8 on (−8.5, −7.5]
    let first: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .take(2)
        .map(|s| s.parse().unwrap())
        .collect();
    assert!((first[0] + 8.5 / r).abs() < 1e-12 && (first[1] - 8.0 / r).abs() < 1e-12);
    let profile_rows = text.lines().filter(|l| l.ends_with(",profile")).count();
    // 16 non-zero cells merged into 9 runs of equal height, two corners each
    assert_eq!(profile_rows, 18);
    assert_eq!(
        text.lines().filter(|l| l.ends_with(",limit_plus")).count(),
        2
    );
    assert_eq!(
        text.lines().filter(|l| l.ends_with(",limit_minus")).count(),
        2
    );
    let total_mismatch = tool(&["shape", "--n", "50", "--from-parts", "2,0,1"]);
    assert_eq!(total_mismatch.status.code(), Some(5));
    assert_eq!(
        tool(&["shape", "--from-parts", "1,0,0,1"]).status.code(),
        Some(5)
    );
}

#[test]
fn partition_mode_overlays_temperley() {
    let o = tool(&["shape", "--partition-mode", "--n", "100000", "-m", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.ends_with(",limit_plus")).count(),
        51
    );
    assert!(!text.contains("limit_minus"));
    let m = manifest(&o);
    assert_eq!(m["reports"][0]["test"], "shape-deviation");
}

#[test]
fn local_limit_lines() {
    let o = tool(&["verify", "local-limit", "--n", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("Q(N = 500) = 0.00"));
    assert!(text.contains("(48 n^3)^(-1/4)"));
    assert!(text.contains("(96 n^3)^(-1/4)"));
}

#[test]
fn pochhammer_verify() {
    let o = tool(&["verify", "pochhammer", "--trials", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(manifest(&o)["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn reruns_are_identical() {
    let args = [
        "sample",
        "--n",
        "3000",
        "--boltzmann",
        "-m",
        "10",
        "--seed",
        "77",
    ];
    let (a, b) = (tool(&args), tool(&args));
    assert_eq!(a.stdout, b.stdout);
    let strip = |o: &Output| {
        let mut m = manifest(o);
        m.as_object_mut().unwrap().remove("wall_clock_seconds");
        m
    };
    assert_eq!(strip(&a), strip(&b));
    let c = tool(&[
        "sample",
        "--n",
        "3000",
        "--boltzmann",
        "-m",
        "10",
        "--seed",
        "78",
    ]);
    assert_ne!(a.stdout, c.stdout);
}
