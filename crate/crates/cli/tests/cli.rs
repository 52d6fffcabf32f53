use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rmgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmgen"))
        .args(args)
        .env_remove("RMGEN_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn complex_matrix(v: &Value) -> Vec<Vec<(f64, f64)>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|z| (z[0].as_f64().unwrap(), z[1].as_f64().unwrap()))
                .collect()
        })
        .collect()
}

fn unitarity_residual(m: &[Vec<(f64, f64)>]) -> f64 {
    let n = m.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            // (U*U)_ij = Σ_k conj(u_ki) u_kj
            let (mut re, mut im) = (0.0, 0.0);
            for row in m {
                let (a, b) = row[i];
                let (c, d) = row[j];
                re += a * c + b * d;
                im += a * d - b * c;
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((re - target).abs()).max(im.abs());
        }
    }
    worst
}

#[test]
fn sample_emits_one_unitary_json_line() {
    let o = rmgen(&["sample", "--ensemble", "cue", "--dim", "2", "--count", "1", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    let v: Value = serde_json::from_str(text.trim()).unwrap();
    for key in ["ensemble", "n", "seed", "index", "matrix", "config"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["ensemble"], "cue");
    assert_eq!(v["seed"], 1);
    assert_eq!(v["index"], 0);
    let m = complex_matrix(&v["matrix"]);
    assert_eq!((m.len(), m[0].len()), (2, 2));
    assert!(unitarity_residual(&m) < 1e-12);
}

#[test]
fn sample_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.jsonl");
    let out = out.to_str().unwrap();
    let base = ["sample", "--ensemble", "coe", "--dim", "5", "--count", "40", "--seed", "3", "--out", out];
    let mut runs = Vec::new();
    for threads in ["1", "1", "3"] {
        let mut args = base.to_vec();
        args.extend(["--threads", threads]);
        assert_eq!(code(&rmgen(&args)), 0);
        runs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
    assert_eq!(String::from_utf8(runs[0].clone()).unwrap().lines().count(), 40);
}

#[test]
fn cse_samples_are_doubled() {
    let o = rmgen(&["sample", "--ensemble", "cse", "--dim", "3"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let m = complex_matrix(&v["matrix"]);
    assert_eq!((m.len(), m[0].len()), (6, 6));
    assert_eq!(v["n"], 3);
}

#[test]
fn quaternion_and_real_entries() {
    let o = rmgen(&["sample", "--ensemble", "sp_quaternion", "--dim", "2"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["matrix"][0][0].as_array().unwrap().len(), 4);
    let o = rmgen(&["sample", "--ensemble", "orthogonal", "--dim", "2"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["matrix"][0][0].is_f64());
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rmgen"))
        .args(["sample", "--ensemble", "cue", "--dim", "1"])
        .env("RMGEN_SEED", "77")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 77);
    assert_eq!(v["config"]["seed"], 77);
}

#[test]
fn density_degenerate_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    let o = rmgen(&[
        "experiment-density", "--ensemble", "cue", "--dim", "1", "--count", "1", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("bin_left,bin_right,count,density"));
    let counts: Vec<u64> = lines.map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(counts.len(), 60);
    assert_eq!(counts.iter().sum::<u64>(), 1);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("d.csv.json")).unwrap()).unwrap();
    assert!(side["gof"]["chi_square"].is_null());
    assert!((side["reference_density"].as_f64().unwrap() - 1.0 / std::f64::consts::TAU).abs() < 1e-15);
    assert_eq!(side["config"]["command"], "experiment-density");
}

#[test]
fn density_to_stdout_puts_sidecar_on_stderr() {
    let o = rmgen(&["experiment-density", "--ensemble", "cue", "--dim", "10", "--count", "50"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("bin_left,bin_right,count,density\n"));
    let side: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(side["gof"]["chi_square_dof"], 59);
    assert!(side["gof"]["chi_square_p_value"].as_f64().unwrap() > 1e-3);
}

#[test]
fn density_json_carries_histogram() {
    let o = rmgen(&["experiment-density", "--ensemble", "coe", "--dim", "4", "--count", "5", "--format", "json", "--bins", "8"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["histogram"]["counts"].as_array().unwrap().len(), 8);
    assert_eq!(v["sample_size"], 20);
}

#[test]
fn spacing_csv_has_surmise_column_and_cse_dedup() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = rmgen(&[
        "experiment-spacing", "--ensemble", "cse", "--dim", "6", "--count", "30", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().next(), Some("bin_left,bin_right,count,density,surmise"));
    assert_eq!(csv.lines().count(), 51);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.csv.json")).unwrap()).unwrap();
    assert_eq!(side["beta"], 4);
    assert_eq!(side["sample_size"], 6 * 30);
}

#[test]
fn spacing_beta_per_ensemble() {
    for (ens, beta) in [("cue", 2), ("cue_wrong", 2), ("coe", 1)] {
        let o = rmgen(&["experiment-spacing", "--ensemble", ens, "--dim", "6", "--count", "3", "--format", "json"]);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["beta"], beta, "{ens}");
    }
}

#[test]
fn verify_reports_per_property() {
    let o = rmgen(&["verify", "--ensemble", "usp", "--dim", "5", "--count", "20"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let props: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["property"].as_str().unwrap()).collect();
    assert_eq!(props, ["unitarity", "symplectic_J"]);
    assert_eq!(v["pass"], true);

    let o = rmgen(&["verify", "--ensemble", "coe", "--dim", "8", "--count", "20"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let sym = v["results"].as_array().unwrap().iter().find(|r| r["property"] == "symmetry").unwrap();
    assert!(sym["max_residual"].as_f64().unwrap() < 1e-12);

    let o = rmgen(&["verify", "--ensemble", "cue_wrong", "--dim", "6", "--count", "5"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_csv() {
    let o = rmgen(&["verify", "--ensemble", "orthogonal", "--dim", "4", "--count", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# {"));
    assert_eq!(lines[1], "property,max_residual,tolerance,pass");
    assert!(lines[2].starts_with("orthogonality,") && lines[2].ends_with(",true"));
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["sample", "--ensemble", "gue", "--dim", "2"],
        vec!["sample", "--ensemble", "cue"],
        vec!["sample", "--ensemble", "coe", "--dim", "2", "--algorithm", "householder"],
        vec!["sample", "--ensemble", "cue", "--dim", "2", "--format", "xml"],
        vec!["experiment-spacing", "--ensemble", "orthogonal", "--dim", "4"],
        vec!["experiment-density", "--ensemble", "ginibre_complex", "--dim", "4"],
        vec!["verify", "--ensemble", "ginibre_real", "--dim", "4"],
        vec!["frobnicate"],
    ] {
        assert_eq!(code(&rmgen(&args)), 64, "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_2() {
    let o = rmgen(&["sample", "--ensemble", "cue", "--dim", "2", "--out", "/nonexistent-dir/out.jsonl"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&rmgen(&["--help"])), 0);
    assert_eq!(code(&rmgen(&["--version"])), 0);
    assert!(Path::new(env!("CARGO_BIN_EXE_rmgen")).exists());
}
