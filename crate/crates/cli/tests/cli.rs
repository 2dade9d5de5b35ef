//! End-to-end tests of the `hivctl` binary: file formats, determinism,
//! and exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn hivctl() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hivctl"))
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("config.json");
    fs::write(&path, body).unwrap();
    path
}

fn run_ok(args: &[&str]) -> Output {
    let out = hivctl().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn csv_rows(path: &Path) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn simulate_row_count_matches_grid() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"grid": {"tf": 1.0, "n": 10}}"#);
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let rows = csv_rows(&out_dir.join("trajectory.csv"));
    assert_eq!(rows[0], "t,x,y,v,z,w");
    assert_eq!(rows.len(), 1 + 11, "header plus n+1 data rows");
}

#[test]
fn simulate_from_equilibrium_repeats_one_row() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{"initial": {"x": 10.0}, "grid": {"tf": 5.0, "n": 50}}"#,
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let rows = csv_rows(&out_dir.join("trajectory.csv"));
    let values: Vec<&str> = rows[1].splitn(2, ',').collect();
    let state_part = values[1];
    for row in &rows[2..] {
        assert_eq!(row.splitn(2, ',').collect::<Vec<_>>()[1], state_part);
    }
}

#[test]
fn simulate_default_grid_reaches_endemic_point() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "{}");
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let rows = csv_rows(&out_dir.join("trajectory.csv"));
    let last: Vec<f64> = rows
        .last()
        .unwrap()
        .split(',')
        .skip(1)
        .map(|v| v.parse().unwrap())
        .collect();
    let expected = [7.6923, 0.8666, 120.0, 66.2721, 48.888];
    for (got, want) in last.iter().zip(expected) {
        assert!(
            ((got - want) / want).abs() < 0.01,
            "component {got} vs {want}"
        );
    }
}

#[test]
fn identical_configs_produce_byte_identical_output() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"grid": {"tf": 10.0, "n": 1000}}"#);
    let run = |dir: &str| -> Vec<u8> {
        let out_dir = tmp.path().join(dir);
        run_ok(&[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        fs::read(out_dir.join("trajectory.csv")).unwrap()
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn equilibria_report_carries_thresholds_and_verdicts() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "{}");
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "equilibria",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("equilibria.json")).unwrap())
            .unwrap();
    assert!((doc["thresholds"]["r0"].as_f64().unwrap() - 2.0833).abs() < 2e-4);
    assert!((doc["thresholds"]["r_ctl_w1"].as_f64().unwrap() - 1.2037).abs() < 2e-4);
    assert!((doc["thresholds"]["r_ctl_w2"].as_f64().unwrap() - 1.3313).abs() < 2e-4);
    let reports = doc["equilibria"].as_array().unwrap();
    assert_eq!(reports.len(), 5);
    let e4 = &reports[4];
    assert_eq!(e4["label"], "E4");
    assert_eq!(e4["exists"], true);
    assert_eq!(e4["stability"], "stable");
    assert_eq!(e4["eigenvalues"].as_array().unwrap().len(), 5);
}

#[test]
fn equilibria_without_infection_keeps_only_disease_free_point() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"params": {"beta": 0.0}}"#);
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "equilibria",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("equilibria.json")).unwrap())
            .unwrap();
    let reports = doc["equilibria"].as_array().unwrap();
    assert_eq!(reports[0]["exists"], true);
    assert_eq!(reports[0]["stability"], "stable");
    for r in &reports[1..] {
        assert_eq!(r["exists"], false);
        assert_eq!(r["stability"], "not-applicable");
    }
}

#[test]
fn stability_subcommand_writes_condensed_table() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "{}");
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "stability",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("stability.json")).unwrap()).unwrap();
    let verdicts = doc["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 5);
    assert_eq!(verdicts[0]["label"], "Ef");
    assert_eq!(verdicts[0]["stability"], "unstable");
    assert_eq!(verdicts[4]["stability"], "stable");
}

#[test]
fn optimize_writes_controlled_trajectory_and_summary() {
    let tmp = TempDir::new().unwrap();
    // Coarser grid than the default keeps the test quick; adjoint columns on.
    let cfg = write_config(
        tmp.path(),
        r#"{"grid": {"tf": 100.0, "n": 2000}, "outputs": {"adjoints": true}}"#,
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "optimize",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let rows = csv_rows(&out_dir.join("optimal_trajectory.csv"));
    assert_eq!(rows[0], "t,x,y,v,z,w,u1,u2,l1,l2,l3,l4,l5");
    assert_eq!(rows.len(), 1 + 2001);
    // transversality: adjoint columns of the last row are all zero
    let last: Vec<f64> = rows
        .last()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(&last[8..13], &[0.0; 5]);

    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("optimize_summary.json")).unwrap())
            .unwrap();
    assert_eq!(doc["converged"], true);
    let j = doc["objective"].as_f64().unwrap();
    let j0 = doc["objective_uncontrolled"].as_f64().unwrap();
    assert!(j >= j0, "objective {j} below uncontrolled {j0}");
    assert!(doc["final_delta"].as_f64().unwrap() <= 1e-4);
}

#[test]
fn prohibitive_drug_costs_suppress_controls() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{"params": {"A1": 1e12, "A2": 1e12}, "grid": {"tf": 50.0, "n": 1000}}"#,
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "optimize",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    for row in &csv_rows(&out_dir.join("optimal_trajectory.csv"))[1..] {
        let cols: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(
            cols[6] <= 1e-6 && cols[7] <= 1e-6,
            "controls {:?}",
            &cols[6..8]
        );
    }
}

#[test]
fn paper_mode_runs_single_pass() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"grid": {"tf": 50.0, "n": 5000}}"#);
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "optimize",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--mode",
        "paper",
        "--method",
        "euler",
    ]);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("optimize_summary.json")).unwrap())
            .unwrap();
    assert_eq!(doc["iterations"], 1);
}

#[test]
fn sweep_reproduces_threshold_linearity() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "{}");
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--axis",
        "N",
        "--values",
        "480,960,2000",
    ]);
    let rows = csv_rows(&out_dir.join("sweep.csv"));
    assert_eq!(rows.len(), 4);
    let r0s: Vec<f64> = rows[1..]
        .iter()
        .map(|r| r.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!((r0s[0] - 0.5).abs() < 1e-12);
    assert!((r0s[1] - 1.0).abs() < 1e-12);
    assert!((r0s[2] - 2.0833).abs() < 1e-4);
    // existence columns: all endemic points exist only in the last row
    assert!(rows[1].contains("false,not-applicable"));
    assert!(rows[3].ends_with("true,stable"));
}

#[test]
fn sweep_with_zero_beta_zeroes_infection_thresholds() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "{}");
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--axis",
        "beta",
        "--values",
        "0",
    ]);
    let rows = csv_rows(&out_dir.join("sweep.csv"));
    let cols: Vec<&str> = rows[1].split(',').collect();
    assert_eq!(cols[1], "0"); // r0
    assert_eq!(cols[2], "0"); // r_ctl
    assert_eq!(cols[3], "0"); // r_w
    assert_eq!(cols[5], "0"); // r_ctl_w2
}

#[test]
fn sweep_e4_existence_flips_with_dual_thresholds() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "{}");
    let out_dir = tmp.path().join("out");
    // Antibody activation rates bracketing the reference 0.00013.
    run_ok(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--axis",
        "g",
        "--values",
        "0.00006,0.00008,0.0001,0.00012,0.00014,0.00016,0.0002,0.0003",
    ]);
    let rows = csv_rows(&out_dir.join("sweep.csv"));
    let mut flips = 0;
    let mut last = None;
    for row in &rows[1..] {
        let cols: Vec<&str> = row.split(',').collect();
        let r1: f64 = cols[4].parse().unwrap();
        let r2: f64 = cols[5].parse().unwrap();
        let e4_exists: bool = cols[14].parse().unwrap();
        assert_eq!(
            e4_exists,
            r1 > 1.0 && r2 > 1.0,
            "existence must follow min(r1, r2) > 1 at g = {}",
            cols[0]
        );
        if let Some(prev) = last {
            if prev != e4_exists {
                flips += 1;
            }
        }
        last = Some(e4_exists);
    }
    assert!(
        flips >= 1,
        "expected at least one existence flip across the range"
    );
}

#[test]
fn unknown_axis_is_schema_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "{}");
    let out = hivctl()
        .args([
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            tmp.path().join("out").to_str().unwrap(),
            "--axis",
            "nonsense",
            "--values",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonsense"));
}

#[test]
fn format_flags_gate_emission() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{"outputs": {"csv": false}, "grid": {"tf": 1.0, "n": 10}}"#,
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(!out_dir.join("trajectory.csv").exists());

    let cfg = write_config(tmp.path(), r#"{"outputs": {"json": false}}"#);
    run_ok(&[
        "equilibria",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(!out_dir.join("equilibria.json").exists());
}

#[test]
fn malformed_config_exits_with_schema_code() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"params": {"lambdaa": 1.0}}"#);
    let out = hivctl()
        .args(["equilibria", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambdaa"));
}

#[test]
fn negative_rate_exits_with_schema_code() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"params": {"d": -0.5}}"#);
    let out = hivctl()
        .args(["equilibria", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d"));
}

#[test]
fn singular_parameters_exit_with_numeric_code() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), r#"{"params": {"c": 0.0}}"#);
    let out = hivctl()
        .args(["equilibria", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unwritable_output_exits_with_io_code() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "{}");
    // A regular file where the output directory should go.
    let blocker = tmp.path().join("blocked");
    fs::write(&blocker, "x").unwrap();
    let out = hivctl()
        .args([
            "equilibria",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            blocker.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn missing_config_file_exits_with_io_code() {
    let out = hivctl()
        .args(["simulate", "--config", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn nonconvergence_exits_with_code_three_but_writes_artifacts() {
    let tmp = TempDir::new().unwrap();
    // One iteration with a tolerance of zero cannot converge.
    let cfg = write_config(
        tmp.path(),
        r#"{"sweep": {"max_iters": 1, "tol": 0.0}, "grid": {"tf": 20.0, "n": 500}}"#,
    );
    let out_dir = tmp.path().join("out");
    let out = hivctl()
        .args([
            "optimize",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("optimize_summary.json")).unwrap())
            .unwrap();
    assert_eq!(doc["converged"], false);
}
