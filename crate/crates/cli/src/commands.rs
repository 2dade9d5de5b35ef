//! Scenario orchestration: each subcommand reads a validated config,
//! runs the corresponding library operation, and emits deterministic
//! CSV/JSON artifacts.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use hiv_dynamics::{
    classified_equilibria, integrate, objective_value, solve, thresholds, ControlPair,
    EquilibriumReport, Method, ModelParams, SweepSolution, Trajectory,
};

use crate::config::{ScenarioConfig, OPTIMIZE_DEFAULT_GRID, SIMULATE_DEFAULT_GRID};
use crate::CliError;

/// Artifacts written by one command, in emission order.
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    /// Set when the sweep failed to converge; the caller maps it to the
    /// non-convergence exit code after artifacts are on disk.
    pub converged: bool,
}

impl RunOutput {
    fn converged(files: Vec<PathBuf>) -> Self {
        Self {
            files,
            converged: true,
        }
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Numeric(format!("serializing {}: {e}", path.display())))?;
    fs::write(path, text + "\n")
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

/// Writes a trajectory as CSV: header row, one row per grid node, LF line
/// endings, shortest round-trip decimal formatting.
fn write_trajectory_csv(
    path: &Path,
    traj: &Trajectory,
    with_adjoints: bool,
) -> Result<(), CliError> {
    let file = fs::File::create(path)
        .map_err(|e| CliError::Io(format!("creating {}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    let io_err = |e: std::io::Error| CliError::Io(format!("writing {}: {e}", path.display()));

    let mut header = String::from("t,x,y,v,z,w");
    if traj.controls.is_some() {
        header.push_str(",u1,u2");
    }
    if with_adjoints && traj.adjoints.is_some() {
        header.push_str(",l1,l2,l3,l4,l5");
    }
    writeln!(out, "{header}").map_err(io_err)?;

    for (i, s) in traj.states.iter().enumerate() {
        let t = traj.grid.time(i);
        write!(out, "{t},{},{},{},{},{}", s.x, s.y, s.v, s.z, s.w).map_err(io_err)?;
        if let Some(controls) = &traj.controls {
            let u = controls[i];
            write!(out, ",{},{}", u.u1, u.u2).map_err(io_err)?;
        }
        if with_adjoints {
            if let Some(adjoints) = &traj.adjoints {
                let l = adjoints[i];
                write!(out, ",{},{},{},{},{}", l.l1, l.l2, l.l3, l.l4, l.l5).map_err(io_err)?;
            }
        }
        writeln!(out).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// `simulate`: uncontrolled forward integration, one CSV.
pub fn run_simulate(cfg: &ScenarioConfig, out_dir: &Path) -> Result<RunOutput, CliError> {
    ensure_dir(out_dir)?;
    let grid = cfg.grid_or(SIMULATE_DEFAULT_GRID)?;
    let (traj, monitor) = integrate(&cfg.params, &cfg.initial, &grid, None, cfg.method)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    if monitor.blowup {
        return Err(CliError::Numeric(format!(
            "state blow-up at step {}",
            monitor.abort_step.unwrap_or(0)
        )));
    }
    let mut files = Vec::new();
    if cfg.outputs.csv {
        let path = out_dir.join("trajectory.csv");
        write_trajectory_csv(&path, &traj, false)?;
        files.push(path);
    }
    Ok(RunOutput::converged(files))
}

fn classified(params: &ModelParams) -> Result<Vec<EquilibriumReport>, CliError> {
    classified_equilibria(params).map_err(|e| CliError::Numeric(e.to_string()))
}

/// `equilibria`: all five steady-state reports as JSON.
pub fn run_equilibria(cfg: &ScenarioConfig, out_dir: &Path) -> Result<RunOutput, CliError> {
    ensure_dir(out_dir)?;
    let reports = classified(&cfg.params)?;
    let th = thresholds(&cfg.params).map_err(|e| CliError::Numeric(e.to_string()))?;
    let mut files = Vec::new();
    if cfg.outputs.json {
        let path = out_dir.join("equilibria.json");
        write_json(&path, &json!({ "thresholds": th, "equilibria": reports }))?;
        files.push(path);
    }
    Ok(RunOutput::converged(files))
}

/// `stability`: condensed verdict table as JSON.
pub fn run_stability(cfg: &ScenarioConfig, out_dir: &Path) -> Result<RunOutput, CliError> {
    ensure_dir(out_dir)?;
    let reports = classified(&cfg.params)?;
    let th = thresholds(&cfg.params).map_err(|e| CliError::Numeric(e.to_string()))?;
    let rows: Vec<_> = reports
        .iter()
        .map(|r| {
            json!({
                "label": r.label,
                "exists": r.exists,
                "stability": r.stability,
                "eigenvalues": r.eigenvalues,
                "note": r.note,
            })
        })
        .collect();
    let mut files = Vec::new();
    if cfg.outputs.json {
        let path = out_dir.join("stability.json");
        write_json(&path, &json!({ "thresholds": th, "verdicts": rows }))?;
        files.push(path);
    }
    Ok(RunOutput::converged(files))
}

/// `optimize`: forward–backward sweep, controlled-trajectory CSV plus a
/// summary JSON carrying the objective of the zero-control run on the same
/// grid for comparison.
pub fn run_optimize(cfg: &ScenarioConfig, out_dir: &Path) -> Result<RunOutput, CliError> {
    ensure_dir(out_dir)?;
    let grid = cfg.grid_or(OPTIMIZE_DEFAULT_GRID)?;
    let solution: SweepSolution = solve(&cfg.params, &cfg.initial, &grid, &cfg.sweep, cfg.method)
        .map_err(|e| CliError::Numeric(e.to_string()))?;

    let zeros = vec![ControlPair::ZERO; grid.nodes()];
    let (uncontrolled, _) = integrate(&cfg.params, &cfg.initial, &grid, Some(&zeros), cfg.method)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    let objective_uncontrolled = objective_value(&cfg.params, &uncontrolled)
        .map_err(|e| CliError::Numeric(e.to_string()))?;

    let mut files = Vec::new();
    if cfg.outputs.csv {
        let csv_path = out_dir.join("optimal_trajectory.csv");
        write_trajectory_csv(&csv_path, &solution.trajectory, cfg.outputs.adjoints)?;
        files.push(csv_path);
    }
    if cfg.outputs.json {
        let summary_path = out_dir.join("optimize_summary.json");
        write_json(
            &summary_path,
            &json!({
                "objective": solution.objective,
                "iterations": solution.iterations,
                "converged": solution.converged,
                "final_delta": solution.final_delta,
                "objective_uncontrolled": objective_uncontrolled,
            }),
        )?;
        files.push(summary_path);
    }
    Ok(RunOutput {
        files,
        converged: solution.converged,
    })
}

/// `sweep`: one CSV row per axis value with thresholds, existence flags,
/// and stability verdicts for all five steady states.
pub fn run_sweep(
    cfg: &ScenarioConfig,
    axis: &str,
    values: &[f64],
    out_dir: &Path,
) -> Result<RunOutput, CliError> {
    ensure_dir(out_dir)?;
    if cfg.params.with_field(axis, 1.0).is_none() {
        return Err(CliError::Schema(format!(
            "unknown sweep axis {axis:?}; expected one of lambda, d, beta, a, p, mu, N, q, c, h, g, alpha, A1, A2"
        )));
    }
    if !cfg.outputs.csv {
        return Ok(RunOutput::converged(Vec::new()));
    }
    let path = out_dir.join("sweep.csv");
    let file = fs::File::create(&path)
        .map_err(|e| CliError::Io(format!("creating {}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    let io_err = |e: std::io::Error| CliError::Io(format!("writing {}: {e}", path.display()));

    write!(out, "{axis},r0,r_ctl,r_w,r_ctl_w1,r_ctl_w2").map_err(io_err)?;
    for label in ["Ef", "E1", "E2", "E3", "E4"] {
        write!(out, ",{label}_exists,{label}_stability").map_err(io_err)?;
    }
    writeln!(out).map_err(io_err)?;

    for &value in values {
        let params = cfg
            .params
            .with_field(axis, value)
            .expect("axis checked above");
        params
            .validate()
            .map_err(|e| CliError::Schema(format!("axis value {value}: {e}")))?;
        let th = thresholds(&params)
            .map_err(|e| CliError::Numeric(format!("axis value {value}: {e}")))?;
        let reports = classified(&params)
            .map_err(|e| CliError::Numeric(format!("axis value {value}: {e}")))?;
        write!(
            out,
            "{value},{},{},{},{},{}",
            th.r0, th.r_ctl, th.r_w, th.r_ctl_w1, th.r_ctl_w2
        )
        .map_err(io_err)?;
        for r in &reports {
            write!(out, ",{},{}", r.exists, r.stability).map_err(io_err)?;
        }
        writeln!(out).map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    Ok(RunOutput::converged(vec![path]))
}

/// Applies `--out`, `--method`, `--mode` overrides on top of the config.
pub fn apply_overrides(
    cfg: &mut ScenarioConfig,
    method: Option<Method>,
    mode: Option<hiv_dynamics::SweepMode>,
) {
    if let Some(m) = method {
        cfg.method = m;
    }
    if let Some(m) = mode {
        cfg.sweep.mode = m;
    }
}
