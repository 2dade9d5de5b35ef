//! Scenario configuration: a single JSON document with top-level keys
//! `params`, `initial`, `grid`, `sweep`, `method`, `outputs`. Every field
//! is optional; omitted fields fall back to the reference setup.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use hiv_dynamics::{Method, ModelParams, State, SweepConfig, TimeGrid};

use crate::CliError;

/// Output destination and format flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    /// Directory all artifacts are written into.
    pub dir: String,
    /// Emit trajectory CSV files.
    pub csv: bool,
    /// Emit JSON reports.
    pub json: bool,
    /// Include adjoint columns in the optimized-trajectory CSV.
    pub adjoints: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: "out".to_string(),
            csv: true,
            json: true,
            adjoints: false,
        }
    }
}

/// Grid section of the config; `t0` defaults to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub t0: f64,
    pub tf: f64,
    pub n: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            t0: 0.0,
            tf: OPTIMIZE_DEFAULT_GRID.1,
            n: OPTIMIZE_DEFAULT_GRID.2,
        }
    }
}

/// Default grid for optimize runs when the config omits one: 100 days in
/// 10000 steps. The horizon of the treatment figures is never stated, so
/// this is a documented implementation choice.
pub const OPTIMIZE_DEFAULT_GRID: (f64, f64, usize) = (0.0, 100.0, 10_000);

/// Default grid for uncontrolled simulation runs when the config omits one:
/// 500 days at h = 0.01, long enough to settle onto the stable steady state.
pub const SIMULATE_DEFAULT_GRID: (f64, f64, usize) = (0.0, 500.0, 50_000);

/// Reference initial condition: x0=5, y0=1, v0=1, z0=2, w0=1.
fn default_initial() -> State {
    State::new(5.0, 1.0, 1.0, 2.0, 1.0)
}

fn default_method() -> Method {
    Method::Rk4
}

/// The full scenario document. Parsing is lossless: serializing a parsed
/// config and parsing it again reproduces the same value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub params: ModelParams,
    pub initial: State,
    /// Integration grid; when omitted, simulate and optimize apply their
    /// per-command defaults.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    pub sweep: SweepConfig,
    pub method: Method,
    pub outputs: OutputConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            params: ModelParams::reference(),
            initial: default_initial(),
            grid: None,
            sweep: SweepConfig::default(),
            method: default_method(),
            outputs: OutputConfig::default(),
        }
    }
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
        let cfg: ScenarioConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Schema(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.params
            .validate()
            .map_err(|e| CliError::Schema(e.to_string()))?;
        self.initial
            .ensure_finite("initial")
            .map_err(|e| CliError::Schema(e.to_string()))?;
        if self.initial.min_component() < 0.0 {
            return Err(CliError::Schema(
                "initial: components must be nonnegative".to_string(),
            ));
        }
        if let Some(g) = &self.grid {
            TimeGrid::new(g.t0, g.tf, g.n).map_err(|e| CliError::Schema(e.to_string()))?;
        }
        self.sweep
            .validate()
            .map_err(|e| CliError::Schema(e.to_string()))?;
        Ok(())
    }

    /// The grid a trajectory-producing command should use.
    pub fn grid_or(&self, default: (f64, f64, usize)) -> Result<TimeGrid, CliError> {
        let (t0, tf, n) = self.grid.map(|g| (g.t0, g.tf, g.n)).unwrap_or(default);
        TimeGrid::new(t0, tf, n).map_err(|e| CliError::Schema(e.to_string()))
    }
}
