//! Fixed-step forward integration with trajectory recording and runtime
//! invariant monitors.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::grid::TimeGrid;
use crate::model::rhs_raw;
use crate::params::ModelParams;
use crate::state::{Adjoint, ControlPair, State};
use crate::Result;

/// Integration scheme. Euler reproduces the reference finite-difference
/// update exactly; RK4 is the classical 4-stage scheme and the production
/// default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Euler,
    Rk4,
}

/// States (and optionally controls/adjoints) sampled on a uniform grid.
///
/// A complete trajectory has `grid.n + 1` samples; a trajectory truncated by
/// a blow-up abort has fewer (see [`MonitorReport::blowup`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub grid: TimeGrid,
    pub states: Vec<State>,
    pub controls: Option<Vec<ControlPair>>,
    pub adjoints: Option<Vec<Adjoint>>,
}

impl Trajectory {
    /// Whether every grid node carries a sample.
    pub fn is_complete(&self) -> bool {
        self.states.len() == self.grid.nodes()
    }

    pub fn final_state(&self) -> &State {
        self.states.last().expect("trajectory has at least s0")
    }
}

/// Runtime monitors from one integration run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonitorReport {
    /// Smallest raw state component seen across all steps, recorded before
    /// the round-off clamp is applied.
    pub min_component: f64,
    /// Number of samples where `x + y` exceeded `x(0) + y(0) + λ/min(d, a)`
    /// beyond a `1e-6` slack.
    pub bound_violations: usize,
    /// The state left the finite range and integration was aborted.
    pub blowup: bool,
    /// Step index of the abort when `blowup` is set.
    pub abort_step: Option<usize>,
}

/// Negative components above this value are treated as round-off and
/// clamped to zero before the next step; anything below is kept and shows
/// up in [`MonitorReport::min_component`].
pub const CLAMP_TOL: f64 = 1e-9;

/// Slack on the boundedness monitor `x + y ≤ x(0) + y(0) + λ/min(d, a)`.
pub const BOUND_SLACK: f64 = 1e-6;

fn clamp_roundoff(s: &State) -> State {
    let fix = |c: f64| {
        if (-CLAMP_TOL..0.0).contains(&c) {
            0.0
        } else {
            c
        }
    };
    State::new(fix(s.x), fix(s.y), fix(s.v), fix(s.z), fix(s.w))
}

/// One Euler step with the control held at the left node:
/// `s_{i+1} = s_i + h·f(s_i, u_i)`.
fn euler_step(
    p: &ModelParams,
    s: &State,
    h: f64,
    u_left: ControlPair,
    _u_right: ControlPair,
) -> State {
    s.add_scaled(h, &rhs_raw(p, s, u_left.u1, u_left.u2))
}

/// One classical RK4 step. Stage controls follow the node samples: left
/// node for k1, linear midpoint for k2/k3, right node for k4, so an
/// uncontrolled or constant schedule reduces to textbook RK4.
fn rk4_step(
    p: &ModelParams,
    s: &State,
    h: f64,
    u_left: ControlPair,
    u_right: ControlPair,
) -> State {
    let u_mid = u_left.midpoint(&u_right);
    let k1 = rhs_raw(p, s, u_left.u1, u_left.u2);
    let k2 = rhs_raw(p, &s.add_scaled(h / 2.0, &k1), u_mid.u1, u_mid.u2);
    let k3 = rhs_raw(p, &s.add_scaled(h / 2.0, &k2), u_mid.u1, u_mid.u2);
    let k4 = rhs_raw(p, &s.add_scaled(h, &k3), u_right.u1, u_right.u2);
    s.add_scaled(
        h / 6.0,
        &k1.add_scaled(2.0, &k2).add_scaled(2.0, &k3).add(&k4),
    )
}

/// Integrates the controlled system over `grid` from `s0`.
///
/// `control_schedule`, when present, supplies one `(u1, u2)` pair per grid
/// node (`n + 1` entries); an absent schedule means zero controls and
/// produces bit-identical results to an all-zero schedule. The returned
/// trajectory records the schedule that was used.
///
/// A non-finite state aborts integration: the trajectory keeps the samples
/// up to the last finite state and the report flags `blowup`. Negative
/// components beyond the round-off clamp are reported through
/// `min_component`, not treated as errors.
pub fn integrate(
    p: &ModelParams,
    s0: &State,
    grid: &TimeGrid,
    control_schedule: Option<&[ControlPair]>,
    method: Method,
) -> Result<(Trajectory, MonitorReport)> {
    p.validate()?;
    s0.ensure_finite("initial state")?;
    if s0.min_component() < 0.0 {
        return Err(Error::InvalidParams(format!(
            "initial state must be componentwise nonnegative, got minimum {}",
            s0.min_component()
        )));
    }
    if let Some(schedule) = control_schedule {
        if schedule.len() != grid.nodes() {
            return Err(Error::InvalidConfig(format!(
                "control schedule has {} entries, grid has {} nodes",
                schedule.len(),
                grid.nodes()
            )));
        }
        for u in schedule {
            u.validate()?;
        }
    }

    let h = grid.h();
    let u_at = |i: usize| -> ControlPair { control_schedule.map_or(ControlPair::ZERO, |s| s[i]) };
    let step = match method {
        Method::Euler => euler_step,
        Method::Rk4 => rk4_step,
    };

    let xy_bound = s0.x + s0.y + p.lambda / p.d.min(p.a) + BOUND_SLACK;
    let mut monitor = MonitorReport {
        min_component: s0.min_component(),
        bound_violations: 0,
        blowup: false,
        abort_step: None,
    };
    let mut states = Vec::with_capacity(grid.nodes());
    let mut s = *s0;
    states.push(s);

    for i in 0..grid.n {
        let next = step(p, &s, h, u_at(i), u_at(i + 1));
        if !next.is_finite() {
            monitor.blowup = true;
            monitor.abort_step = Some(i);
            break;
        }
        monitor.min_component = monitor.min_component.min(next.min_component());
        s = clamp_roundoff(&next);
        if s.x + s.y > xy_bound {
            monitor.bound_violations += 1;
        }
        states.push(s);
    }

    let recorded = states.len();
    let controls = control_schedule.map(|sched| sched[..recorded].to_vec());
    Ok((
        Trajectory {
            grid: *grid,
            states,
            controls,
            adjoints: None,
        },
        monitor,
    ))
}

/// Composite-trapezoid quadrature of the treatment objective
///
/// ```text
/// J = ∫ x + z + w − (A₁/2)u₁² − (A₂/2)u₂² dt
/// ```
///
/// over the trajectory's grid. The trajectory must carry controls.
pub fn objective_value(p: &ModelParams, traj: &Trajectory) -> Result<f64> {
    let controls = traj.controls.as_ref().ok_or(Error::MissingControls)?;
    let integrand = |s: &State, u: &ControlPair| -> f64 {
        s.x + s.z + s.w - 0.5 * p.cost_a1 * u.u1 * u.u1 - 0.5 * p.cost_a2 * u.u2 * u.u2
    };
    let h = traj.grid.h();
    let values: Vec<f64> = traj
        .states
        .iter()
        .zip(controls.iter())
        .map(|(s, u)| integrand(s, u))
        .collect();
    let mut sum = 0.0;
    for pair in values.windows(2) {
        sum += 0.5 * (pair[0] + pair[1]);
    }
    Ok(h * sum)
}
