//! Within-host HIV dynamics with trilinear adaptive-immunity growth.
//!
//! The model tracks five compartments — uninfected CD4+ T cells `x`, infected
//! cells `y`, free virus `v`, CTL cells `z`, and antibodies `w` — with both
//! immune responses expanding trilinearly (`cxyz` and `gxvw`):
//!
//! ```text
//! x' = λ − dx − βxv
//! y' = βxv − ay − pyz
//! v' = aNy − μv − qvw
//! z' = cxyz − hz
//! w' = gxvw − αw
//! ```
//!
//! The crate provides:
//!
//! * the uncontrolled and two-drug controlled vector fields and their
//!   Jacobians ([`model`]),
//! * reproduction thresholds, closed-form equilibria, and a local stability
//!   classifier that cross-checks Routh–Hurwitz threshold conditions against
//!   numerically computed eigenvalues ([`mod@thresholds`],
//!   [`mod@equilibria`], [`stability`]),
//! * fixed-step Euler/RK4 integration with positivity and boundedness
//!   monitors ([`sim`]),
//! * the adjoint system, the pointwise control characterization, and a
//!   forward–backward sweep solver for the two-drug treatment schedule
//!   ([`control`]).
//!
//! All operations are pure functions of their inputs; every public type is
//! immutable after construction and safe to share across threads.

pub mod control;
pub mod equilibria;
pub mod error;
pub mod grid;
pub mod model;
pub mod params;
pub mod sim;
pub mod stability;
pub mod state;
pub mod thresholds;

pub use crate::control::{
    adjoint_rhs, hamiltonian, optimal_controls, solve, SweepConfig, SweepMode, SweepSolution,
};
pub use crate::equilibria::{equilibria, equilibrium, EquilibriumLabel, EquilibriumReport};
pub use crate::error::Error;
pub use crate::grid::TimeGrid;
pub use crate::model::{jacobian, rhs_controlled, rhs_uncontrolled};
pub use crate::params::ModelParams;
pub use crate::sim::{integrate, objective_value, Method, MonitorReport, Trajectory};
pub use crate::stability::{classified_equilibria, classify_stability, Stability};
pub use crate::state::{Adjoint, ControlPair, State};
pub use crate::thresholds::{thresholds, Thresholds};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
