//! Error type shared by all model, simulation, and solver operations.

use thiserror::Error;

/// Errors produced by model evaluation, analysis, and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// An input carried a NaN or infinity; names the offending quantity.
    #[error("non-finite input: {0}")]
    NonFinite(String),

    /// A control value left the admissible set `[0, 1]`.
    #[error("control {name} = {value} outside the admissible set [0, 1]")]
    ControlOutOfBounds { name: &'static str, value: f64 },

    /// A closed-form expression would divide by zero; names the vanishing
    /// quantity instead of returning infinite coordinates.
    #[error("singular parameters: {0} vanishes")]
    SingularParameter(String),

    /// Parameter values violate the model invariants (negative rates,
    /// non-positive control costs).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Time grid violates `tf > t0` or `n >= 1`.
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    /// Sweep configuration violates its invariants.
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),

    /// A trajectory operation required controls that were not recorded.
    #[error("trajectory carries no control samples")]
    MissingControls,

    /// The dense eigenvalue solver failed to converge.
    #[error("eigenvalue computation failed for {0}")]
    EigenvalueFailure(String),

    /// Analytic threshold conditions and numeric eigenvalues produced
    /// contradictory stability verdicts outside the marginal band.
    #[error("stability verdicts disagree for {label}: analytic {analytic}, numeric {numeric}")]
    StabilityContradiction {
        label: String,
        analytic: String,
        numeric: String,
    },

    /// The state left the finite range during a sweep; carries the partial
    /// trajectory up to the last finite sample.
    #[error("state blow-up at step {step} during sweep")]
    SweepBlowup {
        step: usize,
        partial: Box<crate::sim::Trajectory>,
    },
}
