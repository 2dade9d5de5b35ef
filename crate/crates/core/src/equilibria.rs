//! Closed-form steady states: the disease-free point and the four infection
//! equilibria.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::params::ModelParams;
use crate::stability::Stability;
use crate::state::State;
use crate::thresholds::{thresholds, Thresholds};
use crate::Result;

use num_complex::Complex64;

/// The five steady states: disease-free `Ef`; endemic without immunity `E1`;
/// endemic with CTL response only `E2`; with antibody response only `E3`;
/// with both responses `E4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquilibriumLabel {
    Ef,
    E1,
    E2,
    E3,
    E4,
}

impl EquilibriumLabel {
    pub const ALL: [EquilibriumLabel; 5] = [
        EquilibriumLabel::Ef,
        EquilibriumLabel::E1,
        EquilibriumLabel::E2,
        EquilibriumLabel::E3,
        EquilibriumLabel::E4,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EquilibriumLabel::Ef => "Ef",
            EquilibriumLabel::E1 => "E1",
            EquilibriumLabel::E2 => "E2",
            EquilibriumLabel::E3 => "E3",
            EquilibriumLabel::E4 => "E4",
        }
    }
}

impl std::fmt::Display for EquilibriumLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Existence, coordinates, and (after classification) local stability of one
/// steady state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub label: EquilibriumLabel,
    pub exists: bool,
    /// Coordinates when the point exists; `None` otherwise.
    pub point: Option<State>,
    /// Verdict filled by [`crate::stability::classify_stability`];
    /// `NotApplicable` until then and for nonexistent points.
    pub stability: Stability,
    /// Jacobian spectrum at the point, filled by the classifier.
    pub eigenvalues: Option<[Complex64; 5]>,
    /// Threshold snapshot the existence decision was made from.
    pub thresholds: Thresholds,
    /// Existence caveats, e.g. which predicate failed.
    pub note: Option<String>,
}

/// Relative residual tolerance for validating closed-form equilibria: the
/// formulas are exact, so only round-off remains.
pub const RESIDUAL_TOL: f64 = 1e-8;

fn require_positive(name: &str, value: f64) -> Result<f64> {
    if value == 0.0 {
        Err(Error::SingularParameter(name.to_string()))
    } else {
        Ok(value)
    }
}

/// Computes one steady state: its existence predicate, coordinates when it
/// exists, and the threshold snapshot. Stability is left unclassified.
pub fn equilibrium(p: &ModelParams, label: EquilibriumLabel) -> Result<EquilibriumReport> {
    let th = thresholds(p)?;
    let mut note = None;
    let (exists, point) = match label {
        EquilibriumLabel::Ef => {
            let d = require_positive("d", p.d)?;
            (true, Some(State::new(p.lambda / d, 0.0, 0.0, 0.0, 0.0)))
        }
        EquilibriumLabel::E1 => {
            if th.r0 > 1.0 {
                let bn = require_positive("beta*N", p.beta * p.big_n)?;
                let abn = require_positive("a*N*beta", p.a * p.big_n * p.beta)?;
                let beta = require_positive("beta", p.beta)?;
                let point = State::new(
                    p.mu / bn,
                    p.d * p.mu * (th.r0 - 1.0) / abn,
                    p.d * (th.r0 - 1.0) / beta,
                    0.0,
                    0.0,
                );
                (true, Some(point))
            } else {
                (false, None)
            }
        }
        EquilibriumLabel::E2 => {
            let delta = p.lambda * p.mu * p.c - p.a * p.big_n * p.beta * p.h;
            if delta <= 0.0 {
                note = Some(format!(
                    "precondition lambda*mu*c - a*N*beta*h > 0 violated (= {delta})"
                ));
            }
            if th.r_ctl > 1.0 && delta > 0.0 {
                let pp = require_positive("p", p.p)?;
                let point = State::new(
                    delta / (p.d * p.mu * p.c),
                    p.d * p.h * p.mu / delta,
                    p.a * p.big_n * p.d * p.h / delta,
                    (p.a / pp) * (th.r_ctl - 1.0),
                    0.0,
                );
                (true, Some(point))
            } else {
                (false, None)
            }
        }
        EquilibriumLabel::E3 => {
            if th.r_w > 1.0 {
                let delta =
                    require_positive("lambda*g - alpha*beta", p.lambda * p.g - p.alpha * p.beta)?;
                let ag = require_positive("a*g", p.a * p.g)?;
                let q = require_positive("q", p.q)?;
                let point = State::new(
                    delta / (p.d * p.g),
                    p.alpha * p.beta / ag,
                    p.alpha * p.d / delta,
                    0.0,
                    (p.mu / q) * (th.r_w - 1.0),
                );
                (true, Some(point))
            } else {
                (false, None)
            }
        }
        EquilibriumLabel::E4 => {
            if th.r_ctl_w1 > 1.0 && th.r_ctl_w2 > 1.0 {
                let delta =
                    require_positive("lambda*g - alpha*beta", p.lambda * p.g - p.alpha * p.beta)?;
                let pp = require_positive("p", p.p)?;
                let q = require_positive("q", p.q)?;
                let c = require_positive("c", p.c)?;
                let point = State::new(
                    delta / (p.d * p.g),
                    p.h * p.d * p.g / (c * delta),
                    p.alpha * p.d / delta,
                    (p.a / pp) * (th.r_ctl_w2 - 1.0),
                    (p.mu / q) * (th.r_ctl_w1 - 1.0),
                );
                (true, Some(point))
            } else {
                (false, None)
            }
        }
    };

    if let Some(pt) = &point {
        pt.ensure_finite(&format!("{label} coordinates"))?;
        debug_assert!(
            crate::model::rhs_raw(p, pt, 0.0, 0.0).norm_inf()
                <= RESIDUAL_TOL * pt.norm_inf().max(1.0),
            "{label} residual exceeds tolerance"
        );
    }

    Ok(EquilibriumReport {
        label,
        exists,
        point,
        stability: Stability::NotApplicable,
        eigenvalues: None,
        thresholds: th,
        note,
    })
}

/// All five steady states in label order, unclassified.
pub fn equilibria(p: &ModelParams) -> Result<Vec<EquilibriumReport>> {
    EquilibriumLabel::ALL
        .into_iter()
        .map(|label| equilibrium(p, label))
        .collect()
}
