//! Model parameters and the literature ranges used for property testing.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// The twelve biological rates of the model plus the two control-cost
/// weights of the treatment objective.
///
/// Units: `lambda` in cells·µl⁻¹·day⁻¹; `beta` in µl·virion⁻¹·day⁻¹; `p` in
/// ml·virion·day⁻¹; `big_n` dimensionless (virions per infected cell);
/// `cost_a1`/`cost_a2` dimensionless; everything else day⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelParams {
    /// Source rate of healthy CD4+ T cells.
    pub lambda: f64,
    /// Decay rate of healthy cells.
    pub d: f64,
    /// Infection rate of healthy cells by free virus.
    pub beta: f64,
    /// Death rate of infected cells (not CTL-mediated).
    pub a: f64,
    /// CTL killing rate of infected cells.
    pub p: f64,
    /// Clearance rate of free virus.
    pub mu: f64,
    /// Burst size: virions produced per infected cell over its lifetime.
    #[serde(rename = "N")]
    pub big_n: f64,
    /// Neutralization rate of virions by antibodies.
    pub q: f64,
    /// CTL activation rate.
    pub c: f64,
    /// CTL death rate.
    pub h: f64,
    /// Antibody activation rate.
    pub g: f64,
    /// Antibody death rate.
    pub alpha: f64,
    /// Cost weight of the infection-blocking drug (RTI).
    #[serde(rename = "A1")]
    pub cost_a1: f64,
    /// Cost weight of the production-inhibiting drug (PI).
    #[serde(rename = "A2")]
    pub cost_a2: f64,
}

impl ModelParams {
    /// The simulation parameter set used throughout: λ=1, d=0.1, β=0.00025,
    /// p=0.001, a=0.2, c=0.03, N=2000, μ=2.4, h=0.2, g=0.00013, α=0.12,
    /// q=0.01, A1=250, A2=2500.
    pub fn reference() -> Self {
        Self {
            lambda: 1.0,
            d: 0.1,
            beta: 0.00025,
            a: 0.2,
            p: 0.001,
            mu: 2.4,
            big_n: 2000.0,
            q: 0.01,
            c: 0.03,
            h: 0.2,
            g: 0.00013,
            alpha: 0.12,
            cost_a1: 250.0,
            cost_a2: 2500.0,
        }
    }

    /// Checks the model invariants: all rates nonnegative and finite, both
    /// control costs strictly positive.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in self.rate_fields() {
            if !value.is_finite() {
                return Err(Error::NonFinite(format!("parameter {name}")));
            }
            if value < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "rate {name} = {value} must be nonnegative"
                )));
            }
        }
        for (name, value) in [("A1", self.cost_a1), ("A2", self.cost_a2)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "control cost {name} = {value} must be positive"
                )));
            }
        }
        Ok(())
    }

    /// The twelve rate fields with their config-schema names.
    pub fn rate_fields(&self) -> [(&'static str, f64); 12] {
        [
            ("lambda", self.lambda),
            ("d", self.d),
            ("beta", self.beta),
            ("a", self.a),
            ("p", self.p),
            ("mu", self.mu),
            ("N", self.big_n),
            ("q", self.q),
            ("c", self.c),
            ("h", self.h),
            ("g", self.g),
            ("alpha", self.alpha),
        ]
    }

    /// Returns a copy with the named rate field replaced; `None` when the
    /// name matches no field. `A1`/`A2` are addressable as well.
    pub fn with_field(&self, name: &str, value: f64) -> Option<Self> {
        let mut out = *self;
        match name {
            "lambda" => out.lambda = value,
            "d" => out.d = value,
            "beta" => out.beta = value,
            "a" => out.a = value,
            "p" => out.p = value,
            "mu" => out.mu = value,
            "N" => out.big_n = value,
            "q" => out.q = value,
            "c" => out.c = value,
            "h" => out.h = value,
            "g" => out.g = value,
            "alpha" => out.alpha = value,
            "A1" => out.cost_a1 = value,
            "A2" => out.cost_a2 = value,
            _ => return None,
        }
        Some(out)
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::reference()
    }
}

/// Published literature ranges for the twelve rates (`(name, lo, hi)`).
/// The three antibody-related rates are single assumed values, so their
/// ranges are degenerate. Used by the parameter sweep and by randomized
/// property tests.
pub const LITERATURE_RANGES: [(&str, f64, f64); 12] = [
    ("lambda", 1.0, 10.0),
    ("d", 0.007, 0.1),
    ("beta", 0.00025, 0.5),
    ("a", 0.2, 0.3),
    ("p", 1.0e-4, 4.048e-4),
    ("mu", 2.06, 3.81),
    ("N", 6.25, 23599.9),
    ("q", 0.12, 0.12),
    ("c", 0.0051, 3.912),
    ("h", 0.004, 8.087),
    ("g", 0.00013, 0.00013),
    ("alpha", 0.12, 0.12),
];
