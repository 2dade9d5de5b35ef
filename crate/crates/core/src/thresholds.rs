//! Reproduction thresholds governing existence and stability of the
//! infection steady states.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::params::ModelParams;
use crate::Result;

/// The five dimensionless reproduction numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Basic reproduction number R₀ = λNβ/(dμ).
    pub r0: f64,
    /// Reproduction number with CTL response: (Nβ/μ)·(λμc − aNβh)/(dμc).
    pub r_ctl: f64,
    /// Reproduction number with antibody response: Nβ(λg − αβ)/(μdg).
    pub r_w: f64,
    /// First dual-response number: aNhg/(αμc).
    pub r_ctl_w1: f64,
    /// Second dual-response number: αβc(λg − αβ)/(ahdg²).
    pub r_ctl_w2: f64,
}

/// Computes all five thresholds from the closed forms. Errors with the name
/// of the vanishing quantity when a denominator is zero.
pub fn thresholds(p: &ModelParams) -> Result<Thresholds> {
    p.validate()?;
    let denom = |name: &str, value: f64| -> Result<f64> {
        if value == 0.0 {
            Err(Error::SingularParameter(name.to_string()))
        } else {
            Ok(value)
        }
    };
    let r0 = p.lambda * p.big_n * p.beta / denom("d*mu", p.d * p.mu)?;
    let r_ctl = (p.big_n * p.beta / p.mu) * (p.lambda * p.mu * p.c - p.a * p.big_n * p.beta * p.h)
        / denom("d*mu*c", p.d * p.mu * p.c)?;
    let r_w =
        p.big_n * p.beta * (p.lambda * p.g - p.alpha * p.beta) / denom("mu*d*g", p.mu * p.d * p.g)?;
    let r_ctl_w1 = p.a * p.big_n * p.h * p.g / denom("alpha*mu*c", p.alpha * p.mu * p.c)?;
    let r_ctl_w2 = p.alpha * p.beta * p.c * (p.lambda * p.g - p.alpha * p.beta)
        / denom("a*h*d*g^2", p.a * p.h * p.d * p.g * p.g)?;
    Ok(Thresholds {
        r0,
        r_ctl,
        r_w,
        r_ctl_w1,
        r_ctl_w2,
    })
}
