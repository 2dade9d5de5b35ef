//! Local stability classification: analytic threshold conditions
//! cross-checked against numerically computed Jacobian spectra.

use nalgebra::linalg::Schur;
use nalgebra::Matrix5;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equilibria::{equilibria, EquilibriumLabel, EquilibriumReport};
use crate::error::Error;
use crate::model::jacobian;
use crate::params::ModelParams;
use crate::state::State;
use crate::thresholds::Thresholds;
use crate::Result;

/// Local stability verdict for a steady state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stability {
    #[serde(rename = "stable")]
    LocallyAsymptoticallyStable,
    #[serde(rename = "unstable")]
    Unstable,
    /// Spectral abscissa within `±EPS_STAB` of zero — threshold-boundary
    /// territory the propositions do not decide.
    #[serde(rename = "marginal")]
    Marginal,
    /// The point does not exist.
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::LocallyAsymptoticallyStable => "stable",
            Stability::Unstable => "unstable",
            Stability::Marginal => "marginal",
            Stability::NotApplicable => "not-applicable",
        }
    }
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Marginal band on eigenvalue real parts (day⁻¹): verdicts inside it are
/// reported as `Marginal` rather than forced to a side.
pub const EPS_STAB: f64 = 1e-7;

/// Eigenvalues of a real 5×5 matrix, sorted by real part then imaginary
/// part.
pub fn eigenvalues(m: &Matrix5<f64>) -> Result<[Complex64; 5]> {
    let schur = Schur::try_new(*m, f64::EPSILON, 100_000)
        .ok_or_else(|| Error::EigenvalueFailure("5x5 Jacobian".to_string()))?;
    let ev = schur.complex_eigenvalues();
    let mut out = [Complex64::new(0.0, 0.0); 5];
    for (o, e) in out.iter_mut().zip(ev.iter()) {
        *o = *e;
    }
    sort_eigenvalues(&mut out);
    Ok(out)
}

pub fn sort_eigenvalues(ev: &mut [Complex64; 5]) {
    ev.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

/// Closed-form spectrum at the disease-free point: −d, −α, −h, and the two
/// roots of ξ² + (a+μ)ξ + aμ(1−R₀). Sorted like [`eigenvalues`].
pub fn disease_free_eigenvalues(p: &ModelParams, th: &Thresholds) -> [Complex64; 5] {
    let half_trace = -(p.a + p.mu) / 2.0;
    // (a+mu)^2 - 4*a*mu*(1-R0) = (a-mu)^2 + 4*a*mu*R0 >= 0: roots are real.
    let disc = (p.a + p.mu) * (p.a + p.mu) - 4.0 * p.a * p.mu * (1.0 - th.r0);
    let root = disc.max(0.0).sqrt() / 2.0;
    let mut out = [
        Complex64::new(-p.d, 0.0),
        Complex64::new(-p.alpha, 0.0),
        Complex64::new(-p.h, 0.0),
        Complex64::new(half_trace - root, 0.0),
        Complex64::new(half_trace + root, 0.0),
    ];
    sort_eigenvalues(&mut out);
    out
}

/// Verdict from the spectrum alone: stable when every real part is below
/// `−EPS_STAB`, unstable when any exceeds `+EPS_STAB`, marginal otherwise.
pub fn numeric_verdict(ev: &[Complex64; 5]) -> Stability {
    let max_re = ev.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    if max_re < -EPS_STAB {
        Stability::LocallyAsymptoticallyStable
    } else if ev.iter().any(|e| e.re > EPS_STAB) {
        Stability::Unstable
    } else {
        Stability::Marginal
    }
}

/// Verdict from the threshold conditions of the stability propositions:
///
/// * `Ef` stable iff R₀ < 1;
/// * `E1` stable iff R^W < 1 and R^CTL < 1 (given existence R₀ > 1);
/// * `E2` stable iff R₁^{CTL,W} < 1 (equality left marginal: the
///   proposition states `≤` but its proof concludes only for `<`);
/// * `E3` stable iff R₂^{CTL,W} < 1;
/// * `E4` stable whenever it exists (both dual thresholds above 1).
pub fn analytic_verdict(label: EquilibriumLabel, th: &Thresholds) -> Stability {
    let cmp = |r: f64| -> Stability {
        if r < 1.0 {
            Stability::LocallyAsymptoticallyStable
        } else if r > 1.0 {
            Stability::Unstable
        } else {
            Stability::Marginal
        }
    };
    match label {
        EquilibriumLabel::Ef => cmp(th.r0),
        EquilibriumLabel::E1 => {
            if th.r_w < 1.0 && th.r_ctl < 1.0 {
                Stability::LocallyAsymptoticallyStable
            } else if th.r_w > 1.0 || th.r_ctl > 1.0 {
                Stability::Unstable
            } else {
                Stability::Marginal
            }
        }
        EquilibriumLabel::E2 => cmp(th.r_ctl_w1),
        EquilibriumLabel::E3 => cmp(th.r_ctl_w2),
        EquilibriumLabel::E4 => Stability::LocallyAsymptoticallyStable,
    }
}

/// Fills `stability` and `eigenvalues` on a report. The analytic and numeric
/// verdicts must agree outside the marginal band; a contradiction is an
/// internal-consistency error, except for `E2`/`E3` in the region where the
/// quartic Routh–Hurwitz premise of the propositions fails — there the
/// numeric verdict is authoritative.
pub fn classify_stability(
    p: &ModelParams,
    report: &EquilibriumReport,
) -> Result<EquilibriumReport> {
    let mut out = report.clone();
    let Some(point) = report.point.filter(|_| report.exists) else {
        out.stability = Stability::NotApplicable;
        return Ok(out);
    };

    let j = jacobian(p, &point)?;
    let ev = eigenvalues(&j)?;
    let numeric = numeric_verdict(&ev);
    let analytic = analytic_verdict(report.label, &report.thresholds);
    out.eigenvalues = Some(ev);

    out.stability = if numeric == Stability::Marginal || analytic == numeric {
        numeric
    } else if analytic == Stability::Marginal {
        // A threshold sits exactly on 1 while the spectrum clears the band;
        // the spectrum decides.
        numeric
    } else {
        let premise_holds = match report.label {
            EquilibriumLabel::E2 => quartic_is_hurwitz(&routh_hurwitz::e2_quartic(p, &point)),
            EquilibriumLabel::E3 => quartic_is_hurwitz(&routh_hurwitz::e3_quartic(p, &point)),
            _ => true,
        };
        if premise_holds {
            return Err(Error::StabilityContradiction {
                label: report.label.to_string(),
                analytic: analytic.to_string(),
                numeric: numeric.to_string(),
            });
        }
        out.note =
            Some("quartic Routh-Hurwitz premise fails; numeric verdict authoritative".to_string());
        numeric
    };
    Ok(out)
}

/// All five steady states with stability classified.
pub fn classified_equilibria(p: &ModelParams) -> Result<Vec<EquilibriumReport>> {
    equilibria(p)?
        .iter()
        .map(|r| classify_stability(p, r))
        .collect()
}

/// Routh–Hurwitz test for ξ⁴ + a₁ξ³ + a₂ξ² + a₃ξ + a₄.
pub fn quartic_is_hurwitz(coeff: &[f64; 4]) -> bool {
    let [a1, a2, a3, a4] = *coeff;
    a1 > 0.0 && a3 > 0.0 && a4 > 0.0 && a1 * a2 * a3 > a3 * a3 + a1 * a1 * a4
}

/// Characteristic-polynomial coefficients of the Jacobian sub-blocks at the
/// infection steady states, exposed for cross-checking the dense eigenvalue
/// path. Each function takes an existing point of the matching label.
pub mod routh_hurwitz {
    use super::*;

    /// Cubic factor at `E1`: ξ³ + 𝒜₁ξ² + ℬ₁ξ + 𝒞₁ with
    /// 𝒜₁ = a + μ + dR₀, ℬ₁ = ad + μdR₀ + ad(R₀−1), 𝒞₁ = adμ(R₀−1).
    pub fn e1_cubic(p: &ModelParams, th: &Thresholds) -> [f64; 3] {
        [
            p.a + p.mu + p.d * th.r0,
            p.a * p.d + p.mu * p.d * th.r0 + p.a * p.d * (th.r0 - 1.0),
            p.a * p.d * p.mu * (th.r0 - 1.0),
        ]
    }

    /// The two decoupled real eigenvalues at `E1` in their factored forms
    /// `(gx₁v₁ − α, cx₁y₁ − h) = (D₁(R^W − 1), D₂(R^CTL − 1))`.
    pub fn e1_scalar_eigenvalues(p: &ModelParams, th: &Thresholds) -> [f64; 2] {
        let d1 = p.d * p.g * p.mu / (p.big_n * p.beta * p.beta);
        let d2 = p.d * p.c * p.mu * p.mu / (p.a * p.big_n * p.big_n * p.beta * p.beta);
        [d1 * (th.r_w - 1.0), d2 * (th.r_ctl - 1.0)]
    }

    /// Quartic factor at `E2` (the block spanning x, y, v, z).
    pub fn e2_quartic(p: &ModelParams, pt: &State) -> [f64; 4] {
        let State { x, y, v, z, .. } = *pt;
        let bv = p.beta * v;
        let pz = p.p * z;
        [
            p.d + p.a + p.mu + bv + pz,
            (p.d + bv) * (p.a + p.mu) + p.a * p.mu + pz * (p.d + p.mu + p.h + bv)
                - p.a * p.big_n * p.beta * x,
            p.a * p.mu * (p.d + bv)
                + pz * (p.mu * p.d + p.h * p.d + p.mu * p.h + p.mu * bv + p.h * bv)
                - p.a * p.big_n * p.beta * p.d * x,
            pz * (p.mu * p.h * p.d + p.mu * p.h * bv - p.a * p.big_n * p.beta * p.h * y),
        ]
    }

    /// The decoupled antibody eigenvalue at `E2`: `gx₂v₂ − α = α(R₁^{CTL,W} − 1)`.
    pub fn e2_scalar_eigenvalue(p: &ModelParams, th: &Thresholds) -> f64 {
        p.alpha * (th.r_ctl_w1 - 1.0)
    }

    /// Quartic factor at `E3` (the block spanning x, y, v, w).
    pub fn e3_quartic(p: &ModelParams, pt: &State) -> [f64; 4] {
        let State { x, v, w, .. } = *pt;
        let bv = p.beta * v;
        let qw = p.q * w;
        [
            p.a + p.d + p.mu + bv + qw,
            (p.d + bv) * (p.a + p.mu) + p.a * p.mu + (p.d + p.a + p.alpha + bv) * qw
                - p.a * p.big_n * p.beta * x,
            p.a * p.mu * (p.d + bv) + (p.a * p.d + p.alpha * p.d + p.a * p.alpha + p.a * bv) * qw
                - p.a * p.big_n * p.d * p.beta * x,
            p.a * p.d * p.alpha * qw,
        ]
    }

    /// The decoupled CTL eigenvalue at `E3`: `cx₃y₃ − h = h(R₂^{CTL,W} − 1)`.
    pub fn e3_scalar_eigenvalue(p: &ModelParams, th: &Thresholds) -> f64 {
        p.h * (th.r_ctl_w2 - 1.0)
    }

    /// Full quintic at `E4`: ξ⁵ + 𝒜₄ξ⁴ + ℬ₄ξ³ + 𝒞₄ξ² + 𝒟₄ξ + ℰ₄.
    ///
    /// 𝒟₄ and ℰ₄ are derived directly from the Jacobian via the equilibrium
    /// identities cx₄y₄ = h and gx₄v₄ = α:
    ///
    /// ```text
    /// 𝒟₄ = adαqw₄ + pz₄(dhμ + μhβv₄ − aNβhy₄) + pqz₄w₄(dα + dh + hβv₄ + hα)
    /// ℰ₄ = αhd·pqz₄w₄
    /// ```
    pub fn e4_quintic(p: &ModelParams, pt: &State) -> [f64; 5] {
        let State { x, y, v, z, w } = *pt;
        let bv = p.beta * v;
        let pz = p.p * z;
        let qw = p.q * w;
        let anbx = p.a * p.big_n * p.beta * x;
        [
            p.a + p.d + p.mu + bv + pz + qw,
            (p.d + bv) * (p.a + p.mu)
                + p.a * p.mu
                + pz * (p.d + p.h + p.mu + bv + qw)
                + qw * (p.d + p.a + p.alpha + bv)
                - anbx,
            p.a * p.mu * (p.d + bv)
                + pz * (p.d * p.mu + p.d * p.h + p.mu * p.h + p.mu * bv + p.h * bv)
                + qw * (p.a * p.d + p.alpha * p.d + p.a * p.alpha + p.a * bv)
                + pz * qw * (p.d + p.alpha + p.h + bv)
                - anbx * p.d,
            p.a * p.d * p.alpha * qw
                + pz * (p.d * p.h * p.mu + p.mu * p.h * bv - p.a * p.big_n * p.beta * p.h * y)
                + pz * qw * (p.d * p.alpha + p.d * p.h + p.h * bv + p.h * p.alpha),
            p.alpha * p.h * p.d * pz * qw,
        ]
    }
}
