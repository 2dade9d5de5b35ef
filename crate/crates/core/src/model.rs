//! Uncontrolled and controlled vector fields and the model Jacobian.

use nalgebra::Matrix5;

use crate::params::ModelParams;
use crate::state::State;
use crate::Result;

/// Right-hand side of the uncontrolled system:
///
/// ```text
/// (λ − dx − βxv,  βxv − ay − pyz,  aNy − μv − qvw,  cxyz − hz,  gxvw − αw)
/// ```
///
/// Components are per-day rates of change.
pub fn rhs_uncontrolled(p: &ModelParams, s: &State) -> Result<State> {
    rhs_controlled_unchecked(p, s, 0.0, 0.0)
}

/// Right-hand side of the two-drug controlled system: `u1` scales the
/// infection term by `(1 − u1)`, `u2` scales virion production by `(1 − u2)`.
/// With `u1 = u2 = 0` this is bit-for-bit `rhs_uncontrolled`.
pub fn rhs_controlled(p: &ModelParams, s: &State, u1: f64, u2: f64) -> Result<State> {
    if !(0.0..=1.0).contains(&u1) {
        return Err(crate::Error::ControlOutOfBounds {
            name: "u1",
            value: u1,
        });
    }
    if !(0.0..=1.0).contains(&u2) {
        return Err(crate::Error::ControlOutOfBounds {
            name: "u2",
            value: u2,
        });
    }
    rhs_controlled_unchecked(p, s, u1, u2)
}

fn rhs_controlled_unchecked(p: &ModelParams, s: &State, u1: f64, u2: f64) -> Result<State> {
    s.ensure_finite("state")?;
    Ok(rhs_raw(p, s, u1, u2))
}

/// The bare vector field without finiteness or bounds checks. The inner
/// loops of the integrators and the sweep solver call this directly.
#[inline]
pub(crate) fn rhs_raw(p: &ModelParams, s: &State, u1: f64, u2: f64) -> State {
    let infection = p.beta * (1.0 - u1) * s.x * s.v;
    State::new(
        p.lambda - p.d * s.x - infection,
        infection - p.a * s.y - p.p * s.y * s.z,
        p.a * p.big_n * (1.0 - u2) * s.y - p.mu * s.v - p.q * s.v * s.w,
        p.c * s.x * s.y * s.z - p.h * s.z,
        p.g * s.x * s.v * s.w - p.alpha * s.w,
    )
}

/// Jacobian of the uncontrolled vector field at `s`:
///
/// ```text
/// ⎡ −d−βv    0      −βx     0       0     ⎤
/// ⎢  βv    −a−pz     βx    −py      0     ⎥
/// ⎢  0      aN    −μ−qw     0      −qv    ⎥
/// ⎢  cyz    cxz      0    cxy−h     0     ⎥
/// ⎣  gvw     0      gxw     0     gxv−α   ⎦
/// ```
pub fn jacobian(p: &ModelParams, s: &State) -> Result<Matrix5<f64>> {
    s.ensure_finite("state")?;
    let State { x, y, v, z, w } = *s;
    Ok(Matrix5::new(
        -p.d - p.beta * v,
        0.0,
        -p.beta * x,
        0.0,
        0.0,
        //
        p.beta * v,
        -p.a - p.p * z,
        p.beta * x,
        -p.p * y,
        0.0,
        //
        0.0,
        p.a * p.big_n,
        -p.mu - p.q * w,
        0.0,
        -p.q * v,
        //
        p.c * y * z,
        p.c * x * z,
        0.0,
        p.c * x * y - p.h,
        0.0,
        //
        p.g * v * w,
        0.0,
        p.g * x * w,
        0.0,
        p.g * x * v - p.alpha,
    ))
}
