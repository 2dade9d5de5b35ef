//! Compartment and adjoint vectors.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Compartment concentrations: uninfected cells `x`, infected cells `y`,
/// free virus `v`, CTL cells `z`, antibodies `w`. Components omitted from a
/// serialized document default to zero.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct State {
    pub x: f64,
    pub y: f64,
    pub v: f64,
    pub z: f64,
    pub w: f64,
}

impl State {
    pub const ZERO: State = State::new(0.0, 0.0, 0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, v: f64, z: f64, w: f64) -> Self {
        Self { x, y, v, z, w }
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.x, self.y, self.v, self.z, self.w]
    }

    pub fn from_array(a: [f64; 5]) -> Self {
        Self::new(a[0], a[1], a[2], a[3], a[4])
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|c| c.is_finite())
    }

    /// Errors with the name of the first non-finite component.
    pub fn ensure_finite(&self, context: &str) -> Result<()> {
        for (name, value) in ["x", "y", "v", "z", "w"].iter().zip(self.as_array()) {
            if !value.is_finite() {
                return Err(Error::NonFinite(format!("{context} component {name}")));
            }
        }
        Ok(())
    }

    pub fn min_component(&self) -> f64 {
        self.as_array().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Sup norm over the five components.
    pub fn norm_inf(&self) -> f64 {
        self.as_array().into_iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(k * self.x, k * self.y, k * self.v, k * self.z, k * self.w)
    }

    pub fn add(&self, o: &State) -> Self {
        Self::new(
            self.x + o.x,
            self.y + o.y,
            self.v + o.v,
            self.z + o.z,
            self.w + o.w,
        )
    }

    /// `self + k * o`, the axpy step used by the integrators.
    pub fn add_scaled(&self, k: f64, o: &State) -> Self {
        Self::new(
            self.x + k * o.x,
            self.y + k * o.y,
            self.v + k * o.v,
            self.z + k * o.z,
            self.w + k * o.w,
        )
    }
}

/// Adjoint (costate) variables λ₁..λ₅, one per compartment, with zero
/// terminal values. Objective units per state unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Adjoint {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
    pub l5: f64,
}

impl Adjoint {
    pub const ZERO: Adjoint = Adjoint::new(0.0, 0.0, 0.0, 0.0, 0.0);

    pub const fn new(l1: f64, l2: f64, l3: f64, l4: f64, l5: f64) -> Self {
        Self { l1, l2, l3, l4, l5 }
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.l1, self.l2, self.l3, self.l4, self.l5]
    }

    pub fn from_array(a: [f64; 5]) -> Self {
        Self::new(a[0], a[1], a[2], a[3], a[4])
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|c| c.is_finite())
    }

    pub fn add_scaled(&self, k: f64, o: &Adjoint) -> Self {
        Self::new(
            self.l1 + k * o.l1,
            self.l2 + k * o.l2,
            self.l3 + k * o.l3,
            self.l4 + k * o.l4,
            self.l5 + k * o.l5,
        )
    }

    /// Midpoint of two adjoint vectors.
    pub fn midpoint(&self, o: &Adjoint) -> Self {
        self.add_scaled(1.0, o).scale(0.5)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(
            k * self.l1,
            k * self.l2,
            k * self.l3,
            k * self.l4,
            k * self.l5,
        )
    }
}

/// One pair of drug efficiencies `(u1, u2)`: `u1` blocks new infection
/// (RTI), `u2` inhibits virion production (PI). Admissible range `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlPair {
    pub u1: f64,
    pub u2: f64,
}

impl ControlPair {
    pub const ZERO: ControlPair = ControlPair { u1: 0.0, u2: 0.0 };

    pub const fn new(u1: f64, u2: f64) -> Self {
        Self { u1, u2 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.u1) {
            return Err(Error::ControlOutOfBounds {
                name: "u1",
                value: self.u1,
            });
        }
        if !(0.0..=1.0).contains(&self.u2) {
            return Err(Error::ControlOutOfBounds {
                name: "u2",
                value: self.u2,
            });
        }
        Ok(())
    }

    pub fn midpoint(&self, o: &ControlPair) -> Self {
        Self::new(0.5 * (self.u1 + o.u1), 0.5 * (self.u2 + o.u2))
    }
}
