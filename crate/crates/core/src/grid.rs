//! Uniform time grids for fixed-step integration.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Uniform grid over `[t0, tf]` with `n` steps of width `h = (tf − t0)/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t0: f64,
    pub tf: f64,
    pub n: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, tf: f64, n: usize) -> Result<Self> {
        if !t0.is_finite() || !tf.is_finite() {
            return Err(Error::InvalidGrid("t0 and tf must be finite".to_string()));
        }
        if tf <= t0 {
            return Err(Error::InvalidGrid(format!(
                "tf = {tf} must exceed t0 = {t0}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidGrid("n must be at least 1".to_string()));
        }
        Ok(Self { t0, tf, n })
    }

    /// Grid starting at time zero.
    pub fn from_horizon(tf: f64, n: usize) -> Result<Self> {
        Self::new(0.0, tf, n)
    }

    /// Step width.
    pub fn h(&self) -> f64 {
        (self.tf - self.t0) / self.n as f64
    }

    /// Node time `t0 + i·h`.
    pub fn time(&self, i: usize) -> f64 {
        self.t0 + self.h() * i as f64
    }

    /// Number of nodes, `n + 1`.
    pub fn nodes(&self) -> usize {
        self.n + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_times_n_spans_interval() {
        let g = TimeGrid::from_horizon(100.0, 10_000).unwrap();
        assert!((g.h() * g.n as f64 - 100.0).abs() < 1e-12);
        assert_eq!(g.nodes(), 10_001);
    }

    #[test]
    fn degenerate_grids_rejected() {
        assert!(TimeGrid::new(0.0, 0.0, 10).is_err());
        assert!(TimeGrid::new(1.0, 0.5, 10).is_err());
        assert!(TimeGrid::from_horizon(1.0, 0).is_err());
    }
}
