use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform grid on `[-L, L]` with trapezoid weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { half_width: 12.0, points: 512 }
    }
}

impl GridSpec {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::Domain(format!("grid half width must be positive, got {half_width}")));
        }
        if points < 64 || points % 2 != 0 {
            return Err(Error::Domain(format!("grid needs an even number of points >= 64, got {points}")));
        }
        Ok(Self { half_width, points })
    }

    /// Density computations need the grid to cover the bulk of the state.
    pub fn require_density(&self) -> Result<()> {
        if self.half_width < 6.0 {
            return Err(Error::Domain(format!("density grids need L >= 6, got {}", self.half_width)));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.node(i)).collect()
    }

    /// Trapezoid weights; they sum to `2L`.
    pub fn weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let mut w = vec![h; self.points];
        w[0] = 0.5 * h;
        w[self.points - 1] = 0.5 * h;
        w
    }

    pub(crate) fn check_same(&self, other: &GridSpec) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch(format!(
                "L = {}, N = {} against L = {}, N = {}",
                self.half_width, self.points, other.half_width, other.points
            )));
        }
        Ok(())
    }
}
