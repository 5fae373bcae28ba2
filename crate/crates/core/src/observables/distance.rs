use super::momentum::MomentumDistribution;
use super::sdm::ReducedDensityMatrix;
use crate::error::{Error, Result};

/// Objects compared by a quadrature-weighted L² distance.
pub trait WeightedDistance {
    fn distance(&self, other: &Self) -> Result<f64>;
}

impl WeightedDistance for ReducedDensityMatrix {
    fn distance(&self, other: &Self) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        let w = self.grid.weights();
        let n = self.grid.points;
        let mut acc = 0.0;
        for j in 0..n {
            for i in 0..n {
                acc += w[i] * w[j] * (self.values[(i, j)] - other.values[(i, j)]).norm_sqr();
            }
        }
        Ok(acc.sqrt())
    }
}

impl WeightedDistance for MomentumDistribution {
    fn distance(&self, other: &Self) -> Result<f64> {
        if self.k != other.k {
            return Err(Error::GridMismatch("momentum grids differ".into()));
        }
        let w = self.weights();
        let acc: f64 = w.iter().zip(&self.values).zip(&other.values).map(|((w, a), b)| w * (a - b).powi(2)).sum();
        Ok(acc.sqrt())
    }
}

pub fn distribution_distance<T: WeightedDistance>(a: &T, b: &T) -> Result<f64> {
    a.distance(b)
}
