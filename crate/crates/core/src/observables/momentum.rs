//! Momentum distributions and their power-law tails.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::sdm::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::fit::log_log_slope;

/// Smallest number of samples in a slope window.
pub const MIN_WINDOW_POINTS: usize = 10;
/// Values below this are treated as numerical noise in slope fits.
const UNDERFLOW: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentumDistribution {
    pub k: Vec<f64>,
    pub values: Vec<f64>,
    /// Trapezoid integral of `n(k)` over the `k` grid.
    pub normalization_estimate: f64,
    /// Number of negative values clipped to zero.
    pub clipped: usize,
}

impl MomentumDistribution {
    pub fn new(k: Vec<f64>, mut values: Vec<f64>) -> Self {
        let mut clipped = 0;
        for v in values.iter_mut() {
            if *v < 0.0 {
                clipped += 1;
                *v = 0.0;
            }
        }
        let normalization_estimate = trapezoid(&k, &values);
        Self { k, values, normalization_estimate, clipped }
    }

    /// Copy scaled to unit normalization.
    pub fn renormalized(&self) -> Self {
        let s = 1.0 / self.normalization_estimate;
        Self::new(self.k.clone(), self.values.iter().map(|v| v * s).collect())
    }

    /// Mass beyond `±k_max`, extrapolating the power law fitted to the
    /// outermost tenth of the positive grid.
    pub fn tail_mass_estimate(&self) -> Result<f64> {
        let kmax = self.k.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let p = tail_exponent(self, (0.9 * kmax, kmax))?;
        if p >= -1.0 {
            return Err(Error::Statistics(format!("tail slope {p:.3} is not integrable")));
        }
        let edge = *self.values.last().unwrap_or(&0.0);
        Ok(2.0 * edge * kmax / (-p - 1.0))
    }

    pub fn weights(&self) -> Vec<f64> {
        let n = self.k.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.k[i] - self.k[i - 1] } else { 0.0 };
                let right = if i + 1 < n { self.k[i + 1] - self.k[i] } else { 0.0 };
                0.5 * (left + right)
            })
            .collect()
    }
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2).zip(y.windows(2)).map(|(a, b)| 0.5 * (a[1] - a[0]) * (b[0] + b[1])).sum()
}

/// Symmetric grid of `points` momenta on `[-k_max, k_max]`.
pub fn momentum_grid(k_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(k_max > 0.0) || points < 2 {
        return Err(Error::Domain(format!("momentum grid needs k_max > 0 and >= 2 points, got {k_max}, {points}")));
    }
    let step = 2.0 * k_max / (points - 1) as f64;
    Ok((0..points).map(|j| -k_max + j as f64 * step).collect())
}

/// `n(k) = Σ_i λ_i |β̃_i(k)|²` with `β̃(k) = (2π)^{-1/2} ∫ β(z) e^{-ikz} dz`
/// by the grid quadrature.
pub fn momentum_distribution(dec: &SpectralDecomposition, k_max: f64, points: usize) -> Result<MomentumDistribution> {
    let h = dec.grid.spacing();
    if h > PI / k_max {
        return Err(Error::Resolution(format!(
            "grid spacing {h:.4} does not resolve k_max = {k_max} (needs <= {:.4})",
            PI / k_max
        )));
    }
    let k = momentum_grid(k_max, points)?;
    let z = dec.grid.nodes();
    let w = dec.grid.weights();
    let norm = 1.0 / (2.0 * PI);
    let values = k
        .par_iter()
        .map(|&kk| {
            let phases: Vec<Complex64> =
                z.iter().zip(&w).map(|(zi, wi)| Complex64::from_polar(*wi, -kk * zi)).collect();
            dec.populations
                .iter()
                .zip(&dec.orbitals)
                .map(|(lam, beta)| {
                    let ft: Complex64 = beta.iter().zip(&phases).map(|(b, p)| b * p).sum();
                    lam * ft.norm_sqr() * norm
                })
                .sum()
        })
        .collect();
    Ok(MomentumDistribution::new(k, values))
}

/// Log-log least-squares slope of `n(k)` over `window` (positive momenta).
pub fn tail_exponent(dist: &MomentumDistribution, window: (f64, f64)) -> Result<f64> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Domain(format!("slope window must satisfy 0 < lo < hi, got ({lo}, {hi})")));
    }
    let kmax = dist.k.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi > kmax {
        return Err(Error::Domain(format!("slope window ends at {hi} beyond the resolved range {kmax}")));
    }
    let (x, y): (Vec<f64>, Vec<f64>) =
        dist.k.iter().zip(&dist.values).filter(|(k, _)| **k >= lo && **k <= hi).map(|(k, v)| (*k, *v)).unzip();
    if x.len() < MIN_WINDOW_POINTS {
        return Err(Error::Statistics(format!(
            "window ({lo}, {hi}) holds {} points, need {MIN_WINDOW_POINTS}",
            x.len()
        )));
    }
    if let Some(v) = y.iter().find(|v| **v < UNDERFLOW) {
        return Err(Error::Underflow(format!("n(k) = {v:e} inside the slope window")));
    }
    log_log_slope(&x, &y)
}

/// Window found by [`slope_plateau`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeWindow {
    pub k_lo: f64,
    pub k_hi: f64,
    pub slope: f64,
}

/// Ratio `k_hi/k_lo` of plateau search windows.
pub const PLATEAU_RATIO: f64 = 1.5;
/// Largest difference between the slopes of the two halves of a window
/// for it to count as straight.
pub const PLATEAU_FLATNESS: f64 = 0.3;

/// Searches windows `[k, 1.5 k]` inside `range` that are straight on
/// log-log axes (the two half-window slopes differ by at most
/// [`PLATEAU_FLATNESS`]) and returns the one whose slope is closest to
/// `target`.
///
/// Windows whose fit fails (underflow, too few points) are skipped.
pub fn slope_plateau(dist: &MomentumDistribution, target: f64, range: (f64, f64)) -> Result<SlopeWindow> {
    let mut best: Option<SlopeWindow> = None;
    for &k_lo in dist.k.iter().filter(|k| **k >= range.0 && **k > 0.0) {
        let k_hi = k_lo * PLATEAU_RATIO;
        if k_hi > range.1 {
            break;
        }
        let mid = k_lo * PLATEAU_RATIO.sqrt();
        let (Ok(slope), Ok(a), Ok(b)) =
            (tail_exponent(dist, (k_lo, k_hi)), tail_exponent(dist, (k_lo, mid)), tail_exponent(dist, (mid, k_hi)))
        else {
            continue;
        };
        if (a - b).abs() > PLATEAU_FLATNESS {
            continue;
        }
        if best.map_or(true, |w| (slope - target).abs() < (w.slope - target).abs()) {
            best = Some(SlopeWindow { k_lo, k_hi, slope });
        }
    }
    best.ok_or_else(|| Error::Statistics(format!("no straight slope window inside {range:?}")))
}
