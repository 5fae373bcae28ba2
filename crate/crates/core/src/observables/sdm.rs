//! Reduced single-particle density matrix and its natural orbitals.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::grid::GridSpec;
use super::lab_frame::{chi0, LabFrameState};
use crate::error::{Error, Result};
use crate::oscillator_basis::quadrature::gauss_legendre;

/// Gauss-Legendre nodes per grid interval in the `z₂` integral.
const PANEL_NODES: usize = 4;
/// Extent of the `z₂` integral beyond `±L`.
const EXTENSION: f64 = 10.0;
/// `|Z|` beyond which the centre-of-mass factor is dropped.
const CM_CUTOFF: f64 = 7.5;
/// Tail mass above which an accuracy warning is attached.
pub const TAIL_WARNING: f64 = 1e-2;
/// Relative threshold for retained natural populations.
const POPULATION_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensityMatrix {
    pub grid: GridSpec,
    /// `ρ(z₁, z₁′)` at grid nodes, row index `z₁`.
    pub values: DMatrix<Complex64>,
    /// `∫ρ(z, z) dz` over the grid.
    pub trace_estimate: f64,
    /// Mass outside `[-L, L]`.
    pub tail_estimate: f64,
    pub warnings: Vec<String>,
}

impl ReducedDensityMatrix {
    pub(crate) fn from_values(grid: GridSpec, values: DMatrix<Complex64>, tail_estimate: f64) -> Self {
        let w = grid.weights();
        let trace_estimate = (0..grid.points).map(|i| w[i] * values[(i, i)].re).sum();
        let mut warnings = Vec::new();
        if tail_estimate > TAIL_WARNING {
            warnings.push(format!(
                "mass outside the grid is {tail_estimate:.3e}; densities are renormalized with this estimate"
            ));
        }
        Self { grid, values, trace_estimate, tail_estimate, warnings }
    }

    /// Single-particle density `ρ(z, z)`.
    pub fn density(&self) -> Vec<f64> {
        (0..self.grid.points).map(|i| self.values[(i, i)].re).collect()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.grid.points;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.values[(i, j)] - self.values[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Copy scaled so that the grid trace equals `1 - tail_estimate`.
    pub fn renormalized(&self) -> Self {
        let target = (1.0 - self.tail_estimate).max(0.0);
        let s = if self.trace_estimate > 0.0 { target / self.trace_estimate } else { 1.0 };
        let mut out = self.clone();
        out.values *= Complex64::from(s);
        out.trace_estimate *= s;
        out
    }
}

/// `ρ(z₁, z₁′) = ∫ Ξ(z₁, z₂) Ξ*(z₁′, z₂) dz₂` on the grid.
///
/// The `z₂` integral uses Gauss-Legendre panels aligned with the grid, so
/// the cusp of `Ξ` at `z₁ = z₂` always falls on a panel edge. With that
/// alignment the relative coordinate takes only `O(N)` distinct values,
/// and the relative wave function is tabulated once.
pub fn sdm_build(xi: &LabFrameState<'_>, grid: GridSpec) -> Result<ReducedDensityMatrix> {
    grid.require_density()?;
    let n = grid.points;
    let h = grid.spacing();
    let ext = (EXTENSION / h).ceil() as i64;
    let (gx, gw) = gauss_legendre(PANEL_NODES);
    let s: Vec<f64> = gx.iter().map(|x| 0.5 * (x + 1.0)).collect();
    let sw: Vec<f64> = gw.iter().map(|w| 0.5 * w * h).collect();

    // panels k ∈ [-ext, n-2+ext]; relative offset d = i - k
    let k_lo = -ext;
    let k_hi = n as i64 - 2 + ext;
    let d_lo = -k_hi;
    let d_hi = n as i64 - 1 - k_lo;
    let rel: Vec<Complex64> = (d_lo..=d_hi)
        .into_par_iter()
        .flat_map_iter(|d| s.iter().map(move |sq| (d, *sq)).collect::<Vec<_>>())
        .map(|(d, sq)| xi.relative.amplitude((d as f64 - sq) * h * FRAC_1_SQRT_2))
        .collect::<Result<_>>()?;
    let phase = xi.phase();

    // rows of Ξ √w over the z₂ nodes, stored sparsely by their CM support
    let rows: Vec<(i64, Vec<Complex64>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let z1 = grid.node(i);
            let mut first = None;
            let mut vals = Vec::new();
            for k in k_lo..=k_hi {
                for q in 0..PANEL_NODES {
                    let z2 = grid.node(0) + (k as f64 + s[q]) * h;
                    let big_z = (z1 + z2) * FRAC_1_SQRT_2;
                    if big_z.abs() > CM_CUTOFF {
                        continue;
                    }
                    let idx = (k - k_lo) * PANEL_NODES as i64 + q as i64;
                    first.get_or_insert(idx);
                    let d = i as i64 - k;
                    let r = rel[((d - d_lo) as usize) * PANEL_NODES + q];
                    vals.push(phase * r * chi0(big_z) * sw[q].sqrt());
                }
            }
            (first.unwrap_or(0), vals)
        })
        .collect();

    let upper: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (si, ri) = &rows[i];
            (i..n)
                .map(|j| {
                    let (sj, rj) = &rows[j];
                    let lo = (*si).max(*sj);
                    let hi = (si + ri.len() as i64).min(sj + rj.len() as i64);
                    let mut acc = Complex64::new(0.0, 0.0);
                    for p in lo..hi {
                        acc += ri[(p - si) as usize] * rj[(p - sj) as usize].conj();
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut values = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (i, row) in upper.iter().enumerate() {
        for (off, v) in row.iter().enumerate() {
            let j = i + off;
            if i == j {
                values[(i, i)] = Complex64::from(v.re);
            } else {
                values[(i, j)] = *v;
                values[(j, i)] = v.conj();
            }
        }
    }
    let tail = xi.relative.tail_mass(grid.half_width)?;
    Ok(ReducedDensityMatrix::from_values(grid, values, tail))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralDecomposition {
    pub grid: GridSpec,
    /// Natural populations, descending.
    pub populations: Vec<f64>,
    /// Natural orbitals on the grid, one vector per population, normalized
    /// in the trapezoid inner product.
    #[serde(skip)]
    pub orbitals: Vec<Vec<Complex64>>,
    pub trace_estimate: f64,
}

impl SpectralDecomposition {
    /// Largest deviation of the orbital Gram matrix from the identity.
    pub fn gram_defect(&self) -> f64 {
        let w = self.grid.weights();
        let mut worst = 0.0f64;
        for (a, u) in self.orbitals.iter().enumerate() {
            for (b, v) in self.orbitals.iter().enumerate().skip(a) {
                let g: Complex64 = u.iter().zip(v).zip(&w).map(|((x, y), wk)| x.conj() * y * *wk).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - want).norm());
            }
        }
        worst
    }
}

/// Natural orbitals from the weighted eigenproblem `W^{1/2} ρ W^{1/2}`.
///
/// Populations above `10⁻⁸·trace` are kept and rescaled to sum to the
/// trace; each orbital is rotated so that its largest component is real
/// and positive.
pub fn natural_orbitals(rho: &ReducedDensityMatrix) -> Result<SpectralDecomposition> {
    let n = rho.grid.points;
    let w = rho.grid.weights();
    let sq: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let m = DMatrix::from_fn(n, n, |i, j| rho.values[(i, j)] * (sq[i] * sq[j]));
    let eig = SymmetricEigen::new(m);
    let trace = rho.trace_estimate;
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < -POPULATION_FLOOR * trace.abs() {
        return Err(Error::NotPositive { min_eigenvalue: min, trace });
    }
    let mut order: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > POPULATION_FLOOR * trace).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let kept: f64 = order.iter().map(|&k| eig.eigenvalues[k]).sum();
    let scale = if kept > 0.0 { trace / kept } else { 1.0 };
    let populations = order.iter().map(|&k| eig.eigenvalues[k] * scale).collect();
    let orbitals = order
        .iter()
        .map(|&k| {
            let col = eig.eigenvectors.column(k);
            let mut v: Vec<Complex64> = (0..n).map(|i| col[i] / sq[i]).collect();
            let peak = v.iter().cloned().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or_default();
            if peak.norm() > 0.0 {
                let rot = peak.conj() / peak.norm();
                v.iter_mut().for_each(|x| *x *= rot);
            }
            v
        })
        .collect();
    Ok(SpectralDecomposition { grid: rho.grid, populations, orbitals, trace_estimate: trace })
}
