//! Analytic reference states: product ground states of the non-interacting
//! (b), fermionic (f) and symmetrized fermionic (sf) relative problems.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use super::lab_frame::lab_frame_state;
use super::momentum::{momentum_distribution, momentum_grid, MomentumDistribution};
use super::sdm::{natural_orbitals, sdm_build, ReducedDensityMatrix};
use crate::error::{Error, Result};
use crate::oscillator_basis::{TgBranch, TgEigenstate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceName {
    RhoB,
    RhoF,
    RhoSf,
    NB,
    NF,
    NSf,
}

impl std::str::FromStr for ReferenceName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rho_b" => Self::RhoB,
            "rho_f" => Self::RhoF,
            "rho_sf" => Self::RhoSf,
            "n_b" => Self::NB,
            "n_f" => Self::NF,
            "n_sf" => Self::NSf,
            other => return Err(Error::Domain(format!("unknown reference state {other}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Reference {
    Rdm(ReducedDensityMatrix),
    Momentum(MomentumDistribution),
}

/// Momentum grid used for reference distributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumGrid {
    pub k_max: f64,
    pub points: usize,
}

impl Default for MomentumGrid {
    fn default() -> Self {
        Self { k_max: 12.0, points: 1024 }
    }
}

fn gauss(z: f64, zp: f64) -> f64 {
    (-(z * z + zp * zp) / 2.0).exp()
}

pub fn rho_b(z: f64, zp: f64) -> f64 {
    gauss(z, zp) / PI.sqrt()
}

pub fn rho_f(z: f64, zp: f64) -> f64 {
    (1.0 + 2.0 * z * zp) / (2.0 * PI.sqrt()) * gauss(z, zp)
}

/// `ρ_f` plus the sign-split correction, which vanishes on the diagonal.
pub fn rho_sf(z: f64, zp: f64) -> f64 {
    if z == zp {
        return rho_f(z, zp);
    }
    use statrs::function::erf::erf;
    let sgn = if zp > z { 1.0 } else { -1.0 };
    let bracket = zp * (-z * z).exp() - z * (-zp * zp).exp() + PI.sqrt() * (z * zp + 0.5) * (erf(z) - erf(zp));
    rho_f(z, zp) + gauss(z, zp) / PI * sgn * bracket
}

pub fn n_b(k: f64) -> f64 {
    (-k * k).exp() / PI.sqrt()
}

pub fn n_f(k: f64) -> f64 {
    (1.0 + 2.0 * k * k) / (2.0 * PI.sqrt()) * (-k * k).exp()
}

/// Mass of `ρ_f(z)` outside `[-L, L]`; the `ρ_b` tail is smaller.
fn gaussian_tail(l: f64) -> f64 {
    statrs::function::erf::erfc(l) + l * (-l * l).exp() / PI.sqrt()
}

pub fn reference_rdm(name: ReferenceName, grid: GridSpec) -> Result<ReducedDensityMatrix> {
    let f: fn(f64, f64) -> f64 = match name {
        ReferenceName::RhoB => rho_b,
        ReferenceName::RhoF => rho_f,
        ReferenceName::RhoSf => rho_sf,
        other => return Err(Error::Domain(format!("{other:?} is a momentum distribution"))),
    };
    let z = grid.nodes();
    let values = DMatrix::from_fn(grid.points, grid.points, |i, j| Complex64::from(f(z[i], z[j])));
    Ok(ReducedDensityMatrix::from_values(grid, values, gaussian_tail(grid.half_width)))
}

/// Reference momentum distribution; `n_sf` goes through the full pipeline
/// from `φ₀`, the others are closed forms.
pub fn reference_momentum(name: ReferenceName, grid: GridSpec, k: MomentumGrid) -> Result<MomentumDistribution> {
    let f: fn(f64) -> f64 = match name {
        ReferenceName::NB => n_b,
        ReferenceName::NF => n_f,
        ReferenceName::NSf => {
            let phi0 = TgEigenstate::new(0, TgBranch::Symmetrized);
            let rho = sdm_build(&lab_frame_state(&phi0, 0.0), grid)?;
            return momentum_distribution(&natural_orbitals(&rho)?, k.k_max, k.points);
        }
        other => return Err(Error::Domain(format!("{other:?} is a density matrix"))),
    };
    let ks = momentum_grid(k.k_max, k.points)?;
    let v = ks.iter().map(|x| f(*x)).collect();
    Ok(MomentumDistribution::new(ks, v))
}

pub fn reference_state(name: ReferenceName, grid: GridSpec, k: MomentumGrid) -> Result<Reference> {
    match name {
        ReferenceName::RhoB | ReferenceName::RhoF | ReferenceName::RhoSf => {
            Ok(Reference::Rdm(reference_rdm(name, grid)?))
        }
        _ => Ok(Reference::Momentum(reference_momentum(name, grid, k)?)),
    }
}
