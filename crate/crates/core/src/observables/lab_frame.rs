//! Two-body wave function `Ξ(z₁, z₂) = Ψ(z) χ₀(Z) e^{-it/2}` with
//! `z = (z₁ - z₂)/√2` and `Z = (z₁ + z₂)/√2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;

use crate::error::Result;
use crate::oscillator_basis::{psi_eval, Direction, HarmonicEigenstate, TgEigenstate};
use crate::quench_dynamics::EvolvedState;

/// Relative-coordinate wave function that can be placed in the lab frame.
pub trait RelativeState: Sync {
    fn amplitude(&self, z: f64) -> Result<Complex64>;

    /// Estimate of the single-particle mass outside `[-L, L]`.
    fn tail_mass(&self, half_width: f64) -> Result<f64>;
}

/// Mass outside `[-L, L]` of a density with Gaussian decay, bounded by that
/// of `ρ_f`.
fn gaussian_tail(half_width: f64) -> f64 {
    statrs::function::erf::erfc(half_width) * (1.0 + 2.0 * half_width * half_width)
}

impl RelativeState for HarmonicEigenstate {
    fn amplitude(&self, z: f64) -> Result<Complex64> {
        Ok(Complex64::from(self.eval(z)))
    }

    fn tail_mass(&self, half_width: f64) -> Result<f64> {
        Ok(gaussian_tail(half_width))
    }
}

impl RelativeState for TgEigenstate {
    fn amplitude(&self, z: f64) -> Result<Complex64> {
        Ok(Complex64::from(self.eval(z)))
    }

    fn tail_mass(&self, half_width: f64) -> Result<f64> {
        Ok(gaussian_tail(half_width))
    }
}

impl RelativeState for EvolvedState {
    fn amplitude(&self, z: f64) -> Result<Complex64> {
        Ok(self.eval(z)?.value)
    }

    /// Far from the pair the single-particle density follows the relative
    /// one, `ρ(z₁) ≈ √2 |Ψ(√2 z₁)|²`. The envelope `|Ψ|² ≈ C/z^p` with
    /// `p = 2` (forward) or `p = 4` (reverse) is fitted at the grid edge and
    /// integrated to infinity.
    fn tail_mass(&self, half_width: f64) -> Result<f64> {
        let edge = SQRT_2 * half_width;
        let a = self.amplitude(edge)?.norm_sqr();
        Ok(match self.scenario.direction {
            Direction::Forward => SQRT_2 * a * edge * edge / half_width,
            Direction::Reverse => SQRT_2 * a * edge.powi(4) / (6.0 * half_width.powi(3)),
        })
    }
}

/// Centre-of-mass ground state `χ₀(Z)`.
pub fn chi0(big_z: f64) -> f64 {
    psi_eval(0, big_z)
}

/// Lab-frame state at time `t`, with the centre of mass in `χ₀`.
#[derive(Clone, Copy)]
pub struct LabFrameState<'a> {
    pub relative: &'a dyn RelativeState,
    pub t: f64,
}

pub fn lab_frame_state(relative: &dyn RelativeState, t: f64) -> LabFrameState<'_> {
    LabFrameState { relative, t }
}

impl LabFrameState<'_> {
    /// Centre-of-mass phase `e^{-it/2}`.
    pub fn phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, -0.5 * self.t)
    }

    pub fn eval(&self, z1: f64, z2: f64) -> Result<Complex64> {
        let z = (z1 - z2) * FRAC_1_SQRT_2;
        let big_z = (z1 + z2) * FRAC_1_SQRT_2;
        Ok(self.phase() * self.relative.amplitude(z)? * chi0(big_z))
    }
}

/// `π^{-1/2} e^{-(z₁² + z₂²)/2}`, the product ground state.
pub fn product_ground_state(z1: f64, z2: f64) -> f64 {
    (-(z1 * z1 + z2 * z2) / 2.0).exp() / PI.sqrt()
}
