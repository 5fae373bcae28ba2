use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::special_fn::HermiteFunctions;

/// `ψ_n(z) = b_n H_n(z) e^{-z²/2}`, evaluated by the normalized recurrence.
pub fn psi_eval(n: usize, z: f64) -> f64 {
    HermiteFunctions::new(z).nth(n).unwrap_or(0.0)
}

/// Tonks–Girardeau relative eigenfunction: `φ_{2k}(z) = ψ_{2k+1}(|z|)` and
/// `φ_{2k+1}(z) = ψ_{2k+1}(z)`.
pub fn phi_eval(n: usize, z: f64) -> f64 {
    if n % 2 == 0 {
        psi_eval(n + 1, z.abs())
    } else {
        psi_eval(n, z)
    }
}

/// Eigenstate of the non-interacting relative (or centre-of-mass)
/// Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicEigenstate {
    pub n: usize,
    /// `b_n = 1/(π^{1/4} √(2^n n!))`; underflows to zero beyond n ≈ 1000,
    /// see `ln_normalization`.
    pub normalization: f64,
    pub ln_normalization: f64,
    pub energy: f64,
}

impl HarmonicEigenstate {
    pub fn new(n: usize) -> Self {
        let nf = n as f64;
        let ln_b = -0.25 * PI.ln() - 0.5 * (nf * std::f64::consts::LN_2 + ln_gamma(nf + 1.0));
        Self { n, normalization: ln_b.exp(), ln_normalization: ln_b, energy: nf + 0.5 }
    }

    pub fn eval(&self, z: f64) -> f64 {
        psi_eval(self.n, z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TgBranch {
    /// `φ_{2n}(z) = ψ_{2n+1}(|z|)`, even under reflection.
    Symmetrized,
    /// `φ_{2n+1}(z) = ψ_{2n+1}(z)`, odd.
    Antisymmetric,
}

/// Eigenstate of the relative Hamiltonian with infinite contact repulsion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TgEigenstate {
    /// Pair index: the state is `φ_{2n}` or `φ_{2n+1}` depending on `branch`.
    pub n: usize,
    pub branch: TgBranch,
    pub energy: f64,
}

impl TgEigenstate {
    pub fn new(n: usize, branch: TgBranch) -> Self {
        Self { n, branch, energy: 2.0 * n as f64 + 1.5 }
    }

    /// State `φ_index`.
    pub fn from_index(index: usize) -> Self {
        let branch = if index % 2 == 0 { TgBranch::Symmetrized } else { TgBranch::Antisymmetric };
        Self::new(index / 2, branch)
    }

    pub fn index(&self) -> usize {
        match self.branch {
            TgBranch::Symmetrized => 2 * self.n,
            TgBranch::Antisymmetric => 2 * self.n + 1,
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        phi_eval(self.index(), z)
    }
}
