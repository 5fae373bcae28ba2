//! Relative-coordinate eigenbases at zero and infinite contact interaction
//! and the overlaps between them.

pub mod eigenstates;
pub mod overlap;
pub mod quadrature;

pub use eigenstates::{phi_eval, psi_eval, HarmonicEigenstate, TgBranch, TgEigenstate};
pub use overlap::{
    coefficient_decay_exponent, directed_overlap, energy_partial_sums, final_energy, overlap_cmn, raw_integral_imn,
    Direction, OverlapTable, RawIntegral,
};
