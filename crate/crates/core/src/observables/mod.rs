//! Lab-frame observables: reduced density matrices, natural orbitals,
//! momentum distributions and reference states.

pub mod distance;
pub mod export;
pub mod grid;
pub mod lab_frame;
pub mod momentum;
pub mod reference;
pub mod sdm;

pub use distance::{distribution_distance, WeightedDistance};
pub use grid::GridSpec;
pub use lab_frame::{lab_frame_state, LabFrameState, RelativeState};
pub use momentum::{momentum_distribution, slope_plateau, tail_exponent, MomentumDistribution, SlopeWindow};
pub use reference::{reference_momentum, reference_rdm, reference_state, MomentumGrid, Reference, ReferenceName};
pub use sdm::{natural_orbitals, sdm_build, ReducedDensityMatrix, SpectralDecomposition};

/// Number of interior local maxima of a sampled curve.
pub fn count_maxima(values: &[f64]) -> usize {
    values.windows(3).filter(|w| w[1] > w[0] && w[1] >= w[2]).count()
}
