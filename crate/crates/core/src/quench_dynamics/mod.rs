//! Time evolution of the relative wave function after sudden switches of
//! the contact interaction between zero and infinity.

pub mod closed;
pub mod double_quench;
pub mod fidelity;
pub mod series;
pub mod state;

pub use closed::{g_factor, phi0_closed, psi0_closed, GFactor};
pub use double_quench::{double_quench_overlap, double_quench_state, DoubleQuenchState};
pub use fidelity::{
    loschmidt_coefficient_series, loschmidt_forward, loschmidt_forward_closed, loschmidt_hyp3f2, loschmidt_reverse,
    loschmidt_reverse_closed, FidelityResult,
};
pub use series::{phi_m_series, psi_m_series, sigma_m, verify_derivative_relation};
pub use state::{Advisory, EvolvedState, Method, QuenchScenario, Representation, StateValue};
