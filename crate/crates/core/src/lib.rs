pub mod cli;
pub mod error;
pub mod fit;
pub mod observables;
pub mod oracle;
pub mod oscillator_basis;
pub mod quench_dynamics;
pub mod special_fn;

pub use error::{Error, Result};
