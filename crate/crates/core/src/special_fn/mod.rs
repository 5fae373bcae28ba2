//! Special functions: double factorials, Hermite polynomials and functions,
//! the complex error function, ₃F₂ on the unit circle and the Mehler kernel.

pub mod erf;
pub mod factorial;
pub mod hermite;
pub mod hypergeometric;
pub mod mehler;
pub mod summation;

pub use erf::{erf_complex, erfcx_complex, faddeeva, scaled_erf, Checked};
pub use factorial::{double_factorial, ln_double_factorial, SignedLog};
pub use hermite::{hermite, hermite_functions, HermiteFunctions};
pub use hypergeometric::{arcsin_complex, check_guard, hyp3f2, hyp3f2_unit, GUARD};
pub use mehler::{mehler_kernel, mehler_partial_sum};
pub use summation::{oscillatory_sum, SeriesSum, SummationControl};
