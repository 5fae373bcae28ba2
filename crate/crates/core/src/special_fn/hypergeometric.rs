use std::f64::consts::PI;

use num_complex::Complex64;

use super::summation::{oscillatory_sum, warmup_terms, SeriesSum, SummationControl};
use crate::error::{Error, Result};

/// Distance from a multiple of π inside which unit-circle series are
/// refused.
pub const GUARD: f64 = 0.05;

/// Distance from `t` to the nearest multiple of π.
pub fn distance_to_pi_multiple(t: f64) -> f64 {
    let r = t.rem_euclid(PI);
    r.min(PI - r)
}

/// Fails with a domain error when `t` lies in the guard zone around `πℤ`.
pub fn check_guard(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    let d = distance_to_pi_multiple(t);
    if d < GUARD {
        return Err(Error::Domain(format!(
            "t = {t} lies within {GUARD} of a multiple of π; use the closed forms there"
        )));
    }
    Ok(())
}

fn is_nonpositive_integer(b: f64) -> bool {
    b <= 0.0 && b.fract() == 0.0
}

/// Coefficients `(a₁)_n(a₂)_n(a₃)_n / ((b₁)_n(b₂)_n n!)` in order.
pub fn hyp3f2_coefficients(a: [f64; 3], b: [f64; 2]) -> impl Iterator<Item = Complex64> {
    let mut c = 1.0f64;
    let mut n = 0usize;
    std::iter::from_fn(move || {
        let out = c;
        let k = n as f64;
        c *= (a[0] + k) * (a[1] + k) * (a[2] + k) / ((b[0] + k) * (b[1] + k) * (k + 1.0));
        n += 1;
        Some(Complex64::from(out))
    })
}

/// `₃F₂(a; b; x)` for `|x| ≤ 1`, `x ≠ 1`.
///
/// A nonpositive-integer upper parameter makes the series terminate; it is
/// still summed through the same machinery (the trailing coefficients are
/// exact zeros).
pub fn hyp3f2(a: [f64; 3], b: [f64; 2], x: Complex64, ctrl: &SummationControl) -> Result<SeriesSum> {
    if let Some(&bad) = b.iter().find(|&&v| is_nonpositive_integer(v)) {
        return Err(Error::Domain(format!("lower parameter {bad} is a nonpositive integer")));
    }
    if x.norm() == 0.0 {
        return Ok(SeriesSum { value: Complex64::new(1.0, 0.0), terms: 1, achieved_tol: 0.0 });
    }
    let scale = a.iter().chain(b.iter()).map(|v| v.abs()).sum::<f64>();
    let warmup = warmup_terms(x, scale);
    oscillatory_sum(x, hyp3f2_coefficients(a, b), warmup, ctrl)
}

/// `₃F₂(a; b; e^{-2it})`, refusing `t` within [`GUARD`] of `πℤ` where the
/// terms lose their oscillating phase.
pub fn hyp3f2_unit(a: [f64; 3], b: [f64; 2], t: f64, ctrl: &SummationControl) -> Result<SeriesSum> {
    check_guard(t)?;
    hyp3f2(a, b, Complex64::from_polar(1.0, -2.0 * t), ctrl)
}

/// Principal `arcsin(w) = -i log(iw + √(1-w²))`, continuous up to the unit
/// circle.
pub fn arcsin_complex(w: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    -i * (i * w + (one - w * w).sqrt()).ln()
}
