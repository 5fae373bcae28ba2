//! Eigenfunction series for the evolved states, valid for every initial
//! index.
//!
//! With `x = e^{-2it}` both series take the form `Σ_n x^n τ_n(z)` where
//! `(-1)^n ψ_{2n+1}(z)` and `(-1)^n ψ_{2n}(z)` vary smoothly in `n` once
//! `n ≫ z²`, which is what the remainder estimate of
//! [`oscillatory_sum`] relies on.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::closed::{phi0_closed, psi0_closed};
use super::state::{Advisory, Method, StateValue};
use crate::error::{Error, Result};
use crate::oscillator_basis::overlap::{ln_a, ln_b};
use crate::special_fn::hypergeometric::check_guard;
use crate::special_fn::summation::{oscillatory_sum, warmup_terms, SeriesSum};
use crate::special_fn::{HermiteFunctions, SummationControl};

/// Below this `|z|` the forward-quench series converges non-uniformly.
pub const GIBBS_RADIUS: f64 = 0.2;

fn unit(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

/// `τ_n = (-1)^n B_n ψ_{2n+1}(x) / (2n+1-2m)` for `x ≥ 0`.
fn odd_coefficients(m: usize, x: f64) -> impl Iterator<Item = Complex64> {
    let mut b2 = 1.0f64;
    HermiteFunctions::new(x).skip(1).step_by(2).enumerate().map(move |(n, psi)| {
        if n > 0 {
            b2 *= (2 * n + 1) as f64 / (2 * n) as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::from(sign * b2.sqrt() * psi / (2.0 * n as f64 + 1.0 - 2.0 * m as f64))
    })
}

/// `τ_n = (-1)^n A_n ψ_{2n}(z) / (2m+1-2n)`.
fn even_coefficients(m: usize, z: f64) -> impl Iterator<Item = Complex64> {
    let mut a2 = 1.0f64;
    HermiteFunctions::new(z).step_by(2).enumerate().map(move |(n, psi)| {
        if n > 0 {
            a2 *= (2 * n - 1) as f64 / (2 * n) as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::from(sign * a2.sqrt() * psi / (2.0 * m as f64 + 1.0 - 2.0 * n as f64))
    })
}

fn sign(m: usize) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn guarded(m: usize, t: f64, closed: impl FnOnce() -> StateValue) -> Result<Option<StateValue>> {
    match check_guard(t) {
        Ok(()) => Ok(None),
        Err(_) if m == 0 => {
            let mut v = closed();
            v.advisory = v.advisory.or(Some(Advisory::GuardZoneClosedForm));
            Ok(Some(v))
        }
        Err(e) => Err(e),
    }
}

fn even_series(m: usize, z: f64, t: f64, ctrl: &SummationControl) -> Result<SeriesSum> {
    let x = unit(-2.0 * t);
    oscillatory_sum(x, even_coefficients(m, z), warmup_terms(x, z * z + m as f64), ctrl)
}

/// `Ψ_m(z,t) = Σ_n e^{-i(2n+3/2)t} c_mn ψ_{2n+1}(|z|)`, the state that
/// starts as `ψ_{2m}` and evolves under infinite repulsion.
///
/// Inside the guard zone around `πℤ` only `m = 0` is served, by its closed
/// form.
pub fn psi_m_series(m: usize, z: f64, t: f64, ctrl: &SummationControl) -> Result<StateValue> {
    if let Some(v) = guarded(m, t, || psi0_closed(z, t))? {
        return Ok(v);
    }
    let az = z.abs();
    let x = unit(-2.0 * t);
    let sum = oscillatory_sum(x, odd_coefficients(m, az), warmup_terms(x, az * az + m as f64), ctrl)?;
    let pref = (2.0 / PI).sqrt() * sign(m) * ln_a(m).exp() * unit(-1.5 * t);
    Ok(StateValue {
        value: pref * sum.value,
        method: Method::Series,
        terms: sum.terms,
        achieved_tol: sum.achieved_tol,
        advisory: (az < GIBBS_RADIUS).then_some(Advisory::GibbsZone),
    })
}

/// `Φ_m(z,t) = Σ_n e^{-i(2n+1/2)t} c_nm ψ_{2n}(z)`, the state that starts
/// as `φ_{2m}` and evolves without interaction.
pub fn phi_m_series(m: usize, z: f64, t: f64, ctrl: &SummationControl) -> Result<StateValue> {
    if let Some(v) = guarded(m, t, || phi0_closed(z, t))? {
        return Ok(v);
    }
    let sum = even_series(m, z, t, ctrl)?;
    let pref = (2.0 / PI).sqrt() * sign(m) * ln_b(m).exp() * unit(-0.5 * t);
    Ok(StateValue {
        value: pref * sum.value,
        method: Method::Series,
        terms: sum.terms,
        achieved_tol: sum.achieved_tol,
        advisory: None,
    })
}

/// `f_m(z,t) = (√2/π^{3/4}) e^{-it/2 - z²/2} (-1)^m A_m`.
pub fn f_m(m: usize, z: f64, t: f64) -> Complex64 {
    2f64.sqrt() * PI.powf(-0.75) * (-0.5 * z * z).exp() * sign(m) * ln_a(m).exp() * unit(-0.5 * t)
}

/// `Σ_m(z,t) = π^{1/4} e^{z²/2} Σ_n e^{-2int} (-1)^n A_n ψ_{2n}(z)/(2m+1-2n)`,
/// so that `Φ_m = f_m √(2m+1) Σ_m`.
pub fn sigma_m(m: usize, z: f64, t: f64, ctrl: &SummationControl) -> Result<Complex64> {
    check_guard(t)?;
    let sum = even_series(m, z, t, ctrl)?;
    Ok(PI.powf(0.25) * (0.5 * z * z).exp() * sum.value)
}

/// Relative discrepancy between `Ψ_m` from its own series and from
/// `(e^{it}/√2) f_m(z,t) ∂_z Σ_m(|z|,t)` with a central difference of step
/// `h`.
pub fn verify_derivative_relation(m: usize, z: f64, t: f64, h: f64, ctrl: &SummationControl) -> Result<f64> {
    if z.abs() <= GIBBS_RADIUS {
        return Err(Error::Domain(format!("derivative relation is checked for |z| > {GIBBS_RADIUS}, got {z}")));
    }
    if !(h > 0.0 && h < z.abs() - GIBBS_RADIUS) {
        return Err(Error::Domain(format!("step {h} must be positive and keep |z| ± h outside the kink")));
    }
    check_guard(t)?;
    let az = z.abs();
    let d = (sigma_m(m, az + h, t, ctrl)? - sigma_m(m, az - h, t, ctrl)?) / (2.0 * h);
    let lhs = unit(t) / 2f64.sqrt() * f_m(m, z, t) * d;
    let rhs = psi_m_series(m, z, t, ctrl)?.value;
    Ok((lhs - rhs).norm() / rhs.norm())
}
