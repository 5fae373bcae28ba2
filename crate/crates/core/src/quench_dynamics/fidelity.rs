//! Autocorrelation `L(t) = ⟨initial|evolved(t)⟩` and the Loschmidt echo.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::state::Method;
use crate::error::Result;
use crate::oscillator_basis::overlap::{directed_overlap, final_energy, ln_a, ln_b};
use crate::oscillator_basis::Direction;
use crate::special_fn::hypergeometric::{arcsin_complex, check_guard, distance_to_pi_multiple, hyp3f2_unit};
use crate::special_fn::SummationControl;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityResult {
    #[serde(serialize_with = "ser_complex")]
    pub overlap: Complex64,
    /// Fidelity `|L|`.
    pub magnitude: f64,
    /// Echo `|L|²`.
    pub echo: f64,
    pub method: Method,
    /// Terms summed (0 for closed forms).
    pub terms: usize,
}

fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

impl FidelityResult {
    pub fn new(overlap: Complex64, method: Method, terms: usize) -> Self {
        let magnitude = overlap.norm();
        Self { overlap, magnitude, echo: magnitude * magnitude, method, terms }
    }
}

fn unit(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

/// Exact value at `t = kπ`: every component returns with the same phase.
fn revival(direction: Direction, t: f64) -> Option<FidelityResult> {
    if distance_to_pi_multiple(t) >= 1e-14 {
        return None;
    }
    let k = (t / PI).round();
    let phase = match direction {
        Direction::Forward => -1.5 * k * PI,
        Direction::Reverse => -0.5 * k * PI,
    };
    Some(FidelityResult::new(unit(phase), Method::ClosedForm, 0))
}

/// `L_0(t) = e^{-it/2} (2/π) arcsin(e^{-it})`.
pub fn loschmidt_forward_closed(t: f64) -> Complex64 {
    unit(-0.5 * t) * (2.0 / PI) * arcsin_complex(unit(-t))
}

/// `L^r_0(t) = e^{-it/2} (2/π) (√(1-e^{-2it}) + e^{-it} arcsin(e^{-it}))`.
pub fn loschmidt_reverse_closed(t: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let root = (one - unit(-2.0 * t)).sqrt();
    unit(-0.5 * t) * (2.0 / PI) * (root + unit(-t) * arcsin_complex(unit(-t)))
}

/// `L_m(t)` after the quench to infinite repulsion: the arcsine closed form
/// for `m = 0`, otherwise
/// `(2/π) e^{-3it/2} A_m²/(2m-1)² ₃F₂(3/2, 1/2-m, 1/2-m; 3/2-m, 3/2-m; e^{-2it})`.
pub fn loschmidt_forward(m: usize, t: f64, ctrl: &SummationControl) -> Result<FidelityResult> {
    if let Some(r) = revival(Direction::Forward, t) {
        return Ok(r);
    }
    if m == 0 {
        return Ok(FidelityResult::new(loschmidt_forward_closed(t), Method::ClosedForm, 0));
    }
    loschmidt_hyp3f2(Direction::Forward, m, t, ctrl)
}

/// `L^r_m(t)` after the quench to zero interaction: closed form for
/// `m = 0`, otherwise
/// `(2/π) e^{-it/2} B_m²/(2m+1)² ₃F₂(1/2, -1/2-m, -1/2-m; 1/2-m, 1/2-m; e^{-2it})`.
pub fn loschmidt_reverse(m: usize, t: f64, ctrl: &SummationControl) -> Result<FidelityResult> {
    if let Some(r) = revival(Direction::Reverse, t) {
        return Ok(r);
    }
    if m == 0 {
        return Ok(FidelityResult::new(loschmidt_reverse_closed(t), Method::ClosedForm, 0));
    }
    loschmidt_hyp3f2(Direction::Reverse, m, t, ctrl)
}

/// `L_m` or `L^r_m` through the ₃F₂ series for any `m`, including `m = 0`;
/// the guard zone is enforced.
pub fn loschmidt_hyp3f2(direction: Direction, m: usize, t: f64, ctrl: &SummationControl) -> Result<FidelityResult> {
    check_guard(t)?;
    let mf = m as f64;
    let (a, b, pref, phase) = match direction {
        Direction::Forward => (
            [1.5, 0.5 - mf, 0.5 - mf],
            [1.5 - mf, 1.5 - mf],
            (2.0 / PI) * (2.0 * ln_a(m)).exp() / (2.0 * mf - 1.0).powi(2),
            -1.5 * t,
        ),
        Direction::Reverse => (
            [0.5, -0.5 - mf, -0.5 - mf],
            [0.5 - mf, 0.5 - mf],
            (2.0 / PI) * (2.0 * ln_b(m)).exp() / (2.0 * mf + 1.0).powi(2),
            -0.5 * t,
        ),
    };
    let f = hyp3f2_unit(a, b, t, ctrl)?;
    Ok(FidelityResult::new(pref * unit(phase) * f.value, Method::Hyp3f2, f.terms))
}

/// Plain truncated eigenbasis sum `Σ_{n<terms} c² e^{-iε_n t}` with the
/// overlaps of `direction`.
pub fn loschmidt_coefficient_series(direction: Direction, m: usize, t: f64, terms: usize) -> FidelityResult {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..terms {
        let c = directed_overlap(direction, m, n);
        sum += c * c * unit(-final_energy(direction, n) * t);
    }
    FidelityResult::new(sum, Method::Series, terms)
}
