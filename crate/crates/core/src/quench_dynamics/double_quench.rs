//! Two consecutive quenches: the interaction is switched at `t = 0` and
//! switched back at `t₁`.
//!
//! Scenario a starts in `ψ_{2m}`, evolves with infinite repulsion until
//! `t₁` and then without interaction; its coefficients are taken in the
//! `ψ_{2k}` basis. Scenario b is the mirror image, starting in `φ_{2m}`
//! and expanded in `φ_{2k}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::fidelity::{loschmidt_forward_closed, loschmidt_reverse_closed};
use super::state::QuenchScenario;
use crate::error::{Error, Result};
use crate::oscillator_basis::overlap::{ln_a, ln_b};
use crate::oscillator_basis::Direction;
use crate::special_fn::hypergeometric::{check_guard, distance_to_pi_multiple, hyp3f2_unit};
use crate::special_fn::SummationControl;

/// Largest basis index kept in a coefficient vector.
pub const MAX_K: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleQuenchState {
    pub scenario: QuenchScenario,
    pub t: f64,
    /// Coefficients on `ψ_{2k}` (scenario a) or `φ_{2k}` (scenario b),
    /// `k = 0..=K`.
    pub coefficients: Vec<Complex64>,
    /// `1 - Σ_k |coefficient|²`, the weight beyond `K`.
    pub unitarity_defect: f64,
}

fn unit(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

fn parity(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Energy of the basis state `k` that the coefficients are expanded in,
/// i.e. of the Hamiltonian acting after `t₁`.
fn final_energy(direction: Direction, k: usize) -> f64 {
    match direction {
        Direction::Forward => 2.0 * k as f64 + 0.5,
        Direction::Reverse => 2.0 * k as f64 + 1.5,
    }
}

/// Coefficient `k` right after the second quench.
///
/// a: `(2/π)(-1)^{k+m} A_k A_m e^{-3it₁/2} ₃F₂(3/2, 1/2-k, 1/2-m; 3/2-k, 3/2-m; e^{-2it₁})/((2k-1)(2m-1))`
/// b: `(2/π)(-1)^{k+m} B_k B_m e^{-it₁/2} ₃F₂(1/2, -1/2-m, -1/2-k; 1/2-m, 1/2-k; e^{-2it₁})/((2k+1)(2m+1))`
fn coefficient_at_t1(direction: Direction, m: usize, k: usize, t1: f64, ctrl: &SummationControl) -> Result<Complex64> {
    if distance_to_pi_multiple(t1) < 1e-14 {
        let j = (t1 / PI).round();
        let phase = match direction {
            Direction::Forward => -1.5 * j * PI,
            Direction::Reverse => -0.5 * j * PI,
        };
        return Ok(if k == m { unit(phase) } else { Complex64::new(0.0, 0.0) });
    }
    if k == 0 && m == 0 && check_guard(t1).is_err() {
        return Ok(match direction {
            Direction::Forward => loschmidt_forward_closed(t1),
            Direction::Reverse => loschmidt_reverse_closed(t1),
        });
    }
    let (kf, mf) = (k as f64, m as f64);
    let sign = parity(k + m);
    match direction {
        Direction::Forward => {
            let f = hyp3f2_unit([1.5, 0.5 - kf, 0.5 - mf], [1.5 - kf, 1.5 - mf], t1, ctrl)?;
            let pref = (2.0 / PI) * sign * (ln_a(k) + ln_a(m)).exp() / ((2.0 * kf - 1.0) * (2.0 * mf - 1.0));
            Ok(pref * unit(-1.5 * t1) * f.value)
        }
        Direction::Reverse => {
            let f = hyp3f2_unit([0.5, -0.5 - mf, -0.5 - kf], [0.5 - mf, 0.5 - kf], t1, ctrl)?;
            let pref = (2.0 / PI) * sign * (ln_b(k) + ln_b(m)).exp() / ((2.0 * kf + 1.0) * (2.0 * mf + 1.0));
            Ok(pref * unit(-0.5 * t1) * f.value)
        }
    }
}

fn require_t1(scenario: &QuenchScenario, t: f64) -> Result<f64> {
    let t1 = scenario.t1.ok_or_else(|| Error::Domain("double quench needs a second quench time".into()))?;
    if !(t >= t1) {
        return Err(Error::Domain(format!("evaluation time {t} precedes the second quench at {t1}")));
    }
    Ok(t1)
}

/// Coefficient vector over the final basis at time `t ≥ t₁`, truncated at
/// `k_max`.
pub fn double_quench_state(
    scenario: &QuenchScenario,
    t: f64,
    k_max: usize,
    ctrl: &SummationControl,
) -> Result<DoubleQuenchState> {
    let t1 = require_t1(scenario, t)?;
    if k_max > MAX_K {
        return Err(Error::Domain(format!("truncation {k_max} exceeds {MAX_K}")));
    }
    let dir = scenario.direction;
    let coefficients = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            let c = coefficient_at_t1(dir, scenario.m, k, t1, ctrl)?;
            Ok(c * unit(-final_energy(dir, k) * (t - t1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let norm: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
    Ok(DoubleQuenchState { scenario: *scenario, t, coefficients, unitarity_defect: 1.0 - norm })
}

/// `|⟨initial|state(t)⟩|` for `t ≥ t₁`; independent of `t` and equal to the
/// single-quench fidelity at `t₁`.
pub fn double_quench_overlap(scenario: &QuenchScenario, t: f64, ctrl: &SummationControl) -> Result<f64> {
    let t1 = require_t1(scenario, t)?;
    let m = scenario.m;
    let c = coefficient_at_t1(scenario.direction, m, m, t1, ctrl)?;
    Ok((c * unit(-final_energy(scenario.direction, m) * (t - t1))).norm())
}
