//! Closed forms for the ground-state quenches.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::state::{Advisory, StateValue};
use crate::error::{Error, Result};
use crate::oscillator_basis::psi_eval;
use crate::special_fn::hypergeometric::distance_to_pi_multiple;
use crate::special_fn::scaled_erf;

/// Times closer than this to a multiple of π are served by the limit
/// convention.
const LIMIT_EPS: f64 = 1e-14;

/// `g(t) = e^{-it}/√(1 - e^{-2it})` together with
/// `g²(t) = -1/2 - (i/2) cot t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GFactor {
    pub g: Complex64,
    pub g2: Complex64,
}

pub fn g_factor(t: f64) -> Result<GFactor> {
    let (s, c) = t.sin_cos();
    if distance_to_pi_multiple(t) < LIMIT_EPS || s == 0.0 {
        return Err(Error::Singular(format!("g(t) is singular at t = {t} (multiple of π)")));
    }
    // 1 - e^{-2it} = 2 sin t (sin t + i cos t), formed without cancellation
    let d = 2.0 * s * Complex64::new(s, c);
    let g = Complex64::from_polar(1.0, -t) / d.sqrt();
    Ok(GFactor { g, g2: Complex64::new(-0.5, -0.5 * c / s) })
}

/// `e^{-z²/2} erf(z g)`.
///
/// The exponent `-z²/2 - z²g²` that appears in the large-argument branch
/// is the pure phase `i z² cot(t)/2`; it is passed in that form.
fn gauss_erf(z: f64, gf: &GFactor, t: f64) -> Complex64 {
    let w = z * gf.g;
    if w.norm() <= crate::special_fn::erf::MACLAURIN_RADIUS {
        return scaled_erf(w, 0.5 * z * z);
    }
    let (sign, v) = if w.re >= 0.0 { (1.0, w) } else { (-1.0, -w) };
    let phase = Complex64::from_polar(1.0, 0.5 * z * z / t.tan());
    let tail = phase * crate::special_fn::faddeeva(Complex64::i() * v);
    sign * ((-0.5 * z * z).exp() - tail)
}

/// Ground state `ψ_0` after the quench to infinite repulsion:
/// `Ψ_0(z,t) = π^{-1/4} e^{-it/2} e^{-z²/2} erf(|z| g(t))`.
///
/// At multiples of π the initial state `e^{-3ikπ/2} ψ_0(z)` is returned (the
/// `t → 0` limit taken before `z → 0`). At `z = 0` the value 0 carries an
/// advisory since it is not the limit of the initial state.
pub fn psi0_closed(z: f64, t: f64) -> StateValue {
    let Ok(gf) = g_factor(t) else {
        let k = (t / PI).round();
        let phase = Complex64::from_polar(1.0, -1.5 * k * PI);
        return StateValue::closed(phase * psi_eval(0, z), Some(Advisory::InitialStateLimit));
    };
    let pref = PI.powf(-0.25) * Complex64::from_polar(1.0, -0.5 * t);
    let value = pref * gauss_erf(z.abs(), &gf, t);
    let advisory = (z == 0.0).then_some(Advisory::OriginLimit);
    StateValue::closed(value, advisory)
}

/// Ground state `φ_0` after the quench to zero interaction:
/// `Φ_0 = (√2/π^{1/4}) e^{-3it/2} e^{-z²/2} [e^{-z²g²}/(√π g) + z erf(z g)]`.
///
/// At multiples of π the initial state `e^{-ikπ/2} φ_0(z)` is returned.
pub fn phi0_closed(z: f64, t: f64) -> StateValue {
    let Ok(gf) = g_factor(t) else {
        let k = (t / PI).round();
        let phase = Complex64::from_polar(1.0, -0.5 * k * PI);
        return StateValue::closed(phase * psi_eval(1, z.abs()), Some(Advisory::InitialStateLimit));
    };
    let pref = 2f64.sqrt() * PI.powf(-0.25) * Complex64::from_polar(1.0, -1.5 * t);
    // e^{-z²/2 - z²g²} = e^{i z² cot(t)/2}
    let head = Complex64::from_polar(1.0, 0.5 * z * z / t.tan()) / (PI.sqrt() * gf.g);
    let value = pref * (head + z * gauss_erf(z, &gf, t));
    StateValue::closed(value, None)
}
