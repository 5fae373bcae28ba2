use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oscillator_basis::Direction;
use crate::special_fn::SummationControl;

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Hyp3f2,
    ClosedForm,
}

/// Non-fatal remarks attached to an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Advisory {
    /// `z = 0` after a forward quench: the value 0 is the `t > 0` limit and
    /// does not connect to the initial state.
    OriginLimit,
    /// `|z| < 0.2` after a forward quench, where the series converges
    /// non-uniformly.
    GibbsZone,
    /// `t` is a multiple of π and the initial state (times its phase) was
    /// returned by the `t → 0` limit convention.
    InitialStateLimit,
    /// `t` lies in the guard zone around `πℤ` and a closed form replaced the
    /// requested series.
    GuardZoneClosedForm,
}

/// Value of an evolved relative wave function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateValue {
    pub value: Complex64,
    pub method: Method,
    pub terms: usize,
    pub achieved_tol: f64,
    pub advisory: Option<Advisory>,
}

impl StateValue {
    pub fn closed(value: Complex64, advisory: Option<Advisory>) -> Self {
        Self { value, method: Method::ClosedForm, terms: 0, achieved_tol: 0.0, advisory }
    }
}

/// Quench protocol. Single quenches happen at `t₀ = 0`; a double quench
/// switches the interaction back at `t₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchScenario {
    pub direction: Direction,
    pub m: usize,
    pub t0: f64,
    pub t1: Option<f64>,
}

impl QuenchScenario {
    pub fn single(direction: Direction, m: usize) -> Self {
        Self { direction, m, t0: 0.0, t1: None }
    }

    pub fn double(direction: Direction, m: usize, t1: f64) -> Result<Self> {
        if !(t1 > 0.0 && t1 <= std::f64::consts::PI) {
            return Err(Error::Domain(format!("second quench time must lie in (0, π], got {t1}")));
        }
        Ok(Self { direction, m, t0: 0.0, t1: Some(t1) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Representation {
    Series(SummationControl),
    ClosedForm,
}

/// Relative wave function after a single quench, at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedState {
    pub scenario: QuenchScenario,
    pub t: f64,
    pub representation: Representation,
}

impl EvolvedState {
    pub fn new(scenario: QuenchScenario, t: f64, representation: Representation) -> Result<Self> {
        if scenario.t1.is_some() {
            return Err(Error::Domain("double quenches are described by their coefficient vector".into()));
        }
        if matches!(representation, Representation::ClosedForm) && scenario.m != 0 {
            return Err(Error::Domain(format!("no closed form for initial index m = {}", scenario.m)));
        }
        if let Representation::Series(ctrl) = representation {
            ctrl.validate()?;
        }
        Ok(Self { scenario, t, representation })
    }

    /// Closed form for `m = 0`, series otherwise.
    pub fn preferred(direction: Direction, m: usize, t: f64, ctrl: SummationControl) -> Result<Self> {
        let rep = if m == 0 { Representation::ClosedForm } else { Representation::Series(ctrl) };
        Self::new(QuenchScenario::single(direction, m), t, rep)
    }

    pub fn eval(&self, z: f64) -> Result<StateValue> {
        use super::closed::{phi0_closed, psi0_closed};
        use super::series::{phi_m_series, psi_m_series};
        let m = self.scenario.m;
        match (self.scenario.direction, self.representation) {
            (Direction::Forward, Representation::ClosedForm) => Ok(psi0_closed(z, self.t)),
            (Direction::Reverse, Representation::ClosedForm) => Ok(phi0_closed(z, self.t)),
            (Direction::Forward, Representation::Series(ctrl)) => psi_m_series(m, z, self.t, &ctrl),
            (Direction::Reverse, Representation::Series(ctrl)) => phi_m_series(m, z, self.t, &ctrl),
        }
    }
}
