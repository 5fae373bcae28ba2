//! Summation of slowly converging series `Σ_n x^n τ_n` with `|x| = 1`.
//!
//! The plain partial sums of these series oscillate with an amplitude
//! that decays like the terms themselves, which for the overlap series
//! means `n^{-1}` or worse. Each partial sum is therefore completed by an
//! Euler-transform estimate of the remainder,
//!
//! `Σ_{n>N} x^n τ_n ≈ x^{N+1}/(1-x) Σ_{j=0}^{J} (x/(1-x))^j Δ^j τ_{N+1}`,
//!
//! which needs `J+1` look-ahead coefficients and is exact for polynomial
//! `τ` of degree below `J+1`. Stopping uses stall-window agreement of the
//! completed sums.

use std::collections::VecDeque;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest number of differences used in the remainder estimate.
const MAX_DIFFERENCES: usize = 8;
/// Bound on the amplification `(|x|/|1-x|)^J` of the highest difference.
const MAX_AMPLIFICATION: f64 = 1e4;
/// Bound on `|x|/|1-x|` beyond which the transform is refused.
const MAX_RATIO: f64 = 1e6;

/// Truncation and stopping parameters of an infinite sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummationControl {
    pub max_terms: usize,
    /// Completed partial sums must agree to `abs_tol · max(1, |S|)`.
    pub abs_tol: f64,
    pub stall_window: usize,
}

impl Default for SummationControl {
    fn default() -> Self {
        Self { max_terms: 200_000, abs_tol: 1e-12, stall_window: 6 }
    }
}

impl SummationControl {
    pub fn new(max_terms: usize, abs_tol: f64, stall_window: usize) -> Result<Self> {
        let ctrl = Self { max_terms, abs_tol, stall_window };
        ctrl.validate()?;
        Ok(ctrl)
    }

    pub fn validate(&self) -> Result<()> {
        if self.stall_window < 1 || self.max_terms < self.stall_window {
            return Err(Error::Domain(format!(
                "summation control needs max_terms >= stall_window >= 1, got {} and {}",
                self.max_terms, self.stall_window
            )));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::Domain(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        Ok(())
    }
}

/// Result of a controlled summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Number of coefficients consumed, including look-ahead.
    pub terms: usize,
    /// Spread of the completed sums over the stall window.
    pub achieved_tol: f64,
}

/// `|x|/|1-x|`, the ratio governing the remainder estimate.
pub fn euler_ratio(x: Complex64) -> f64 {
    x.norm() / (Complex64::new(1.0, 0.0) - x).norm()
}

/// Number of leading terms summed before the remainder estimate is
/// trusted: `64 + 16 ρ² (scale + 1)` with `ρ = |x|/|1-x|`.
///
/// `scale` measures how long the coefficients take to become smooth in
/// `n`; for oscillator series it is `z²` plus the size of the parameters.
pub fn warmup_terms(x: Complex64, scale: f64) -> usize {
    let rho = euler_ratio(x);
    let w = 64.0 + 16.0 * rho * rho * (scale.abs() + 1.0);
    w.min(1e9) as usize
}

fn differences_for(rho: f64) -> usize {
    if rho <= 1.0 {
        return MAX_DIFFERENCES;
    }
    let j = (MAX_AMPLIFICATION.ln() / rho.ln()).floor() as usize;
    j.clamp(1, MAX_DIFFERENCES)
}

/// `x^n` from the polar form, so that the phase does not accumulate
/// rounding over many terms.
pub fn unit_power(x: Complex64, n: usize) -> Complex64 {
    let (r, theta) = x.to_polar();
    Complex64::from_polar(r.powf(n as f64), theta * n as f64)
}

/// Sums `Σ_{n≥0} x^n τ_n` for `|x| ≤ 1`, `x ≠ 1`, drawing `τ_0, τ_1, ...`
/// from `coeffs` in order.
///
/// A finite iterator is summed exactly. Otherwise the completed sums
/// `S_N + R_N` are formed from `warmup` on, and the sum stops once the
/// last `stall_window` of them agree within tolerance.
pub fn oscillatory_sum<I>(x: Complex64, coeffs: I, warmup: usize, ctrl: &SummationControl) -> Result<SeriesSum>
where
    I: IntoIterator<Item = Complex64>,
{
    ctrl.validate()?;
    if x.norm() > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("series argument outside the unit disk: |x| = {}", x.norm())));
    }
    let rho = euler_ratio(x);
    if !(rho <= MAX_RATIO) {
        return Err(Error::Domain(format!("series argument too close to 1: |x/(1-x)| = {rho:e}")));
    }
    let one = Complex64::new(1.0, 0.0);
    let ratio = x / (one - x);
    let lookahead = differences_for(rho) + 1;

    let mut coeffs = coeffs.into_iter();
    let mut ahead: VecDeque<Complex64> = VecDeque::with_capacity(lookahead + 1);
    let mut consumed = 0usize;
    let mut fill = |ahead: &mut VecDeque<Complex64>, consumed: &mut usize, want: usize| {
        while ahead.len() < want {
            match coeffs.next() {
                Some(c) => {
                    ahead.push_back(c);
                    *consumed += 1;
                }
                None => break,
            }
        }
    };

    let mut partial = Complex64::new(0.0, 0.0);
    let mut window: VecDeque<Complex64> = VecDeque::with_capacity(ctrl.stall_window + 1);
    let mut scratch = Vec::with_capacity(lookahead);
    let mut spread = f64::INFINITY;
    let mut n = 0usize;
    loop {
        fill(&mut ahead, &mut consumed, lookahead + 1);
        let Some(tau) = ahead.pop_front() else {
            // finite series: exact
            return Ok(SeriesSum { value: partial, terms: consumed, achieved_tol: 0.0 });
        };
        partial += unit_power(x, n) * tau;
        n += 1;
        if ahead.is_empty() {
            fill(&mut ahead, &mut consumed, 1);
            if ahead.is_empty() {
                return Ok(SeriesSum { value: partial, terms: consumed, achieved_tol: 0.0 });
            }
        }
        if n < warmup {
            if consumed >= ctrl.max_terms {
                return Err(Error::Convergence { last: partial, terms: consumed, spread });
            }
            continue;
        }

        // remainder from τ_n, ..., τ_{n+J}
        scratch.clear();
        scratch.extend(ahead.iter().copied());
        let mut rem = Complex64::new(0.0, 0.0);
        let mut weight = one;
        let len = scratch.len();
        for j in 0..len {
            rem += weight * scratch[0];
            weight *= ratio;
            for i in 0..len - j - 1 {
                scratch[i] = scratch[i + 1] - scratch[i];
            }
        }
        let completed = partial + unit_power(x, n) * rem / (one - x);

        window.push_back(completed);
        if window.len() > ctrl.stall_window {
            window.pop_front();
        }
        if window.len() == ctrl.stall_window {
            spread = window.iter().map(|s| (s - completed).norm()).fold(0.0, f64::max);
            if spread <= ctrl.abs_tol * completed.norm().max(1.0) {
                return Ok(SeriesSum { value: completed, terms: consumed, achieved_tol: spread });
            }
        }
        if consumed >= ctrl.max_terms {
            return Err(Error::Convergence { last: completed, terms: consumed, spread });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn control_validation() {
        assert!(SummationControl::new(10, 1e-12, 3).is_ok());
        assert!(SummationControl::new(2, 1e-12, 3).is_err());
        assert!(SummationControl::new(10, 0.0, 3).is_err());
        assert!(SummationControl::new(10, 1e-12, 0).is_err());
    }

    #[test]
    fn finite_series_is_exact() {
        let x = Complex64::from_polar(1.0, 0.7);
        let got = oscillatory_sum(x, [1.0, 2.0, 3.0].map(Complex64::from), 0, &Default::default()).unwrap();
        let want = 1.0 + 2.0 * x + 3.0 * x * x;
        assert!((got.value - want).norm() < 1e-15);
    }

    #[test]
    fn log_series_on_unit_circle() {
        // Σ_{n≥0} x^{n}/(n+1) = -ln(1-x)/x
        for &theta in &[0.1, 0.5, 1.0, PI / 2.0, 3.0] {
            let x = Complex64::from_polar(1.0, theta);
            let coeffs = (0..).map(|n: usize| Complex64::from(1.0 / (n + 1) as f64));
            let got = oscillatory_sum(x, coeffs, warmup_terms(x, 0.0), &Default::default()).unwrap();
            let want = -(Complex64::new(1.0, 0.0) - x).ln() / x;
            assert!((got.value - want).norm() < 1e-11, "theta {theta}: {} vs {want}", got.value);
            assert!(got.terms < 5000);
        }
    }

    #[test]
    fn slow_decay_converges() {
        // Σ x^n/√(n+1) = Li_{1/2}(x)/x, reference from mpmath
        let x = Complex64::from_polar(1.0, 0.8);
        let coeffs = (0..).map(|n: usize| Complex64::from(1.0 / ((n + 1) as f64).sqrt()));
        let got = oscillatory_sum(x, coeffs, warmup_terms(x, 0.0), &Default::default()).unwrap();
        let want = Complex64::new(0.849_918_672_240_743_15, 0.896_373_098_243_830_65);
        assert!((got.value - want).norm() < 1e-11, "{}", got.value);
    }

    #[test]
    fn near_one_is_refused() {
        let x = Complex64::from_polar(1.0, 1e-8);
        let coeffs = (0..).map(|_| Complex64::from(1.0));
        assert!(matches!(oscillatory_sum(x, coeffs, 0, &Default::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn reports_nonconvergence() {
        let x = Complex64::from_polar(1.0, 0.3);
        let ctrl = SummationControl::new(50, 1e-15, 6).unwrap();
        let coeffs = (0..).map(|n: usize| Complex64::from(((n as f64) * 0.9).cos()));
        match oscillatory_sum(x, coeffs, 0, &ctrl) {
            Err(Error::Convergence { terms, .. }) => assert!(terms >= 50),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }
}
