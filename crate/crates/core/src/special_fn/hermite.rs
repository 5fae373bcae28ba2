use std::f64::consts::PI;

/// Physicist's Hermite polynomial `H_n(x)` by the three-term recurrence.
///
/// Overflows to infinity for large `n`; use [`hermite_functions`] when the
/// Gaussian-weighted, normalized values are what is actually needed.
pub fn hermite(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Iterator over the normalized oscillator functions
/// `ψ_k(x) = H_k(x) e^{-x²/2} / (π^{1/4} √(2^k k!))`, `k = 0, 1, 2, ...`.
///
/// The recurrence runs on normalized values carried with a separate log
/// scale, so neither the Gaussian seed nor the growth towards the turning
/// point can under- or overflow.
#[derive(Debug, Clone)]
pub struct HermiteFunctions {
    x: f64,
    k: usize,
    prev: f64,
    cur: f64,
    ln_scale: f64,
    factor: f64,
}

const RESCALE_ABOVE: f64 = 1e150;

impl HermiteFunctions {
    pub fn new(x: f64) -> Self {
        Self::with_log_seed(x, -0.25 * PI.ln() - 0.5 * x * x)
    }

    /// Same recurrence with `ψ_0` replaced by `e^{ln_seed}`; a seed of
    /// `-ln(π)/4` yields the functions without their Gaussian factor.
    pub fn with_log_seed(x: f64, ln_seed: f64) -> Self {
        Self { x, k: 0, prev: 0.0, cur: 1.0, ln_scale: ln_seed, factor: ln_seed.exp() }
    }
}

impl Iterator for HermiteFunctions {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur * self.factor;
        let k = self.k as f64;
        let next = (2.0 / (k + 1.0)).sqrt() * self.x * self.cur - (k / (k + 1.0)).sqrt() * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        if self.cur.abs() > RESCALE_ABOVE {
            self.cur /= RESCALE_ABOVE;
            self.prev /= RESCALE_ABOVE;
            self.ln_scale += RESCALE_ABOVE.ln();
            self.factor = self.ln_scale.exp();
        }
        Some(out)
    }
}

/// `ψ_0(x), ..., ψ_{kmax}(x)`.
pub fn hermite_functions(kmax: usize, x: f64) -> Vec<f64> {
    HermiteFunctions::new(x).take(kmax + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn low_orders() {
        assert_eq!(hermite(0, 3.7), 1.0);
        assert_eq!(hermite(3, 0.0), 0.0);
        assert_eq!(hermite(2, 1.0), 2.0);
        assert_eq!(hermite(1, 0.25), 0.5);
    }

    #[test]
    fn functions_match_polynomials() {
        let x = 1.3;
        let psi = hermite_functions(30, x);
        let mut fact = 1.0f64;
        for (n, &value) in psi.iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            let direct = hermite(n, x) * (-0.5 * x * x).exp() / (PI.powf(0.25) * (2f64.powi(n as i32) * fact).sqrt());
            assert!((value - direct).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn far_from_origin() {
        // ψ_2000 near its turning point √4001 ≈ 63.25 is O(N^{-1/12}), while
        // the Gaussian seed e^{-x²/2} alone underflows
        let psi = hermite_functions(2000, 60.0);
        assert!(psi[0] == 0.0);
        assert!(psi[2000].is_finite() && psi[2000].abs() > 1e-3 && psi[2000].abs() < 1.0);
        // Σ_{k<n} ψ_k(x)² ≈ √(2n - x²)/π inside the oscillatory region
        let sum: f64 = psi.iter().map(|v| v * v).sum();
        assert!(sum.is_finite() && sum < (4002f64).sqrt() / PI);
    }

    proptest! {
        #[test]
        fn recurrence_identity(n in 1usize..60, x in -8.0f64..8.0) {
            let lhs = hermite(n + 1, x);
            let mid = 2.0 * x * hermite(n, x);
            let rhs = 2.0 * n as f64 * hermite(n - 1, x);
            let scale = lhs.abs().max(mid.abs()).max(rhs.abs()).max(1.0);
            prop_assert!((lhs - mid + rhs).abs() <= 1e-10 * scale);
        }
    }
}
