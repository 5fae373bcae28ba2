use num_complex::Complex64;

use super::hermite::HermiteFunctions;
use crate::error::{Error, Result};

/// Mehler kernel
/// `Σ_n u^n H_n(x) H_n(y) / (2^n n!) = (1-u²)^{-1/2} exp[(2xyu - (x²+y²)u²)/(1-u²)]`
/// with the principal square root, for `|u| < 1`.
pub fn mehler_kernel(x: f64, y: f64, u: Complex64) -> Result<Complex64> {
    if !(u.norm() < 1.0) {
        return Err(Error::Domain(format!("Mehler kernel needs |u| < 1, got {}", u.norm())));
    }
    let one = Complex64::new(1.0, 0.0);
    let d = one - u * u;
    let expo = (2.0 * x * y * u - (x * x + y * y) * u * u) / d;
    Ok(expo.exp() / d.sqrt())
}

/// Left-hand side of the Mehler formula truncated after `terms` terms.
///
/// Evaluated through the normalized oscillator functions,
/// `H_n(x)H_n(y)/(2^n n!) = √π e^{(x²+y²)/2} ψ_n(x)ψ_n(y)`, so the terms
/// stay finite at any order.
pub fn mehler_partial_sum(x: f64, y: f64, u: Complex64, terms: usize) -> Complex64 {
    let scale = std::f64::consts::PI.sqrt() * (0.5 * (x * x + y * y)).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for (px, py) in HermiteFunctions::new(x).zip(HermiteFunctions::new(y)).take(terms) {
        sum += power * (px * py);
        power *= u;
    }
    sum * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_origin_values() {
        let k = mehler_kernel(1.7, -0.4, Complex64::new(0.0, 0.0)).unwrap();
        assert!((k - 1.0).norm() < 1e-15);
        let k = mehler_kernel(0.0, 0.0, Complex64::new(0.5, 0.0)).unwrap();
        assert!((k.re - 0.75f64.powf(-0.5)).abs() < 1e-15);
        let lhs = mehler_partial_sum(0.0, 0.0, Complex64::new(0.5, 0.0), 50);
        assert!((lhs - k).norm() < 1e-12);
    }

    #[test]
    fn partial_sum_sixty_terms() {
        let u = Complex64::new(0.5, 0.0);
        let k = mehler_kernel(1.0, 0.0, u).unwrap();
        let lhs = mehler_partial_sum(1.0, 0.0, u, 60);
        assert!((lhs - k).norm() < 1e-10);
    }

    #[test]
    fn outside_disk_is_refused() {
        assert!(mehler_kernel(0.0, 0.0, Complex64::new(0.0, 1.0)).is_err());
        assert!(mehler_kernel(0.0, 0.0, Complex64::new(0.8, 0.7)).is_err());
    }

    #[test]
    fn double_sum_agreement() {
        // 80 terms reach 1e-9 on |u| ≤ 0.5; at |u| = 0.9 the truncation
        // error of an 80-term sum is ~1e-5 near |x| = |y| = 3, so the wider
        // disk is checked with 400 terms.
        let pts = [-3.0, -1.2, 0.0, 0.7, 2.1, 3.0];
        let phases = [0.0, 0.9, 2.0, -2.7];
        for (radius, terms) in [(0.5, 80), (0.9, 400)] {
            for &x in &pts {
                for &y in &pts {
                    for &p in &phases {
                        let u = Complex64::from_polar(radius, p);
                        let k = mehler_kernel(x, y, u).unwrap();
                        let lhs = mehler_partial_sum(x, y, u, terms);
                        assert!((lhs - k).norm() <= 1e-9 * k.norm().max(1.0), "x {x} y {y} u {u}: {lhs} vs {k}");
                    }
                }
            }
        }
    }
}
