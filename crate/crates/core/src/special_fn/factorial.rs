use num_bigint::BigUint;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Largest argument whose double factorial is still a finite `f64`.
const DIRECT_LIMIT: i64 = 300;

/// Exact `n!!` with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigUint> {
    if n < -1 {
        return Err(Error::Domain(format!("double factorial of {n}")));
    }
    let mut acc = BigUint::from(1u32);
    let mut k = n;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    Ok(acc)
}

/// `ln(n!!)`.
///
/// Up to `n = 300` the product is formed directly in `f64` (it stays below
/// `f64::MAX`); beyond that the gamma-function representation is used.
pub fn ln_double_factorial(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(Error::Domain(format!("double factorial of {n}")));
    }
    if n <= 1 {
        return Ok(0.0);
    }
    if n <= DIRECT_LIMIT {
        let mut acc = 1.0f64;
        let mut k = n;
        while k > 1 {
            acc *= k as f64;
            k -= 2;
        }
        return Ok(acc.ln());
    }
    let nf = n as f64;
    if n % 2 == 0 {
        // (2k)!! = 2^k k!
        let k = nf / 2.0;
        Ok(k * std::f64::consts::LN_2 + ln_gamma(k + 1.0))
    } else {
        // (2k-1)!! = 2^k Γ(k + 1/2) / √π
        let k = (nf + 1.0) / 2.0;
        Ok(k * std::f64::consts::LN_2 + ln_gamma(k + 0.5) - 0.5 * std::f64::consts::PI.ln())
    }
}

/// `ln((2k-1)!!/(2k)!!)`, the logarithm of the central ratio that carries
/// every double factorial appearing in the overlap coefficients.
pub fn ln_central_ratio(k: u64) -> f64 {
    let k = k as i64;
    // both arguments are >= -1, so neither call can fail
    ln_double_factorial(2 * k - 1).unwrap() - ln_double_factorial(2 * k).unwrap()
}

/// `ln((2k+1)!!/(2k)!!)`.
pub fn ln_odd_ratio(k: u64) -> f64 {
    let k = k as i64;
    ln_double_factorial(2 * k + 1).unwrap() - ln_double_factorial(2 * k).unwrap()
}

/// A real number stored as sign and log-magnitude, for quantities that
/// overflow `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub sign: f64,
    pub ln_abs: f64,
}

impl SignedLog {
    pub fn new(sign: f64, ln_abs: f64) -> Self {
        Self { sign: sign.signum(), ln_abs }
    }

    /// Value as `f64`; infinite when the magnitude is out of range.
    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }

    pub fn is_representable(&self) -> bool {
        self.ln_abs < f64::MAX.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        assert_eq!(double_factorial(-1).unwrap(), BigUint::from(1u32));
        assert_eq!(double_factorial(0).unwrap(), BigUint::from(1u32));
        assert_eq!(double_factorial(5).unwrap(), BigUint::from(15u32));
        assert_eq!(double_factorial(6).unwrap(), BigUint::from(48u32));
        assert!(double_factorial(-2).is_err());
        assert!(ln_double_factorial(-3).is_err());
    }

    #[test]
    fn log_matches_exact() {
        for n in [-1i64, 0, 1, 7, 40, 299, 300, 301, 302, 555, 1000] {
            let exact = double_factorial(n).unwrap();
            let digits = exact.to_string();
            // ln from the leading digits and the decimal exponent
            let lead: f64 = digits[..digits.len().min(17)].parse().unwrap();
            let ln_exact = lead.ln() + (digits.len() - digits.len().min(17)) as f64 * std::f64::consts::LN_10;
            let ln = ln_double_factorial(n).unwrap();
            assert!((ln - ln_exact).abs() <= 1e-12 * ln_exact.abs().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn central_ratio_recurrence() {
        let mut r = 1.0f64;
        for k in 1..2000u64 {
            r *= (2 * k - 1) as f64 / (2 * k) as f64;
            let got = ln_central_ratio(k).exp();
            assert!((got / r - 1.0).abs() < 1e-11, "k = {k}");
        }
    }
}
