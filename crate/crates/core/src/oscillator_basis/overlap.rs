//! Overlaps between the non-interacting and Tonks–Girardeau relative
//! eigenbases.
//!
//! Only even states couple: `⟨φ_{2n}|ψ_{2m}⟩ = c_mn` while the odd states
//! are common to both bases.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::fit::log_log_slope;
use crate::special_fn::factorial::{double_factorial, ln_central_ratio, ln_double_factorial, ln_odd_ratio, SignedLog};

/// Largest index accepted by the log-space overlap formula.
pub const MAX_INDEX: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Non-interacting ground state quenched into the hard-core regime;
    /// the initial states are `ψ_{2m}`.
    Forward,
    /// Hard-core state released into the non-interacting regime; the
    /// initial states are `φ_{2m}`.
    Reverse,
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "reverse" => Ok(Direction::Reverse),
            other => Err(Error::Domain(format!("unknown direction {other:?}"))),
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Reverse => "reverse",
        })
    }
}

/// `A_m = √((2m-1)!!/(2m)!!)` in log form.
pub fn ln_a(m: usize) -> f64 {
    0.5 * ln_central_ratio(m as u64)
}

/// `B_n = √((2n+1)!!/(2n)!!)` in log form.
pub fn ln_b(n: usize) -> f64 {
    0.5 * ln_odd_ratio(n as u64)
}

/// `c_mn = ⟨φ_{2n}|ψ_{2m}⟩ = √(2/π) (-1)^{m+n} A_m B_n / (2n+1-2m)`.
pub fn overlap_cmn(m: usize, n: usize) -> f64 {
    let denom = 2.0 * n as f64 + 1.0 - 2.0 * m as f64;
    let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
    let ln_abs = 0.5 * (2.0 / PI).ln() + ln_a(m) + ln_b(n) - denom.abs().ln();
    sign * denom.signum() * ln_abs.exp()
}

/// `I_mn = ∫_0^∞ H_{2m}(z) H_{2n+1}(z) e^{-z²} dz`, as a plain value while it
/// fits in `f64`, in signed log form beyond.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RawIntegral {
    Finite(f64),
    Log(SignedLog),
}

impl RawIntegral {
    pub fn as_log(&self) -> SignedLog {
        match *self {
            RawIntegral::Finite(v) => SignedLog::new(v.signum(), v.abs().ln()),
            RawIntegral::Log(l) => l,
        }
    }
}

/// `I_mn = (-2)^{m+n} (2m-1)!! (2n+1)!! / (2n+1-2m)`.
pub fn raw_integral_imn(m: usize, n: usize) -> RawIntegral {
    let (mi, ni) = (m as i64, n as i64);
    let denom = (2 * ni + 1 - 2 * mi) as f64;
    let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 } * denom.signum();
    // arguments are ≥ -1, so the log factorials cannot fail
    let ln_abs = (m + n) as f64 * std::f64::consts::LN_2
        + ln_double_factorial(2 * mi - 1).unwrap()
        + ln_double_factorial(2 * ni + 1).unwrap()
        - denom.abs().ln();
    let log = SignedLog::new(sign, ln_abs);
    if m + n > 500 || !log.is_representable() {
        return RawIntegral::Log(log);
    }
    let exact = num_bigint::BigUint::from(2u32).pow((m + n) as u32)
        * double_factorial(2 * mi - 1).unwrap()
        * double_factorial(2 * ni + 1).unwrap();
    // decimal parsing rounds correctly
    let magnitude: f64 = exact.to_string().parse().unwrap_or(f64::INFINITY);
    RawIntegral::Finite(sign * magnitude / denom.abs())
}

/// Matrix of overlaps, row `m` holding the expansion of the initial state
/// of index `m` in the final basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapTable {
    pub direction: Direction,
    /// `entries[m][n]` is `⟨φ_{2n}|ψ_{2m}⟩` (forward) or `⟨ψ_{2n}|φ_{2m}⟩`
    /// (reverse).
    pub entries: Vec<Vec<f64>>,
}

/// Row-major overlap for either direction.
pub fn directed_overlap(direction: Direction, m: usize, n: usize) -> f64 {
    match direction {
        Direction::Forward => overlap_cmn(m, n),
        Direction::Reverse => overlap_cmn(n, m),
    }
}

impl OverlapTable {
    pub fn new(direction: Direction, rows: usize, cols: usize) -> Result<Self> {
        if rows > MAX_INDEX + 1 || cols > MAX_INDEX + 1 {
            return Err(Error::Domain(format!("overlap indices are limited to {MAX_INDEX}")));
        }
        let entries = (0..rows).map(|m| (0..cols).map(|n| directed_overlap(direction, m, n)).collect()).collect();
        Ok(Self { direction, entries })
    }

    pub fn row_norm(&self, m: usize) -> f64 {
        self.entries[m].iter().map(|c| c * c).sum()
    }

    /// CSV with header `m,n,c_mn`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,c_mn\n");
        for (m, row) in self.entries.iter().enumerate() {
            for (n, c) in row.iter().enumerate() {
                let _ = writeln!(out, "{m},{n},{c:.16e}");
            }
        }
        out
    }
}

/// Least-squares slope of `ln c²` against `ln n` over `n_range`.
pub fn coefficient_decay_exponent(m: usize, direction: Direction, n_range: RangeInclusive<usize>) -> Result<f64> {
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo < 50 || hi > MAX_INDEX || hi < lo {
        return Err(Error::Domain(format!("decay fit range {lo}..={hi} outside [50, {MAX_INDEX}]")));
    }
    if hi - lo + 1 < 100 {
        return Err(Error::Statistics(format!("decay fit range {lo}..={hi} shorter than 100")));
    }
    let x: Vec<f64> = n_range.clone().map(|n| n as f64).collect();
    let y: Vec<f64> = n_range.map(|n| directed_overlap(direction, m, n).powi(2)).collect();
    log_log_slope(&x, &y)
}

/// Energy of the final-basis state paired with column `n`: `ε_{2n}` after a
/// forward quench, `E_{2n}` after a reverse one.
pub fn final_energy(direction: Direction, n: usize) -> f64 {
    match direction {
        Direction::Forward => 2.0 * n as f64 + 1.5,
        Direction::Reverse => 2.0 * n as f64 + 0.5,
    }
}

/// Partial sums `Σ_{n≤N} c²_{mn} ε_n` for `N = 0..=n_max`.
pub fn energy_partial_sums(direction: Direction, m: usize, n_max: usize) -> Vec<f64> {
    let mut acc = 0.0;
    (0..=n_max)
        .map(|n| {
            acc += directed_overlap(direction, m, n).powi(2) * final_energy(direction, n);
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn examples() {
        let s = (2.0 / PI).sqrt();
        assert!((overlap_cmn(0, 0) - s).abs() < 1e-15);
        assert!((overlap_cmn(0, 1) + s / 6f64.sqrt()).abs() < 1e-15);
        assert!((overlap_cmn(1, 0) - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert_eq!(raw_integral_imn(0, 0), RawIntegral::Finite(1.0));
        assert_eq!(raw_integral_imn(0, 1), RawIntegral::Finite(-2.0));
        assert_eq!(raw_integral_imn(1, 0), RawIntegral::Finite(2.0));
    }

    #[test]
    fn raw_integral_exact_small() {
        for m in 0..12usize {
            for n in 0..12usize {
                let num = BigUint::from(2u32).pow((m + n) as u32)
                    * double_factorial(2 * m as i64 - 1).unwrap()
                    * double_factorial(2 * n as i64 + 1).unwrap();
                let num: f64 = num.to_string().parse().unwrap();
                let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
                let want = sign * num / (2.0 * n as f64 + 1.0 - 2.0 * m as f64);
                let RawIntegral::Finite(got) = raw_integral_imn(m, n) else { panic!() };
                assert!((got / want - 1.0).abs() < 1e-13, "({m}, {n})");
            }
        }
        assert!(matches!(raw_integral_imn(300, 300), RawIntegral::Log(_)));
    }

    #[test]
    fn sign_alternation() {
        for m in 0..5 {
            for n in m..m + 30 {
                assert!(overlap_cmn(m, n) * overlap_cmn(m, n + 1) < 0.0);
            }
        }
    }

    #[test]
    fn decay_exponents() {
        let f = coefficient_decay_exponent(0, Direction::Forward, 100..=2000).unwrap();
        let r = coefficient_decay_exponent(0, Direction::Reverse, 100..=2000).unwrap();
        assert!((f + 1.5).abs() < 0.05, "{f}");
        assert!((r + 2.5).abs() < 0.05, "{r}");
        assert!(matches!(coefficient_decay_exponent(0, Direction::Forward, 100..=150), Err(Error::Statistics(_))));
    }

    #[test]
    fn row_completeness() {
        let defect = |n: usize| 1.0 - (0..=n).map(|k| overlap_cmn(0, k).powi(2)).sum::<f64>();
        let c3 = defect(1000) * 1000f64.sqrt();
        let c4 = defect(10_000) * 10_000f64.sqrt();
        assert!((c3 / c4 - 1.0).abs() < 0.01, "{c3} {c4}");
        let rev = OverlapTable::new(Direction::Reverse, 3, 4000).unwrap();
        for m in 0..3 {
            assert!((rev.row_norm(m) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn csv_header() {
        let t = OverlapTable::new(Direction::Forward, 2, 2).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("m,n,c_mn\n0,0,7.978845608028654"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn energy_divergence_and_convergence() {
        let fwd = energy_partial_sums(Direction::Forward, 0, 4000);
        let rev = energy_partial_sums(Direction::Reverse, 0, 4000);
        let ns: Vec<f64> = (200..=4000).step_by(50).map(|n| n as f64).collect();
        let grow: Vec<f64> = ns.iter().map(|&n| fwd[n as usize]).collect();
        let g = log_log_slope(&ns, &grow).unwrap();
        assert!((g - 0.5).abs() < 0.05, "{g}");
        let diffs: Vec<f64> = ns.iter().map(|&n| rev[n as usize] - rev[n as usize - 1]).collect();
        let d = log_log_slope(&ns, &diffs).unwrap();
        assert!(d < -1.4, "{d}");
    }
}
