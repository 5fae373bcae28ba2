//! Error function of complex argument.
//!
//! `erf(w) = 2/√π ∫_0^w e^{-s²} ds`. Small arguments use the Maclaurin
//! series; larger ones go through the Faddeeva function
//! `w(z) = e^{-z²} erfc(-iz)`, via `erfc(v) = e^{-v²} w(iv)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Radius up to which the Maclaurin series is used.
pub const MACLAURIN_RADIUS: f64 = 3.0;
/// Radius beyond which `erf_complex` results carry the degraded flag.
pub const VALIDATED_RADIUS: f64 = 8.0;

/// Number of terms in the Weideman rational approximation.
const WEIDEMAN_TERMS: usize = 40;
/// `|z|` beyond which the Laplace continued fraction replaces the rational
/// approximation of the Faddeeva function.
const CONTINUED_FRACTION_RADIUS: f64 = 8.0;

/// A value together with a flag marking arguments outside the validated
/// accuracy range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checked<T> {
    pub value: T,
    pub degraded: bool,
}

fn maclaurin(w: Complex64) -> Complex64 {
    let w2 = -w * w;
    let mut term = w;
    let mut sum = w;
    for n in 1..400 {
        term *= w2 / n as f64;
        let contrib = term / (2 * n + 1) as f64;
        sum += contrib;
        if contrib.norm() <= 1e-17 * sum.norm() && n as f64 > w2.norm() {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

struct Weideman {
    coeffs: Vec<f64>,
    l: f64,
}

fn weideman() -> &'static Weideman {
    static TABLE: OnceLock<Weideman> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = WEIDEMAN_TERMS;
        let m = 2 * n;
        let l = (n as f64 / 2f64.sqrt()).sqrt();
        // samples of e^{-t²}(L² + t²) at t = L tan(kπ/2M), k = -M+1..M-1
        let sample = |k: i64| {
            let theta = k as f64 * PI / m as f64;
            let t = l * (theta / 2.0).tan();
            (-t * t).exp() * (l * l + t * t)
        };
        let coeffs = (1..=n)
            .map(|j| {
                let mut acc = 0.0;
                for k in -(m as i64) + 1..m as i64 {
                    acc += sample(k) * (PI * (k * j as i64) as f64 / m as f64).cos();
                }
                acc / (2 * m) as f64
            })
            .collect();
        Weideman { coeffs, l }
    })
}

fn faddeeva_rational(z: Complex64) -> Complex64 {
    let table = weideman();
    let i = Complex64::i();
    let denom = table.l - i * z;
    let zz = (table.l + i * z) / denom;
    let mut p = Complex64::new(0.0, 0.0);
    for &c in table.coeffs.iter().rev() {
        p = p * zz + c;
    }
    2.0 * p / (denom * denom) + FRAC_1_SQRT_PI / denom
}

fn faddeeva_continued_fraction(z: Complex64) -> Complex64 {
    // w(z) = (i/√π) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))), modified Lentz
    let tiny = Complex64::new(1e-300, 0.0);
    let mut f = z;
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..500 {
        let a = -(k as f64) / 2.0;
        d = z + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        d = d.inv();
        c = z + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    Complex64::i() * FRAC_1_SQRT_PI / f
}

/// Faddeeva function `w(z) = e^{-z²} erfc(-iz)`.
///
/// Upper half-plane values come from a 40-term Weideman rational
/// approximation, or from the Laplace continued fraction for `|z| ≥ 8`;
/// the lower half-plane uses `w(z) = 2e^{-z²} - w(-z)`.
pub fn faddeeva(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return 2.0 * (-z * z).exp() - faddeeva(-z);
    }
    if z.norm() >= CONTINUED_FRACTION_RADIUS {
        faddeeva_continued_fraction(z)
    } else {
        faddeeva_rational(z)
    }
}

/// Scaled complementary error function `e^{w²} erfc(w) = w(iw)`.
pub fn erfcx_complex(w: Complex64) -> Complex64 {
    faddeeva(Complex64::i() * w)
}

/// `erf(w)`; the `degraded` flag is set for `|w| > 8`.
pub fn erf_complex(w: Complex64) -> Checked<Complex64> {
    let degraded = w.norm() > VALIDATED_RADIUS || !w.re.is_finite() || !w.im.is_finite();
    Checked { value: scaled_erf(w, 0.0), degraded }
}

/// `e^{-c} erf(w)` for real `c`, evaluated without forming `e^{-w²}` and
/// `e^{-c}` separately.
///
/// The wave-function closed forms need `e^{-z²/2} erf(z g)` where
/// `Re(z²/2 + z²g²) = 0` while both factors alone over- or underflow.
pub fn scaled_erf(w: Complex64, c: f64) -> Complex64 {
    if w.norm() <= MACLAURIN_RADIUS {
        return (-c).exp() * maclaurin(w);
    }
    // odd symmetry keeps the Faddeeva argument in the upper half-plane
    let (sign, v) = if w.re >= 0.0 { (1.0, w) } else { (-1.0, -w) };
    let head = (-c).exp();
    let tail = (-c - v * v).exp() * faddeeva(Complex64::i() * v);
    sign * (head - tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from a 50-digit mpmath evaluation.
    const REFERENCE: &[(f64, f64, f64, f64)] = &[
        (1.0, 0.0, 0.842_700_792_949_714_87, 0.0),
        (0.0, 1.0, 0.0, 1.650_425_758_797_542_9),
        (0.5, 0.5, 0.642_612_914_854_820_53, 0.457_881_394_435_192_22),
        (2.0, -1.5, 0.963_617_580_857_292_83, -0.011_003_373_852_137_95),
        (2.9, 0.7, 1.000_027_743_605_149_3, -5.949_694_527_282_812_3e-5),
        (3.5, 2.0, 1.000_012_585_981_940_8, 3.369_461_013_273_328_8e-5),
        (1.2, 4.0, 39_016.018_758_413_031, -288_903.178_535_519_93),
        (-4.0, 6.0, 10_493_233.450_621_281, -36_619_139.187_801_237),
        (5.0, -5.0, 0.930_379_603_743_095_12, -0.038_936_190_895_121_379),
        (0.0, -7.5, 0.0, -2.038_818_719_178_621_1e23),
    ];

    #[test]
    fn matches_reference() {
        for &(re, im, ere, eim) in REFERENCE {
            let got = erf_complex(Complex64::new(re, im));
            assert!(!got.degraded);
            let want = Complex64::new(ere, eim);
            let rel = (got.value - want).norm() / want.norm();
            assert!(rel < 1e-12, "erf({re}+{im}i): got {}, want {want}, rel {rel:e}", got.value);
        }
    }

    #[test]
    fn zero_and_symmetries() {
        assert_eq!(erf_complex(Complex64::new(0.0, 0.0)).value, Complex64::new(0.0, 0.0));
        for &(re, im) in &[(0.3, 0.2), (2.5, 1.0), (4.0, -3.0), (0.5, 6.0), (7.0, 0.1)] {
            let w = Complex64::new(re, im);
            let f = erf_complex(w).value;
            assert_eq!(erf_complex(-w).value, -f);
            let conj = erf_complex(w.conj()).value;
            assert!((conj - f.conj()).norm() <= 1e-14 * f.norm());
        }
    }

    #[test]
    fn branches_agree_at_switch_radius() {
        for k in 0..24 {
            let phase = k as f64 * PI / 12.0;
            let w = Complex64::from_polar(MACLAURIN_RADIUS, phase);
            let a = maclaurin(w);
            let b = scaled_erf(w * (1.0 + 1e-15), 0.0);
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0), "phase {phase}");
        }
    }

    #[test]
    fn degraded_flag_outside_validated_range() {
        assert!(erf_complex(Complex64::new(9.0, 0.0)).degraded);
        assert!(!erf_complex(Complex64::new(7.9, 0.0)).degraded);
    }

    #[test]
    fn scaled_form_stays_finite() {
        // e^{-z²/2} erf(z g) at t = 1, z = 200
        let t = 1.0f64;
        let g = Complex64::from_polar(1.0 / (2.0 * t.sin()).sqrt(), -(t / 2.0 + PI / 4.0));
        let z = 200.0;
        let v = scaled_erf(z * g, 0.5 * z * z);
        assert!(v.norm().is_finite());
        let expected = 1.0 / (PI.sqrt() * z * g.norm());
        assert!((v.norm() / expected - 1.0).abs() < 1e-4);
    }
}
