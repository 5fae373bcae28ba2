//! Brute-force verification: overlaps by numerical quadrature and
//! propagation in a truncated eigenbasis. Nothing here uses the closed-form
//! overlap coefficients.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oscillator_basis::quadrature::{gauss_hermite, half_range_hermite, rule_size_for_degree};
use crate::oscillator_basis::{overlap_cmn, Direction};
use crate::quench_dynamics::{phi0_closed, phi_m_series, psi0_closed, psi_m_series};
use crate::special_fn::{HermiteFunctions, SummationControl};

/// Largest basis size accepted by [`truncated_propagate`].
pub const MAX_BASIS: usize = 2000;
/// Largest Gauss rule the oracle builds.
const MAX_RULE: usize = 4096;

/// Relative Hamiltonian regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Eigenstates `ψ_ξ`, energies `ξ + 1/2`.
    Noninteracting,
    /// Eigenstates `φ_ξ`, energies `2⌊ξ/2⌋ + 3/2`.
    Tg,
}

impl Regime {
    pub fn other(self) -> Self {
        match self {
            Regime::Noninteracting => Regime::Tg,
            Regime::Tg => Regime::Noninteracting,
        }
    }

    pub fn energy(self, index: usize) -> f64 {
        match self {
            Regime::Noninteracting => index as f64 + 0.5,
            Regime::Tg => 2.0 * (index / 2) as f64 + 1.5,
        }
    }
}

/// Eigenstate `ψ_index` or `φ_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StateRef {
    pub regime: Regime,
    pub index: usize,
}

impl StateRef {
    pub fn new(regime: Regime, index: usize) -> Self {
        Self { regime, index }
    }

    /// Functions involving `|z|` have a kink at the origin.
    fn has_kink(&self) -> bool {
        self.regime == Regime::Tg && self.index % 2 == 0
    }

    /// Polynomial degree in front of the Gaussian.
    fn degree(&self) -> usize {
        match self.regime {
            Regime::Noninteracting => self.index,
            Regime::Tg => self.index | 1,
        }
    }
}

/// Value of a basis function from `ψ_0(|x|), ψ_1(|x|), ...` at `x`.
fn basis_value(state: StateRef, psi_abs: &[f64], x: f64) -> f64 {
    let k = state.degree();
    let v = psi_abs[k];
    let odd_reflected = x < 0.0 && k % 2 == 1;
    match state.regime {
        Regime::Tg if state.index % 2 == 0 => v,
        _ if odd_reflected => -v,
        _ => v,
    }
}

fn rule_for(degree: usize) -> Result<usize> {
    let n = rule_size_for_degree(degree);
    if n > MAX_RULE {
        return Err(Error::Accuracy(format!("degree {degree} needs a {n}-node rule, above {MAX_RULE}")));
    }
    Ok(n)
}

/// `∫ f g dz` for real functions carrying a factor `e^{-z²/2}` each.
///
/// `split` integrates the two half-lines separately, which keeps
/// integrands with a kink at the origin exact. `degree` is the polynomial
/// degree of the product.
pub fn quadrature_overlap_fn(
    f: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    degree: usize,
    split: bool,
) -> Result<f64> {
    let n = rule_for(degree)?;
    Ok(if split {
        half_range_hermite(n).integrate(|x| f(x) * g(x) + f(-x) * g(-x))
    } else {
        gauss_hermite(n).integrate(|x| f(x) * g(x))
    })
}

/// `⟨f|g⟩` for two eigenstates.
pub fn quadrature_overlap(f: StateRef, g: StateRef) -> Result<f64> {
    let kmax = f.degree().max(g.degree());
    let eval = move |s: StateRef| {
        move |x: f64| {
            let psi: Vec<f64> = HermiteFunctions::new(x.abs()).take(kmax + 1).collect();
            basis_value(s, &psi, x)
        }
    };
    quadrature_overlap_fn(eval(f), eval(g), f.degree() + g.degree(), f.has_kink() || g.has_kink())
}

/// Overlaps `⟨ξ|initial⟩` for every final-basis index `ξ ≤ xi_max`, all
/// from one half-range rule.
fn basis_overlaps(initial: StateRef, xi_max: usize) -> Result<Vec<f64>> {
    let n_max = xi_max;
    let fin = initial.regime.other();
    let kmax = (n_max | 1).max(initial.degree());
    let rule = half_range_hermite(rule_for(kmax + initial.degree())?);
    let per_node: Vec<Vec<f64>> = rule
        .nodes
        .par_iter()
        .zip(&rule.scaled_weights)
        .map(|(&x, &w)| {
            let psi: Vec<f64> = HermiteFunctions::new(x).take(kmax + 1).collect();
            let a = basis_value(initial, &psi, x);
            let b = basis_value(initial, &psi, -x);
            (0..=n_max)
                .map(|xi| {
                    let s = StateRef::new(fin, xi);
                    w * (basis_value(s, &psi, x) * a + basis_value(s, &psi, -x) * b)
                })
                .collect()
        })
        .collect();
    // fixed reduction order over nodes
    let mut out = vec![0.0; n_max + 1];
    for row in &per_node {
        for (o, v) in out.iter_mut().zip(row) {
            *o += v;
        }
    }
    Ok(out)
}

/// Initial eigenstate expanded in the other regime's eigenbasis.
///
/// `n_max` counts states of the parity that couples to the initial state:
/// the basis is `ξ = 0..=2 n_max + 1`, which holds `n_max + 1` states of
/// each parity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedPropagation {
    pub initial: StateRef,
    pub final_regime: Regime,
    pub n_max: usize,
    /// `⟨ξ|initial⟩` for `ξ = 0..=2 n_max + 1`.
    pub coefficients: Vec<f64>,
    pub unitarity_defect: f64,
}

impl TruncatedPropagation {
    pub fn new(initial: StateRef, n_max: usize) -> Result<Self> {
        if n_max > MAX_BASIS {
            return Err(Error::Domain(format!("basis size {n_max} exceeds {MAX_BASIS}")));
        }
        let coefficients = basis_overlaps(initial, 2 * n_max + 1)?;
        let unitarity_defect = 1.0 - coefficients.iter().map(|c| c * c).sum::<f64>();
        Ok(Self { initial, final_regime: initial.regime.other(), n_max, coefficients, unitarity_defect })
    }

    /// `Σ_ξ e^{-iE_ξ t} ⟨ξ|initial⟩ ξ(z)`.
    pub fn eval(&self, z: f64, t: f64) -> Complex64 {
        let psi: Vec<f64> = HermiteFunctions::new(z.abs()).take(self.coefficients.len() + 1).collect();
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(xi, c)| {
                let s = StateRef::new(self.final_regime, xi);
                Complex64::from_polar(c * basis_value(s, &psi, z), -self.final_regime.energy(xi) * t)
            })
            .sum()
    }

    pub fn sample(&self, z: &[f64], t: f64) -> GridFunction {
        GridFunction { z: z.to_vec(), values: z.par_iter().map(|&x| self.eval(x, t)).collect() }
    }
}

/// Truncated-basis propagation of an eigenstate into the other regime,
/// sampled at `z`.
pub fn truncated_propagate(initial: StateRef, n_max: usize, t: f64, z: &[f64]) -> Result<GridFunction> {
    Ok(TruncatedPropagation::new(initial, n_max)?.sample(z, t))
}

/// Complex samples on increasing abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub z: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_fn(z: &[f64], f: impl Fn(f64) -> Result<Complex64> + Sync) -> Result<Self> {
        Ok(Self { z: z.to_vec(), values: z.par_iter().map(|&x| f(x)).collect::<Result<_>>()? })
    }
}

/// `|z|` range used in comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub abs_min: f64,
    pub abs_max: f64,
}

impl Region {
    pub fn new(abs_min: f64, abs_max: f64) -> Self {
        Self { abs_min, abs_max }
    }

    fn contains(&self, z: f64) -> bool {
        z.abs() >= self.abs_min && z.abs() <= self.abs_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub sup_error: f64,
    pub l2_error: f64,
}

/// Sup and trapezoid L² norms of `a - b` over the region.
pub fn compare(a: &GridFunction, b: &GridFunction, region: Region) -> Result<Comparison> {
    if a.z != b.z {
        return Err(Error::GridMismatch("compared functions use different abscissae".into()));
    }
    let n = a.z.len();
    let mut sup = 0.0f64;
    let mut l2 = 0.0;
    for i in 0..n {
        if !region.contains(a.z[i]) {
            continue;
        }
        let d = (a.values[i] - b.values[i]).norm();
        sup = sup.max(d);
        let left = if i > 0 && region.contains(a.z[i - 1]) { a.z[i] - a.z[i - 1] } else { 0.0 };
        let right = if i + 1 < n && region.contains(a.z[i + 1]) { a.z[i + 1] - a.z[i] } else { 0.0 };
        l2 += 0.5 * (left + right) * d * d;
    }
    Ok(Comparison { sup_error: sup, l2_error: l2.sqrt() })
}

/// One line of the verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub region: Option<Region>,
    #[serde(rename = "N_max")]
    pub n_max: Option<usize>,
    pub sup_error: f64,
    pub l2_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerifyReport {
    fn new(check: String, region: Option<Region>, n_max: Option<usize>, cmp: Comparison, tolerance: f64) -> Self {
        let pass = cmp.sup_error <= tolerance;
        Self { check, region, n_max, sup_error: cmp.sup_error, l2_error: cmp.l2_error, tolerance, pass }
    }
}

/// Uniform abscissae on `[-hi, hi]` skipping the origin.
pub fn symmetric_samples(hi: f64, points: usize) -> Vec<f64> {
    let h = 2.0 * hi / points as f64;
    (0..points).map(|i| -hi + (i as f64 + 0.5) * h).collect()
}

/// Largest deviation between quadrature and closed-form overlaps for
/// indices up to `max_index`.
pub fn overlap_table_error(direction: Direction, max_index: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 0..=max_index {
        let initial = match direction {
            Direction::Forward => StateRef::new(Regime::Noninteracting, 2 * m),
            Direction::Reverse => StateRef::new(Regime::Tg, 2 * m),
        };
        let q = basis_overlaps(initial, 2 * max_index)?;
        for n in 0..=max_index {
            let want = match direction {
                Direction::Forward => overlap_cmn(m, n),
                Direction::Reverse => overlap_cmn(n, m),
            };
            worst = worst.max((q[2 * n] - want).abs());
        }
    }
    Ok(worst)
}

/// Oracle and closed-form/series cross-checks on the default configuration.
pub fn verify_suite(ctrl: &SummationControl) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for dir in [Direction::Forward, Direction::Reverse] {
        let e = overlap_table_error(dir, 20)?;
        out.push(VerifyReport::new(
            format!("overlap_quadrature_{dir}"),
            None,
            Some(20),
            Comparison { sup_error: e, l2_error: e },
            1e-10,
        ));
    }

    let z = symmetric_samples(6.0, 600);
    let series_region = Region::new(0.2, 6.0);
    for &t in &[0.4, 1.0, PI / 2.0] {
        let a = GridFunction::from_fn(&z, |x| Ok(psi0_closed(x, t).value))?;
        let b = GridFunction::from_fn(&z, |x| Ok(psi_m_series(0, x, t, ctrl)?.value))?;
        out.push(VerifyReport::new(
            format!("psi0_closed_vs_series_t{t:.4}"),
            Some(series_region),
            None,
            compare(&a, &b, series_region)?,
            1e-7,
        ));
        let a = GridFunction::from_fn(&z, |x| Ok(phi0_closed(x, t).value))?;
        let b = GridFunction::from_fn(&z, |x| Ok(phi_m_series(0, x, t, ctrl)?.value))?;
        out.push(VerifyReport::new(
            format!("phi0_closed_vs_series_t{t:.4}"),
            Some(series_region),
            None,
            compare(&a, &b, series_region)?,
            1e-7,
        ));
    }

    let oracle_region = Region::new(0.3, 6.0);
    let fwd = TruncatedPropagation::new(StateRef::new(Regime::Noninteracting, 0), 400)?;
    let rev = TruncatedPropagation::new(StateRef::new(Regime::Tg, 0), 200)?;
    for &t in &[0.4, PI / 2.0] {
        let a = GridFunction::from_fn(&z, |x| Ok(psi0_closed(x, t).value))?;
        out.push(VerifyReport::new(
            format!("psi0_closed_vs_oracle_t{t:.4}"),
            Some(oracle_region),
            Some(400),
            compare(&a, &fwd.sample(&z, t), oracle_region)?,
            1e-4,
        ));
        let a = GridFunction::from_fn(&z, |x| Ok(phi0_closed(x, t).value))?;
        out.push(VerifyReport::new(
            format!("phi0_closed_vs_oracle_t{t:.4}"),
            Some(oracle_region),
            Some(200),
            compare(&a, &rev.sample(&z, t), oracle_region)?,
            1e-5,
        ));
    }

    // odd states only pick up a phase
    let odd = TruncatedPropagation::new(StateRef::new(Regime::Noninteracting, 1), 40)?;
    let t = 0.9;
    let a =
        GridFunction::from_fn(&z, |x| Ok(Complex64::from_polar(crate::oscillator_basis::psi_eval(1, x), -1.5 * t)))?;
    let full = Region::new(0.0, 6.0);
    out.push(VerifyReport::new(
        "odd_state_phase_only".into(),
        Some(full),
        Some(40),
        compare(&a, &odd.sample(&z, t), full)?,
        1e-12,
    ));
    Ok(out)
}
