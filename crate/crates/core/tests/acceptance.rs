//! Acceptance suite: one line per criterion.
//!
//! Criteria listed in `EXPECTED_RED` are known to be unattainable as
//! stated; they are evaluated faithfully and reported as FAIL without
//! failing the run. Any other failure, or a listed criterion that starts
//! passing, makes the run exit non-zero.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use tg_quench::cli::tail_report;
use tg_quench::fit::log_log_slope;
use tg_quench::observables::{
    count_maxima, distribution_distance, lab_frame_state, momentum_distribution, natural_orbitals, reference_momentum,
    reference_rdm, sdm_build, GridSpec, MomentumGrid, ReferenceName,
};
use tg_quench::oracle::{
    compare, overlap_table_error, symmetric_samples, GridFunction, Regime, Region, StateRef, TruncatedPropagation,
};
use tg_quench::oscillator_basis::{
    coefficient_decay_exponent, energy_partial_sums, Direction, HarmonicEigenstate, TgBranch, TgEigenstate,
};
use tg_quench::quench_dynamics::{
    double_quench_overlap, loschmidt_coefficient_series, loschmidt_forward, loschmidt_forward_closed, loschmidt_hyp3f2,
    loschmidt_reverse, loschmidt_reverse_closed, phi0_closed, phi_m_series, psi0_closed, psi_m_series,
    verify_derivative_relation, EvolvedState, QuenchScenario,
};
use tg_quench::special_fn::SummationControl;

/// Criteria whose stated tolerances are not reachable; see the notes in
/// each check.
const EXPECTED_RED: &[usize] = &[2, 4, 9];

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> Result<Outcome, tg_quench::Error>;

fn outcome(pass: bool, detail: String) -> Result<Outcome, tg_quench::Error> {
    Ok(Outcome { pass, detail })
}

fn ctrl() -> SummationControl {
    SummationControl::default()
}

/// Closed form, ₃F₂ and a 10⁵-term coefficient series agree at π/2;
/// revivals at π are exact.
fn criterion_1() -> Result<Outcome, tg_quench::Error> {
    let t = PI / 2.0;
    let ln = (1.0 + 2f64.sqrt()).ln();
    let mut worst = 0.0f64;
    for (dir, closed, want) in [
        (Direction::Forward, loschmidt_forward_closed(t), 2.0 / PI * ln),
        (Direction::Reverse, loschmidt_reverse_closed(t), 2.0 / PI * (2f64.sqrt() - ln)),
    ] {
        let h = loschmidt_hyp3f2(dir, 0, t, &ctrl())?.overlap;
        let s = loschmidt_coefficient_series(dir, 0, t, 100_000).overlap;
        for v in [(closed - h).norm(), (closed - s).norm(), (h - s).norm(), (closed.norm() - want).abs()] {
            worst = worst.max(v);
        }
    }
    let rf = (loschmidt_forward(0, PI, &ctrl())?.magnitude - 1.0).abs();
    let rr = (loschmidt_reverse(0, PI, &ctrl())?.magnitude - 1.0).abs();
    outcome(
        worst < 1e-6 && rf < 1e-9 && rr < 1e-9,
        format!("max pairwise {worst:.2e}; revival defects {rf:.1e}, {rr:.1e}"),
    )
}

/// Excited-state fidelities at π/2 against the ground state.
///
/// The ₃F₂ values are confirmed by the coefficient series, and
/// |L_1(π/2)| = 0.111, |L_2(π/2)| = 0.073 and |L^r_2(π/2)| = 0.084 exceed
/// 0.05, so this criterion is red.
fn criterion_2() -> Result<Outcome, tg_quench::Error> {
    let t = PI / 2.0;
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for m in [1usize, 2, 8, 12] {
        let f = loschmidt_forward(m, t, &ctrl())?.magnitude;
        let r = loschmidt_reverse(m, t, &ctrl())?.magnitude;
        worst = worst.max(f).max(r);
        parts.push(format!("m={m}: {f:.3}/{r:.3}"));
    }
    let g = loschmidt_forward(0, t, &ctrl())?.magnitude.min(loschmidt_reverse(0, t, &ctrl())?.magnitude);
    outcome(worst < 0.05 && g > 0.3, format!("{}; ground {g:.3}", parts.join(", ")))
}

/// Closed-form overlaps against quadrature, and coefficient decay rates.
fn criterion_3() -> Result<Outcome, tg_quench::Error> {
    let ef = overlap_table_error(Direction::Forward, 20)?;
    let er = overlap_table_error(Direction::Reverse, 20)?;
    let pf = coefficient_decay_exponent(0, Direction::Forward, 100..=2000)?;
    let pr = coefficient_decay_exponent(0, Direction::Reverse, 100..=2000)?;
    let pass = ef < 1e-10 && er < 1e-10 && (pf + 1.5).abs() <= 0.05 && (pr + 2.5).abs() <= 0.05;
    outcome(pass, format!("quadrature {ef:.1e}/{er:.1e}; exponents {pf:.4}/{pr:.4}"))
}

/// Closed forms against the series and the truncated-basis oracle.
///
/// The oracle part is red: truncated sums converge like N^{-1}
/// (forward) and N^{-3/2} (reverse) in sup norm, which at the stated basis
/// sizes leaves errors far above 10⁻⁴ and 10⁻⁵.
fn criterion_4() -> Result<Outcome, tg_quench::Error> {
    let z = symmetric_samples(6.0, 600);
    let near = Region::new(0.2, 6.0);
    let mut series = 0.0f64;
    for &t in &[0.4, 1.0, PI / 2.0] {
        let a = GridFunction::from_fn(&z, |x| Ok(psi0_closed(x, t).value))?;
        let b = GridFunction::from_fn(&z, |x| Ok(psi_m_series(0, x, t, &ctrl())?.value))?;
        series = series.max(compare(&a, &b, near)?.sup_error);
        let a = GridFunction::from_fn(&z, |x| Ok(phi0_closed(x, t).value))?;
        let b = GridFunction::from_fn(&z, |x| Ok(phi_m_series(0, x, t, &ctrl())?.value))?;
        series = series.max(compare(&a, &b, near)?.sup_error);
    }
    let region = Region::new(0.3, 6.0);
    let fwd = TruncatedPropagation::new(StateRef::new(Regime::Noninteracting, 0), 400)?;
    let rev = TruncatedPropagation::new(StateRef::new(Regime::Tg, 0), 200)?;
    let (mut of, mut or) = (0.0f64, 0.0f64);
    for &t in &[0.4, PI / 2.0] {
        let a = GridFunction::from_fn(&z, |x| Ok(psi0_closed(x, t).value))?;
        of = of.max(compare(&a, &fwd.sample(&z, t), region)?.sup_error);
        let a = GridFunction::from_fn(&z, |x| Ok(phi0_closed(x, t).value))?;
        or = or.max(compare(&a, &rev.sample(&z, t), region)?.sup_error);
    }
    let pass = series < 1e-7 && of < 1e-4 && or < 1e-5;
    outcome(pass, format!("series {series:.1e}; oracle forward {of:.2e} (N=400), reverse {or:.2e} (N=200)"))
}

/// Derivative relation between the forward and reverse series.
fn criterion_5() -> Result<Outcome, tg_quench::Error> {
    let tight = SummationControl::new(200_000, 1e-14, 6)?;
    let mut worst = 0.0f64;
    for m in [0usize, 1, 3] {
        for z in [0.5, 1.0, 2.0] {
            for t in [0.8, 1.2] {
                worst = worst.max(verify_derivative_relation(m, z, t, 1e-4, &tight)?);
            }
        }
    }
    outcome(worst < 1e-6, format!("max relative error {worst:.2e}"))
}

/// Large-distance decay of the ground-state wave functions.
fn criterion_6() -> Result<Outcome, tg_quench::Error> {
    let z: Vec<f64> = (0..60).map(|i| 20.0 * 10f64.powf(i as f64 / 59.0)).collect();
    let a: Vec<f64> = z.iter().map(|&x| psi0_closed(x, 1.0).value.norm()).collect();
    let b: Vec<f64> = z.iter().map(|&x| phi0_closed(x, 1.0).value.norm()).collect();
    let (sa, sb) = (log_log_slope(&z, &a)?, log_log_slope(&z, &b)?);
    outcome((sa + 1.0).abs() <= 0.05 && (sb + 2.0).abs() <= 0.05, format!("slopes {sa:.4} and {sb:.4}"))
}

fn max_abs(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Density matrices, populations and momentum distributions of the
/// reference states through the full pipeline.
fn criterion_7() -> Result<Outcome, tg_quench::Error> {
    let g = GridSpec::default();
    let k = MomentumGrid::default();
    let diff = |a: &tg_quench::observables::ReducedDensityMatrix, b: &tg_quench::observables::ReducedDensityMatrix| {
        (&a.values - &b.values).iter().map(|v| v.norm()).fold(0.0, f64::max)
    };
    let psi0 = HarmonicEigenstate::new(0);
    let rb = sdm_build(&lab_frame_state(&psi0, 0.0), g)?;
    let eb = diff(&rb, &reference_rdm(ReferenceName::RhoB, g)?);
    let phi0 = TgEigenstate::new(0, TgBranch::Symmetrized);
    let rsf = sdm_build(&lab_frame_state(&phi0, 0.0), g)?;
    let esf = diff(&rsf, &reference_rdm(ReferenceName::RhoSf, g)?);
    let rf = reference_rdm(ReferenceName::RhoF, g)?;
    let df = natural_orbitals(&rf)?;
    let ef = (df.populations[0] - 0.5).abs().max((df.populations[1] - 0.5).abs());
    let nb = momentum_distribution(&natural_orbitals(&rb)?, k.k_max, k.points)?;
    let nf = momentum_distribution(&df, k.k_max, k.points)?;
    let enb = max_abs(&nb.values, &reference_momentum(ReferenceName::NB, g, k)?.values);
    let enf = max_abs(&nf.values, &reference_momentum(ReferenceName::NF, g, k)?.values);
    let pass = eb < 1e-8 && esf < 1e-6 && ef < 1e-6 && enb < 1e-6 && enf < 1e-6;
    outcome(pass, format!("rho_b {eb:.1e}, rho_sf {esf:.1e}, populations {ef:.1e}, n_b {enb:.1e}, n_f {enf:.1e}"))
}

/// Orderings of tail-corrected, renormalized distances at π/2.
fn criterion_8() -> Result<Outcome, tg_quench::Error> {
    let g = GridSpec::default();
    let k = MomentumGrid::default();
    let t = PI / 2.0;
    let fwd = EvolvedState::preferred(Direction::Forward, 0, t, ctrl())?;
    let rho = sdm_build(&lab_frame_state(&fwd, t), g)?.renormalized();
    let d = |name| -> Result<f64, tg_quench::Error> {
        distribution_distance(&rho, &reference_rdm(name, g)?.renormalized())
    };
    let (dsf, db, df) = (d(ReferenceName::RhoSf)?, d(ReferenceName::RhoB)?, d(ReferenceName::RhoF)?);
    let maxima = count_maxima(&rho.density());

    let rev = EvolvedState::preferred(Direction::Reverse, 0, t, ctrl())?;
    let rr = sdm_build(&lab_frame_state(&rev, t), g)?.renormalized();
    let n = momentum_distribution(&natural_orbitals(&rr)?, k.k_max, k.points)?.renormalized();
    let dnf = distribution_distance(&n, &reference_momentum(ReferenceName::NF, g, k)?.renormalized())?;
    let dnsf = distribution_distance(&n, &reference_momentum(ReferenceName::NSf, g, k)?.renormalized())?;
    let pass = dsf < db && dsf < df && dnf < dnsf && maxima == 2;
    outcome(
        pass,
        format!("rdm d(sf)={dsf:.3} d(f)={df:.3} d(b)={db:.3}; momentum d(n_f)={dnf:.2e} d(n_sf)={dnsf:.3}; maxima {maxima}"),
    )
}

/// Momentum tail windows from a slope-plateau search over k ∈ [1, 60].
///
/// Red: at t = 0.6 the k⁻² window is clean but the outer window is not
/// converged in the grid; at t = π/2 no straight window near -2 exists.
fn criterion_9() -> Result<Outcome, tg_quench::Error> {
    let g = GridSpec::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for t in [0.6, PI / 2.0] {
        let s = EvolvedState::preferred(Direction::Forward, 0, t, ctrl())?;
        let rho = sdm_build(&lab_frame_state(&s, t), g)?.renormalized();
        let n = momentum_distribution(&natural_orbitals(&rho)?, 60.0, 4001)?;
        let r = tail_report(&n);
        let fmt = |w: Option<tg_quench::observables::SlopeWindow>| {
            w.map_or("none".to_string(), |w| format!("{:.2} on [{:.1}, {:.1}]", w.slope, w.k_lo, w.k_hi))
        };
        let ok_in = r.inner.is_some_and(|w| (w.slope + 2.0).abs() <= 0.3);
        let ok_out = r.outer.is_some_and(|w| (w.slope + 4.0).abs() <= 0.3);
        pass &= ok_in && ok_out;
        parts.push(format!("t={t:.3}: inner {}, outer {}", fmt(r.inner), fmt(r.outer)));
    }
    outcome(pass, parts.join("; "))
}

/// Double quench overlaps are constant after t₁ and equal the fidelity at t₁.
fn criterion_10() -> Result<Outcome, tg_quench::Error> {
    let mut worst = 0.0f64;
    for t1 in [0.3, PI / 2.0] {
        for dir in [Direction::Forward, Direction::Reverse] {
            for m in [0usize, 1] {
                let s = QuenchScenario::double(dir, m, t1)?;
                let want = match dir {
                    Direction::Forward => loschmidt_forward(m, t1, &ctrl())?.magnitude,
                    Direction::Reverse => loschmidt_reverse(m, t1, &ctrl())?.magnitude,
                };
                for dt in [0.5, 2.0, 5.0] {
                    worst = worst.max((double_quench_overlap(&s, t1 + dt, &ctrl())? - want).abs());
                }
            }
        }
    }
    outcome(worst < 1e-8, format!("max deviation {worst:.1e}"))
}

/// Period-π invariance and reflection about π/2 of the ground-state densities.
fn criterion_11() -> Result<Outcome, tg_quench::Error> {
    let mut worst = 0.0f64;
    let d = |f: fn(f64, f64) -> tg_quench::quench_dynamics::StateValue, z: f64, t: f64| f(z, t).value.norm_sqr();
    for f in [psi0_closed as fn(f64, f64) -> _, phi0_closed] {
        for z in [0.3, 0.9, 1.7, 3.2, 5.0] {
            for t in [0.2, 0.7, 1.3] {
                let base = d(f, z, t);
                worst = worst.max((d(f, z, t + PI) - base).abs()).max((d(f, z, PI - t) - base).abs());
            }
        }
    }
    outcome(worst < 1e-10, format!("max deviation {worst:.1e}"))
}

/// Energy after the quench: divergent (∝ N^{1/2}) forward, convergent reverse.
fn criterion_12() -> Result<Outcome, tg_quench::Error> {
    let n_max = 10_000;
    let sf = energy_partial_sums(Direction::Forward, 0, n_max);
    let sr = energy_partial_sums(Direction::Reverse, 0, n_max);
    let ns: Vec<usize> = (0..40).map(|i| (1000.0 * 10f64.powf(i as f64 / 39.0)) as usize).collect();
    let x: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let yf: Vec<f64> = ns.iter().map(|&n| sf[n]).collect();
    let dr: Vec<f64> = ns.iter().map(|&n| sr[n] - sr[n - 1]).collect();
    let (pf, pr) = (log_log_slope(&x, &yf)?, log_log_slope(&x, &dr)?);
    outcome(
        (pf - 0.5).abs() <= 0.05 && pr < -1.4,
        format!("forward growth exponent {pf:.4}; reverse increments slope {pr:.3}"),
    )
}

fn main() -> ExitCode {
    let checks: [Check; 12] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
        criterion_12,
    ];
    let start = Instant::now();
    let mut unexpected = 0;
    for (i, check) in checks.iter().enumerate() {
        let id = i + 1;
        let t0 = Instant::now();
        let o = check().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
        let red = EXPECTED_RED.contains(&id);
        let note = match (o.pass, red) {
            (false, true) => " (documented as unattainable)",
            (true, true) => " (documented red now passes)",
            _ => "",
        };
        if o.pass == red {
            unexpected += 1;
        }
        println!(
            "criterion {id:>2}: {}{note} | {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t0.elapsed().as_secs_f64()
        );
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if unexpected > 0 {
        println!("{unexpected} criterion outcome(s) differ from the documented expectation");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
