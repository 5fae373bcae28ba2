//! Command-line front end. Every dataset is written as CSV with 17
//! significant digits or as JSON; diagnostics go to stderr as JSON lines.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::observables::export::{density_csv, fmt17, momentum_csv, populations_csv, rdm_csv};
use crate::observables::{
    lab_frame_state, momentum_distribution, natural_orbitals, reference_state, sdm_build, slope_plateau, GridSpec,
    MomentumDistribution, MomentumGrid, Reference, ReferenceName, SlopeWindow,
};
use crate::oracle::verify_suite;
use crate::oscillator_basis::Direction;
use crate::quench_dynamics::{
    double_quench_overlap, loschmidt_forward, loschmidt_reverse, EvolvedState, QuenchScenario,
};
use crate::special_fn::{check_guard, SummationControl};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_ACCURACY: i32 = 4;

/// Largest initial index accepted by wave-function commands.
pub const MAX_M: usize = 50;

#[derive(Parser, Debug)]
#[command(name = "tg-quench", version, about = "Two trapped bosons after zero/infinite interaction quenches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// |L_m(t)| and the complex overlap (CSV: t, abs_l, re_l, im_l).
    Fidelity(Common),
    /// Relative wave function on the grid (CSV: t, z, abs2, re, im).
    Wavefunction(Common),
    /// Reduced density matrix in the lab frame, with density and natural
    /// populations written next to it.
    Sdm(Common),
    /// Momentum distribution (CSV: k, n) with fitted tail slopes.
    Momentum(Common),
    /// Overlap with the initial state after a second quench at t1
    /// (CSV: t, overlap).
    DoubleQuench(Common),
    /// Analytic reference states.
    Reference(ReferenceArgs),
    /// Oracle cross-checks (JSON lines).
    Verify(Common),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Initial state index m; `fidelity` also takes a comma list.
    #[arg(long, default_value = "0")]
    m: String,
    #[arg(long, default_value = "forward")]
    direction: Direction,
    /// Times: a value, a comma list, or start:stop:step.
    #[arg(long, default_value = "1.5707963267948966")]
    t: String,
    /// Second quench time for double-quench.
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long = "grid-L", default_value_t = 12.0)]
    grid_l: f64,
    #[arg(long = "grid-N", default_value_t = 512)]
    grid_n: usize,
    /// Largest momentum of the momentum grid.
    #[arg(long = "k-max", default_value_t = 12.0)]
    k_max: f64,
    /// Points of the symmetric momentum grid.
    #[arg(long = "k-points", default_value_t = 1024)]
    k_points: usize,
    /// Series stopping tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 200_000)]
    max_terms: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Turn accuracy warnings into exit code 4.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug, Clone)]
struct ReferenceArgs {
    /// rho_b, rho_f, rho_sf, n_b, n_f or n_sf.
    #[arg(long)]
    name: ReferenceName,
    #[command(flatten)]
    common: Common,
}

/// Failure carried to the exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Core(Error::Domain(_) | Error::GridMismatch(_) | Error::Resolution(_)) => EXIT_USAGE,
            Failure::Core(Error::Accuracy(_)) => EXIT_ACCURACY,
            Failure::Core(_) | Failure::Io(_) => EXIT_CONVERGENCE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Io(_) => "io",
            Failure::Core(e) => match e {
                Error::Domain(_) => "domain",
                Error::Convergence { .. } => "convergence",
                Error::Singular(_) => "singular",
                Error::Statistics(_) => "statistics",
                Error::GridMismatch(_) => "grid_mismatch",
                Error::Resolution(_) => "resolution",
                Error::NotPositive { .. } => "not_positive",
                Error::Underflow(_) => "underflow",
                Error::Accuracy(_) => "accuracy",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(s) => s.clone(),
            Failure::Core(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }
}

fn diagnostic(value: serde_json::Value) {
    eprintln!("{value}");
}

/// Collected warnings of one run.
#[derive(Default)]
struct Warnings(Vec<String>);

impl Warnings {
    fn push(&mut self, msg: impl Into<String>) {
        let msg = msg.into();
        diagnostic(json!({ "warning": msg }));
        self.0.push(msg);
    }
}

/// Parses `start:stop:step`, a comma list, or a single value.
pub fn parse_times(spec: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("invalid time value '{s}'"));
    let times = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("time range '{spec}' must be start:stop:step"));
        }
        let (a, b, h) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(h > 0.0) || b < a {
            return Err(format!("time range '{spec}' needs step > 0 and stop >= start"));
        }
        let count = ((b - a) / h + 1e-9).floor() as usize + 1;
        (0..count).map(|i| a + i as f64 * h).collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if let Some(t) = times.iter().find(|t| !(0.0..=2.0 * PI + 1e-12).contains(*t)) {
        return Err(format!("time {t} outside [0, 2π]"));
    }
    if times.is_empty() {
        return Err("no times given".into());
    }
    Ok(times)
}

impl Common {
    fn ctrl(&self) -> Result<SummationControl, Failure> {
        SummationControl::new(self.max_terms, self.tol, SummationControl::default().stall_window).map_err(Failure::from)
    }

    fn times(&self) -> Result<Vec<f64>, Failure> {
        parse_times(&self.t).map_err(Failure::Usage)
    }

    fn grid(&self) -> Result<GridSpec, Failure> {
        Ok(GridSpec::new(self.grid_l, self.grid_n)?)
    }

    fn m_list(&self) -> Result<Vec<usize>, Failure> {
        self.m
            .split(',')
            .map(|v| v.trim().parse().map_err(|_| Failure::Usage(format!("invalid m value {v:?}"))))
            .collect()
    }

    fn m(&self) -> Result<usize, Failure> {
        match self.m_list()?[..] {
            [m] => Ok(m),
            _ => Err(Failure::Usage("this command takes a single m".into())),
        }
    }

    fn check_m(&self) -> Result<usize, Failure> {
        let m = self.m()?;
        if m > MAX_M {
            return Err(Failure::Usage(format!("m = {m} exceeds {MAX_M}")));
        }
        Ok(m)
    }

    fn single_time(&self) -> Result<f64, Failure> {
        let t = self.times()?;
        if t.len() != 1 {
            return Err(Failure::Usage("this command takes a single time".into()));
        }
        Ok(t[0])
    }
}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn write(&self, body: &str) -> Result<(), Failure> {
        match &self.path {
            Some(p) => std::fs::write(p, body)?,
            None => std::io::stdout().write_all(body.as_bytes())?,
        }
        Ok(())
    }

    /// Sidecar file next to the main output, or a diagnostic line when
    /// writing to stdout.
    fn sidecar(&self, suffix: &str, body: &str) -> Result<(), Failure> {
        match &self.path {
            Some(p) => {
                let mut name = p.file_stem().unwrap_or_default().to_os_string();
                name.push(suffix);
                std::fs::write(p.with_file_name(name), body)?;
            }
            None => eprintln!("{}", body.trim_end()),
        }
        Ok(())
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn run_fidelity(a: &Common, warn: &mut Warnings) -> Result<String, Failure> {
    let ctrl = a.ctrl()?;
    let ms = a.m_list()?;
    let times = a.times()?;
    let mut rows = Vec::new();
    for &m in &ms {
        for &t in &times {
            if m > 0
                && check_guard(t).is_err()
                && crate::special_fn::hypergeometric::distance_to_pi_multiple(t) >= 1e-14
            {
                warn.push(format!("m = {m}, t = {t} lies in the guard zone around a multiple of π; skipped"));
                continue;
            }
            let r = match a.direction {
                Direction::Forward => loschmidt_forward(m, t, &ctrl)?,
                Direction::Reverse => loschmidt_reverse(m, t, &ctrl)?,
            };
            rows.push((m, t, r));
        }
    }
    // The m column only appears for several initial states.
    let many = ms.len() > 1;
    Ok(match a.format {
        Format::Csv => {
            let mut s = String::from(if many { "m,t,abs_l,re_l,im_l\n" } else { "t,abs_l,re_l,im_l\n" });
            for (m, t, r) in &rows {
                if many {
                    s += &format!("{m},");
                }
                s += &format!("{},{},{},{}\n", fmt17(*t), fmt17(r.magnitude), fmt17(r.overlap.re), fmt17(r.overlap.im));
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(m, t, r)| json!({ "m": m, "t": t, "result": r })).collect();
            to_json(&v)?
        }
    })
}

fn run_wavefunction(a: &Common, warn: &mut Warnings) -> Result<String, Failure> {
    let m = a.check_m()?;
    let ctrl = a.ctrl()?;
    let z = a.grid()?.nodes();
    let mut rows: Vec<(f64, f64, Complex64)> = Vec::new();
    for t in a.times()? {
        let state = EvolvedState::preferred(a.direction, m, t, ctrl)?;
        let values: Vec<Complex64> = {
            use rayon::prelude::*;
            z.par_iter().map(|&x| state.eval(x).map(|v| v.value)).collect::<Result<_, _>>()?
        };
        if m == 0 && crate::special_fn::hypergeometric::distance_to_pi_multiple(t) < 1e-14 {
            warn.push(format!("t = {t} is a multiple of π; the initial state limit is reported"));
        }
        rows.extend(z.iter().zip(values).map(|(x, v)| (t, *x, v)));
    }
    Ok(match a.format {
        Format::Csv => {
            let mut s = String::from("t,z,abs2,re,im\n");
            for (t, x, v) in &rows {
                s += &format!("{},{},{},{},{}\n", fmt17(*t), fmt17(*x), fmt17(v.norm_sqr()), fmt17(v.re), fmt17(v.im));
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(t, x, v)| json!({ "t": t, "z": x, "re": v.re, "im": v.im })).collect();
            to_json(&v)?
        }
    })
}

fn evolved_rdm(a: &Common, warn: &mut Warnings) -> Result<crate::observables::ReducedDensityMatrix, Failure> {
    let m = a.check_m()?;
    let t = a.single_time()?;
    let state = EvolvedState::preferred(a.direction, m, t, a.ctrl()?)?;
    let rho = sdm_build(&lab_frame_state(&state, t), a.grid()?)?;
    for w in &rho.warnings {
        warn.push(w.clone());
    }
    Ok(rho)
}

fn run_sdm(a: &Common, out: &Output, warn: &mut Warnings) -> Result<String, Failure> {
    let rho = evolved_rdm(a, warn)?;
    let dec = natural_orbitals(&rho)?;
    Ok(match a.format {
        Format::Csv => {
            out.sidecar("_density.csv", &density_csv(&rho))?;
            out.sidecar("_populations.csv", &populations_csv(&dec))?;
            rdm_csv(&rho)
        }
        Format::Json => to_json(&json!({
            "grid": rho.grid,
            "trace_estimate": rho.trace_estimate,
            "tail_estimate": rho.tail_estimate,
            "z": rho.grid.nodes(),
            "density": rho.density(),
            "populations": dec.populations,
            "re": (0..rho.grid.points).map(|i| (0..rho.grid.points).map(|j| rho.values[(i, j)].re).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "im": (0..rho.grid.points).map(|i| (0..rho.grid.points).map(|j| rho.values[(i, j)].im).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }))?,
    })
}

/// Inner (`k⁻²`) and outer (`k⁻⁴`) slope windows of a momentum tail.
#[derive(Debug, Clone, Serialize)]
pub struct TailReport {
    pub inner: Option<SlopeWindow>,
    pub outer: Option<SlopeWindow>,
}

/// Plateau search on `k ∈ [1, k_max]`: the straight window closest to
/// slope -2, then the one closest to -4 above it.
pub fn tail_report(n: &MomentumDistribution) -> TailReport {
    let kmax = n.k.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let inner = slope_plateau(n, -2.0, (1.0, kmax)).ok();
    let lo = inner.map_or(1.0, |w| w.k_hi);
    let outer = slope_plateau(n, -4.0, (lo, kmax)).ok();
    TailReport { inner, outer }
}

fn run_momentum(a: &Common, out: &Output, warn: &mut Warnings) -> Result<String, Failure> {
    let rho = evolved_rdm(a, warn)?;
    let n = momentum_distribution(&natural_orbitals(&rho.renormalized())?, a.k_max, a.k_points)?;
    if n.clipped > 0 {
        warn.push(format!("{} negative momentum values clipped", n.clipped));
    }
    let tails = tail_report(&n);
    Ok(match a.format {
        Format::Csv => {
            out.sidecar("_tails.json", &to_json(&tails)?)?;
            momentum_csv(&n)
        }
        Format::Json => to_json(&json!({ "momentum": n, "tails": tails }))?,
    })
}

fn run_double_quench(a: &Common) -> Result<String, Failure> {
    let t1 = a.t1.ok_or_else(|| Failure::Usage("double-quench needs --t1".into()))?;
    let scenario = QuenchScenario::double(a.direction, a.m()?, t1)?;
    let ctrl = a.ctrl()?;
    let mut rows = Vec::new();
    for t in a.times()? {
        rows.push((t, double_quench_overlap(&scenario, t, &ctrl)?));
    }
    Ok(match a.format {
        Format::Csv => {
            let mut s = String::from("t,overlap\n");
            for (t, v) in &rows {
                s += &format!("{},{}\n", fmt17(*t), fmt17(*v));
            }
            s
        }
        Format::Json => to_json(&rows.iter().map(|(t, v)| json!({ "t": t, "overlap": v })).collect::<Vec<_>>())?,
    })
}

fn run_reference(r: &ReferenceArgs, out: &Output) -> Result<String, Failure> {
    let a = &r.common;
    let k = MomentumGrid { k_max: a.k_max, points: a.k_points };
    Ok(match reference_state(r.name, a.grid()?, k)? {
        Reference::Rdm(rho) => match a.format {
            Format::Csv => {
                out.sidecar("_density.csv", &density_csv(&rho))?;
                rdm_csv(&rho)
            }
            Format::Json => to_json(&json!({ "z": rho.grid.nodes(), "density": rho.density() }))?,
        },
        Reference::Momentum(n) => match a.format {
            Format::Csv => momentum_csv(&n),
            Format::Json => to_json(&n)?,
        },
    })
}

fn run_verify(a: &Common, warn: &mut Warnings) -> Result<String, Failure> {
    let reports = verify_suite(&a.ctrl()?)?;
    let mut s = String::new();
    for r in &reports {
        s += &serde_json::to_string(r).map_err(|e| Failure::Usage(e.to_string()))?;
        s.push('\n');
        if !r.pass {
            warn.push(format!("check {} failed: sup error {:.3e} above {:.1e}", r.check, r.sup_error, r.tolerance));
        }
    }
    Ok(s)
}

fn dispatch(cli: Cli) -> Result<(bool, Warnings), Failure> {
    let mut warn = Warnings::default();
    let (common, body) = match &cli.command {
        Command::Fidelity(a) => (a, None),
        Command::Wavefunction(a) => (a, None),
        Command::Sdm(a) => (a, None),
        Command::Momentum(a) => (a, None),
        Command::DoubleQuench(a) => (a, None),
        Command::Reference(r) => (&r.common, Some(r)),
        Command::Verify(a) => (a, None),
    };
    let out = Output { path: common.out.clone() };
    let text = match &cli.command {
        Command::Fidelity(a) => run_fidelity(a, &mut warn)?,
        Command::Wavefunction(a) => run_wavefunction(a, &mut warn)?,
        Command::Sdm(a) => run_sdm(a, &out, &mut warn)?,
        Command::Momentum(a) => run_momentum(a, &out, &mut warn)?,
        Command::DoubleQuench(a) => run_double_quench(a)?,
        Command::Reference(_) => run_reference(body.expect("reference args"), &out)?,
        Command::Verify(a) => run_verify(a, &mut warn)?,
    };
    out.write(&text)?;
    Ok((common.strict, warn))
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            diagnostic(json!({ "error": "usage", "message": e.to_string().trim_end() }));
            return EXIT_USAGE;
        }
    };
    match dispatch(cli) {
        Ok((strict, warn)) => {
            if strict && !warn.0.is_empty() {
                EXIT_ACCURACY
            } else {
                EXIT_OK
            }
        }
        Err(f) => {
            diagnostic(json!({ "error": f.kind(), "message": f.message() }));
            f.code()
        }
    }
}
