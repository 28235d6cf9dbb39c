//! Command-line front end: reads state files, calls into `pairspace`, and
//! writes JSON or CSV reports.
//!
//! Exit codes: 0 success, 2 invalid input or arguments, 3 a solver failed to
//! converge, 1 an output could not be written.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pairspace::collinear::{self, BoundBracket, CollinearSolution, EffectiveMode, MoultonOptions};
use pairspace::dynamics::{self, IntegratorOptions, Method};
use pairspace::io::{write_trajectory_csv, StateFile};
use pairspace::{central, dziobek, pairs_from_particles, Error, MassVector, SystemState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const TOOL_NAME: &str = "pairspace";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::NonConvergence { .. } | Error::NoSignChange { .. }) => EXIT_NONCONVERGENCE,
            CliError::Write { .. } => EXIT_IO,
            _ => EXIT_INVALID,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser, Serialize)]
#[command(name = "pairspace", version, about = "Pair-space N-body central configuration toolkit")]
pub struct Cli {
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Test a state for centrality and classify it.
    Classify(ClassifyArgs),
    /// Solve for the collinear central configuration of a mass ordering.
    SolveCollinear(SolveArgs),
    /// Bounds on the collinear ratios for a mass ordering.
    Bounds(BoundsArgs),
    /// Evaluate the mass-independent determinant relations of a shape.
    Dziobek(DziobekArgs),
    /// Integrate a state and report pair conservation.
    Simulate(SimulateArgs),
    /// Solve collinear configurations over a batch of mass sets.
    Sweep(SweepArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ClassifyArgs {
    /// State file (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Threshold on the dimensionless centrality residuals.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct MassSource {
    /// Comma-separated masses, e.g. `1,2,3`.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "input")]
    pub masses: Option<Vec<f64>>,
    /// State file whose masses are used.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Body numbers (from 1) in line order, e.g. `2,1,3`; identity when absent.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub ordering: Option<Vec<usize>>,
}

#[derive(Debug, Args, Serialize)]
pub struct SolveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: MassSource,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Target for max |residual| / M.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 100)]
    pub max_iterations: usize,
    /// Solve every distinct ordering (up to mirror images); N ≤ 7.
    #[arg(long)]
    pub all_orderings: bool,
    /// Also write samples of E, E*_N and E*_3 to this CSV file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Sample range for the CSV, `lo,hi`.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0.05, 5.0])]
    pub csv_range: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    pub csv_samples: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: MassSource,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DziobekArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Threshold on the scaled determinants.
    #[arg(long, default_value_t = dziobek::DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Number of probe directions.
    #[arg(long, default_value_t = dziobek::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = dziobek::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    Rk4,
    Adaptive,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Trajectory CSV path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Output interval (the step for rk4).
    #[arg(long)]
    pub dt: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Rk4)]
    pub method: MethodArg,
    /// Local error tolerance for the adaptive method.
    #[arg(long, default_value_t = 1e-10)]
    pub adaptive_tol: f64,
    /// Stop when a pair gets closer than this fraction of the initial
    /// minimum separation.
    #[arg(long, default_value_t = 1e-3)]
    pub collision_fraction: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    /// Number of bodies on the line.
    #[arg(long, default_value_t = 3)]
    pub bodies: usize,
    /// Random mass sets to draw (ignored with --grid).
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Log-spaced grid with this many values per free mass (m1 = 1).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Mass range `lo,hi` for sampling, log-uniform.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0.1, 10.0])]
    pub mass_range: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// CSV path; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command; `Ok` carries the exit code of a completed run.
pub fn run(cli: &Cli) -> CliResult<i32> {
    let config = serde_json::to_value(cli).expect("arguments serialize");
    match &cli.command {
        Command::Classify(a) => classify(a, config),
        Command::SolveCollinear(a) => solve(a, config),
        Command::Bounds(a) => bounds(a, config),
        Command::Dziobek(a) => dziobek_cmd(a, config),
        Command::Simulate(a) => simulate(a, config),
        Command::Sweep(a) => sweep(a),
    }
}

fn envelope(config: Value, result: Value) -> Value {
    json!({
        "tool": { "name": TOOL_NAME, "version": TOOL_VERSION },
        "config": config,
        "result": result,
    })
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    let write_err = |source| CliError::Write {
        path: path.map_or_else(|| "stdout".to_string(), |p| p.display().to_string()),
        source,
    };
    match path {
        Some(p) => fs::write(p, text).map_err(write_err),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(write_err),
    }
}

fn emit_json(path: Option<&Path>, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    emit(path, &text)
}

fn positive(name: &str, v: f64) -> CliResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("--{name} must be positive, got {v}")))
    }
}

fn load_state(path: &Path) -> CliResult<(MassVector<f64>, SystemState<f64>)> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(StateFile::<f64>::parse(&text, &path.display().to_string())?.into_system()?)
}

fn load_masses(src: &MassSource) -> CliResult<MassVector<f64>> {
    match (&src.masses, &src.input) {
        (Some(m), _) => Ok(MassVector::new(m.clone())?),
        (None, Some(path)) => Ok(load_state(path)?.0),
        (None, None) => Err(CliError::Invalid("give --masses or --input".into())),
    }
}

/// 0-based ordering from 1-based body numbers.
fn resolve_ordering(ordering: &Option<Vec<usize>>, n: usize) -> CliResult<Vec<usize>> {
    match ordering {
        None => Ok((0..n).collect()),
        Some(o) => {
            if o.iter().any(|&b| b == 0) {
                return Err(CliError::Invalid("--ordering uses body numbers starting at 1".into()));
            }
            let zero: Vec<usize> = o.iter().map(|b| b - 1).collect();
            pairspace::pairs::check_permutation(&zero, n)?;
            Ok(zero)
        }
    }
}

fn one_based(ordering: &[usize]) -> Vec<usize> {
    ordering.iter().map(|b| b + 1).collect()
}

fn classify(a: &ClassifyArgs, config: Value) -> CliResult<i32> {
    positive("tol", a.tol)?;
    let (mv, state) = load_state(&a.input)?;
    let state = state.into_barycentric(&mv)?;
    let (class, report) = central::classify(&mv, &state, a.tol)?;
    let pc = pairs_from_particles(&state).configuration;
    let residuals: Vec<Value> = report
        .residuals
        .iter()
        .map(|r| {
            json!({
                "pair": [r.i + 1, r.j + 1],
                "residual": r.residual.to_array(),
                "scaled": r.scaled,
            })
        })
        .collect();
    let result = json!({
        "verdict": class.as_str(),
        "central": report.is_central(),
        "lambda": report.lambda,
        "fitted_lambda": report.fitted_lambda,
        "lambda_residual": report.lambda_residual,
        "max_residual": report.max_residual,
        "residuals": residuals,
        "collinear": report.collinear,
        "collinearity": central::collinearity(&pc),
        "fixed_line": report.fixed_line,
        "tolerance": report.tolerance,
    });
    emit_json(a.output.as_deref(), &envelope(config, result))?;
    Ok(EXIT_OK)
}

fn bracket_json(b: &BoundBracket<f64>, value: f64) -> Value {
    let mut v = serde_json::to_value(b).expect("bracket serializes");
    v["slack"] = json!(b.slack(value));
    v
}

fn solution_json(sol: &CollinearSolution<f64>) -> CliResult<Value> {
    let mv = sol.mass_vector();
    let beta_star = collinear::beta_star(&mv)?;
    let alpha_star = collinear::alpha_star(&mv)?;
    let length = collinear::length_bound(&mv)?;
    let alpha_bound = collinear::alpha_bound(&mv)?;
    let margins = sol.h_sign_margins();
    let three = if sol.len() == 3 {
        bracket_json(&collinear::three_body_bracket(&mv)?, sol.alpha)
    } else {
        Value::Null
    };
    Ok(json!({
        "ordering": one_based(&sol.ordering),
        "masses": sol.masses,
        "x": sol.x,
        "alpha": sol.alpha,
        "beta": sol.beta,
        "length_ratio": sol.length_ratio,
        "residual_norm": sol.residual_norm,
        "iterations": sol.iterations,
        "continuation": sol.continuation,
        "omega_squared_unit_q12": sol.lambda(1.0),
        "beta_star": beta_star,
        "alpha_star": alpha_star,
        "beta_star_slack": sol.beta - beta_star,
        "alpha_star_slack": alpha_star - sol.alpha,
        "length_bound": bracket_json(&length, sol.length_ratio),
        "alpha_bound": bracket_json(&alpha_bound, sol.alpha),
        "three_body_bracket": three,
        "h_sign_margins": margins,
    }))
}

fn solve(a: &SolveArgs, config: Value) -> CliResult<i32> {
    positive("tol", a.tol)?;
    if a.max_iterations == 0 {
        return Err(CliError::Invalid("--max-iterations must be positive".into()));
    }
    let mv = load_masses(&a.source)?;
    let options = MoultonOptions {
        tolerance: a.tol,
        max_iterations: a.max_iterations,
        initial: None,
    };
    let solutions = if a.all_orderings {
        if a.source.ordering.is_some() {
            return Err(CliError::Invalid("--ordering conflicts with --all-orderings".into()));
        }
        if mv.len() > collinear::MAX_ENUMERATED_BODIES {
            return Err(CliError::Invalid(format!(
                "--all-orderings supports at most {} bodies",
                collinear::MAX_ENUMERATED_BODIES
            )));
        }
        collinear::distinct_orderings(mv.len())
            .iter()
            .map(|o| collinear::solve_moulton_with(&mv, o, &options))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let ordering = resolve_ordering(&a.source.ordering, mv.len())?;
        vec![collinear::solve_moulton_with(&mv, &ordering, &options)?]
    };
    if let Some(path) = &a.csv {
        let slots = solutions[0].mass_vector();
        let text = e_function_csv(&slots, &a.csv_range, a.csv_samples)?;
        emit(Some(path), &text)?;
    }
    let result = if a.all_orderings {
        Value::Array(solutions.iter().map(solution_json).collect::<CliResult<_>>()?)
    } else {
        solution_json(&solutions[0])?
    };
    emit_json(a.output.as_deref(), &envelope(config, result))?;
    Ok(EXIT_OK)
}

/// Samples of the three-body function of the first three slots and the two
/// effective functions: columns `x,E,E_N_star,E_3_star`.
pub fn e_function_csv(slots: &MassVector<f64>, range: &[f64], samples: usize) -> CliResult<String> {
    let (lo, hi) = match range {
        &[lo, hi] if lo > 0.0 && hi > lo && hi.is_finite() => (lo, hi),
        _ => return Err(CliError::Invalid("--csv-range needs 0 < lo < hi".into())),
    };
    if samples < 2 {
        return Err(CliError::Invalid("--csv-samples must be at least 2".into()));
    }
    let m = slots.masses();
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Invalid(e.to_string());
    w.write_record(["x", "E", "E_N_star", "E_3_star"]).map_err(csv_err)?;
    for s in 0..samples {
        let x = lo + (hi - lo) * s as f64 / (samples - 1) as f64;
        let e = collinear::euler_e(x, m[0], m[1], m[2])?;
        let en = collinear::effective_e(x, slots, EffectiveMode::Beta)?;
        let e3 = collinear::effective_e(x, slots, EffectiveMode::Alpha)?;
        w.write_record([x, e, en, e3].map(|v| format!("{v:?}"))).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn bounds(a: &BoundsArgs, config: Value) -> CliResult<i32> {
    let mv = load_masses(&a.source)?;
    if mv.len() < 3 {
        return Err(CliError::Invalid("bounds need at least 3 bodies".into()));
    }
    let ordering = resolve_ordering(&a.source.ordering, mv.len())?;
    let slots = mv.permuted(&ordering)?;
    let three = if slots.len() == 3 {
        let roots: Vec<Value> = (0..3)
            .map(|k| {
                collinear::quartic_bound_roots(&slots, k)
                    .map(|(sigma, tau)| json!({ "slot": k + 1, "sigma": sigma, "tau": tau }))
            })
            .collect::<Result<_, _>>()?;
        json!({
            "bracket": collinear::three_body_bracket(&slots)?,
            "quartic_roots": roots,
        })
    } else {
        Value::Null
    };
    let result = json!({
        "ordering": one_based(&ordering),
        "masses": slots.masses(),
        "length_bound": collinear::length_bound(&slots)?,
        "alpha_bound": collinear::alpha_bound(&slots)?,
        "beta_star": collinear::beta_star(&slots)?,
        "alpha_star": collinear::alpha_star(&slots)?,
        "three_body": three,
    });
    emit_json(a.output.as_deref(), &envelope(config, result))?;
    Ok(EXIT_OK)
}

fn dziobek_cmd(a: &DziobekArgs, config: Value) -> CliResult<i32> {
    if !(a.tol >= 0.0) {
        return Err(CliError::Invalid("--tol must be non-negative".into()));
    }
    if a.trials == 0 {
        return Err(CliError::Invalid("--trials must be positive".into()));
    }
    let (_, state) = load_state(&a.input)?;
    let pc = pairs_from_particles(&state).configuration;
    let report = dziobek::shape_admissible(&pc, a.trials, a.tol, a.seed)?;
    let products = if pc.n() == 4 {
        json!(dziobek::dziobek_products(&pc)?)
    } else {
        Value::Null
    };
    let mut result = serde_json::to_value(&report).expect("report serializes");
    result["dziobek_products"] = products;
    emit_json(a.output.as_deref(), &envelope(config, result))?;
    Ok(EXIT_OK)
}

fn simulate(a: &SimulateArgs, config: Value) -> CliResult<i32> {
    positive("dt", a.dt)?;
    positive("collision-fraction", a.collision_fraction)?;
    if a.steps == 0 {
        return Err(CliError::Invalid("--steps must be positive".into()));
    }
    let (mv, state) = load_state(&a.input)?;
    let state = state.into_barycentric(&mv)?;
    let g = state.gravitational_constant;
    let method = match a.method {
        MethodArg::Rk4 => Method::Rk4,
        MethodArg::Adaptive => {
            positive("adaptive-tol", a.adaptive_tol)?;
            Method::Adaptive { tol: a.adaptive_tol }
        }
    };
    let options = IntegratorOptions {
        method,
        collision_fraction: a.collision_fraction,
    };
    let traj = dynamics::integrate(&mv, &state, a.dt, a.steps, options)?;
    if let Some(path) = &a.csv {
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &mut buf).expect("writing to memory");
        emit(Some(path), &String::from_utf8(buf).expect("csv output is utf-8"))?;
    }
    let report = dynamics::conservation_report(&mv, &traj, g)?;
    let pc = pairs_from_particles(&state).configuration;
    let (fitted, lambda_residual) = central::fit_lambda(&mv, &pc, g)?;
    let drifts: Vec<Value> = report
        .pair_l_drift
        .iter()
        .map(|d| json!({ "pair": [d.i + 1, d.j + 1], "drift": d.drift }))
        .collect();
    let termination = traj.termination.as_ref().map(|t| {
        json!({ "time": t.time, "reason": t.error.to_string() })
    });
    let result = json!({
        "samples": report.samples,
        "final_time": traj.times.last().copied().unwrap_or(0.0),
        "complete": traj.is_complete(),
        "termination": termination,
        "pair_L_drift": drifts,
        "max_pair_L_drift": report.max_pair_l_drift(),
        "total_L_drift": report.total_l_drift,
        "energy_drift": report.energy_drift,
        "initial_fitted_lambda": fitted,
        "initial_lambda_residual": lambda_residual,
    });
    emit_json(a.output.as_deref(), &envelope(config, result))?;
    Ok(EXIT_OK)
}

/// One sweep row.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub masses: Vec<f64>,
    pub outcome: Result<SweepValues, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepValues {
    pub alpha: f64,
    pub beta: f64,
    pub length_ratio: f64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub beta_star: f64,
    pub alpha_star: f64,
    pub length_lower: f64,
    pub alpha_upper: f64,
    pub three_lower: Option<f64>,
    pub three_upper: Option<f64>,
    pub h_first_margin: f64,
    pub h_far_margin: f64,
    pub bounds_hold: bool,
}

/// Mass sets for a sweep, in output order.
pub fn sweep_masses(a: &SweepArgs) -> CliResult<Vec<Vec<f64>>> {
    if a.bodies < 3 {
        return Err(CliError::Invalid("--bodies must be at least 3".into()));
    }
    let (lo, hi) = match a.mass_range[..] {
        [lo, hi] if lo > 0.0 && hi >= lo && hi.is_finite() => (lo, hi),
        _ => return Err(CliError::Invalid("--mass-range needs 0 < lo ≤ hi".into())),
    };
    let (llo, lhi) = (lo.ln(), hi.ln());
    match a.grid {
        Some(k) => {
            if k == 0 {
                return Err(CliError::Invalid("--grid must be positive".into()));
            }
            let free = a.bodies - 1;
            let count = k
                .checked_pow(free as u32)
                .filter(|&c| c <= 1_000_000)
                .ok_or_else(|| CliError::Invalid("grid too large".into()))?;
            let level = |i: usize| {
                if k == 1 {
                    lo
                } else {
                    (llo + (lhi - llo) * i as f64 / (k - 1) as f64).exp()
                }
            };
            Ok((0..count)
                .map(|mut c| {
                    let mut m = vec![1.0];
                    for _ in 0..free {
                        m.push(level(c % k));
                        c /= k;
                    }
                    m
                })
                .collect())
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            Ok((0..a.samples)
                .map(|_| (0..a.bodies).map(|_| rng.gen_range(llo..=lhi).exp()).collect())
                .collect())
        }
    }
}

fn sweep_one(masses: &[f64], tol: f64) -> Result<SweepValues, Error> {
    let mv = MassVector::new(masses.to_vec())?;
    let ordering: Vec<usize> = (0..mv.len()).collect();
    let options = MoultonOptions {
        tolerance: tol,
        ..MoultonOptions::default()
    };
    let sol = collinear::solve_moulton_with(&mv, &ordering, &options)?;
    let beta_star = collinear::beta_star(&mv)?;
    let alpha_star = collinear::alpha_star(&mv)?;
    let length = collinear::length_bound(&mv)?;
    let alpha_bound = collinear::alpha_bound(&mv)?;
    let three = (mv.len() == 3).then(|| collinear::three_body_bracket(&mv)).transpose()?;
    let margins = sol.h_sign_margins();
    let slack = -1e-9;
    let mut hold = sol.beta - beta_star >= slack
        && alpha_star - sol.alpha >= slack
        && length.slack(sol.length_ratio) >= slack
        && alpha_bound.slack(sol.alpha) >= slack
        && margins.first_pair > 0.0
        && margins.far_pair >= 0.0;
    if let Some(b) = &three {
        hold &= b.slack(sol.alpha) >= slack;
    }
    Ok(SweepValues {
        alpha: sol.alpha,
        beta: sol.beta,
        length_ratio: sol.length_ratio,
        residual_norm: sol.residual_norm,
        iterations: sol.iterations,
        beta_star,
        alpha_star,
        length_lower: length.lower.unwrap_or(f64::NAN),
        alpha_upper: alpha_bound.upper.unwrap_or(f64::NAN),
        three_lower: three.and_then(|b| b.lower),
        three_upper: three.and_then(|b| b.upper),
        h_first_margin: margins.first_pair,
        h_far_margin: margins.far_pair,
        bounds_hold: hold,
    })
}

/// Solves every mass set in parallel; rows come back in input order.
pub fn sweep_rows(a: &SweepArgs) -> CliResult<Vec<SweepRow>> {
    positive("tol", a.tol)?;
    let sets = sweep_masses(a)?;
    Ok(sets
        .into_par_iter()
        .enumerate()
        .map(|(index, masses)| {
            let outcome = sweep_one(&masses, a.tol).map_err(|e| e.to_string());
            SweepRow { index, masses, outcome }
        })
        .collect())
}

/// CSV columns: `index, m1..mN, status, alpha, beta, length_ratio,
/// residual_norm, iterations, beta_star, alpha_star, length_lower,
/// alpha_upper, three_lower, three_upper, h_first_margin, h_far_margin,
/// bounds_hold`.
pub fn sweep_csv(rows: &[SweepRow], bodies: usize) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Invalid(e.to_string());
    let mut header = vec!["index".to_string()];
    header.extend((1..=bodies).map(|k| format!("m{k}")));
    for h in [
        "status",
        "alpha",
        "beta",
        "length_ratio",
        "residual_norm",
        "iterations",
        "beta_star",
        "alpha_star",
        "length_lower",
        "alpha_upper",
        "three_lower",
        "three_upper",
        "h_first_margin",
        "h_far_margin",
        "bounds_hold",
    ] {
        header.push(h.to_string());
    }
    w.write_record(&header).map_err(csv_err)?;
    let f = |v: f64| format!("{v:?}");
    let opt = |v: Option<f64>| v.map(f).unwrap_or_default();
    for row in rows {
        let mut rec = vec![row.index.to_string()];
        rec.extend(row.masses.iter().map(|&m| f(m)));
        match &row.outcome {
            Ok(v) => {
                rec.push("ok".into());
                rec.extend([
                    f(v.alpha),
                    f(v.beta),
                    f(v.length_ratio),
                    f(v.residual_norm),
                    v.iterations.to_string(),
                    f(v.beta_star),
                    f(v.alpha_star),
                    f(v.length_lower),
                    f(v.alpha_upper),
                    opt(v.three_lower),
                    opt(v.three_upper),
                    f(v.h_first_margin),
                    f(v.h_far_margin),
                    v.bounds_hold.to_string(),
                ]);
            }
            Err(e) => {
                rec.push(format!("error: {e}"));
                rec.extend(std::iter::repeat(String::new()).take(14));
            }
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn sweep(a: &SweepArgs) -> CliResult<i32> {
    let rows = sweep_rows(a)?;
    emit(a.output.as_deref(), &sweep_csv(&rows, a.bodies)?)?;
    let failed = rows.iter().any(|r| r.outcome.is_err());
    Ok(if failed { EXIT_NONCONVERGENCE } else { EXIT_OK })
}
