//! Command-line front end shared by the `fskan` binary and the tests.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use thiserror::Error;

use crate::io::{decimal, emit_convergence, emit_matrix, emit_profile, Format};
use crate::ode::DEFAULT_STEPS;
use crate::optim::{Algorithm, OptimizerConfig, SearchBounds};
use crate::problem::WedgeParams;
use crate::reference;
use crate::regress::regress;
use crate::shooting::{run_case_matrix, solve, SolveError, SolveOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REGRESSION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fskan", version, about = "Falkner-Skan boundary layers by RK4 shooting and population-based optimizers")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Solve one regime and write its profile (csv) or full report (json).
    Solve(CaseArgs),
    /// Solve one regime and write the best-fitness history.
    Convergence(CaseArgs),
    /// Solve every reference regime with one or more optimizers.
    Matrix(MatrixArgs),
    /// Compare solved regimes with the embedded reference data.
    Regress(RegressArgs),
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Population size.
    #[arg(long, default_value_t = 20)]
    pop: usize,
    /// Iterations (generations, or hyperband sweeps).
    #[arg(long, default_value_t = 100)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// RK4 steps per fitness evaluation.
    #[arg(long, default_value_t = DEFAULT_STEPS, value_parser = parse_steps)]
    steps: usize,
    /// Search box as `alpha_lo,alpha_hi,eta_lo,eta_hi`.
    #[arg(long, default_value = "0,3,1,12", value_parser = parse_bounds)]
    bounds: SearchBounds,
}

#[derive(Debug, Args)]
struct CaseArgs {
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    beta0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, default_value = "jaya")]
    optimizer: Algorithm,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Output path; `-` for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    /// Comma-separated optimizers.
    #[arg(long, value_delimiter = ',', default_value = "jaya,pso,ga,hyperband")]
    optimizer: Vec<Algorithm>,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RegressArgs {
    #[arg(long, default_value = "jaya")]
    optimizer: Algorithm,
    #[command(flatten)]
    search: SearchArgs,
    /// Also write the report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_steps(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_bounds(s: &str) -> Result<SearchBounds, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != 4 {
        return Err(format!("expected 4 comma-separated numbers, got {}", v.len()));
    }
    if v[2] <= 0.0 {
        return Err("eta_inf lower bound must be > 0".into());
    }
    SearchBounds::new(vec![v[0], v[2]], vec![v[1], v[3]]).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Solve { params: WedgeParams },
    Convergence { params: WedgeParams },
    Matrix { algorithms: Vec<Algorithm> },
    Regress,
}

/// A validated request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub options: SolveOptions,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunSpec {
    /// Where output goes when `--out` is absent.
    pub fn default_output(&self) -> Option<PathBuf> {
        let alg = self.options.algorithm;
        let name = |p: &WedgeParams, suffix: &str, ext: &str| {
            PathBuf::from(format!("fs_b0{}_b{}_{alg}{suffix}.{ext}", decimal(p.beta0), decimal(p.beta)))
        };
        match &self.command {
            Command::Solve { params } => Some(name(params, "", self.format.extension())),
            Command::Convergence { params } => Some(name(params, "_convergence", "csv")),
            Command::Matrix { .. } => Some(PathBuf::from("fs_matrix.csv")),
            Command::Regress => None,
        }
    }

    pub fn output(&self) -> Option<PathBuf> {
        self.out.clone().or_else(|| self.default_output())
    }
}

fn options(search: SearchArgs, algorithm: Algorithm) -> Result<SolveOptions, clap::Error> {
    let optimizer = OptimizerConfig {
        population_size: search.pop,
        max_iterations: search.iters,
        seed: search.seed,
        ..OptimizerConfig::default()
    };
    optimizer
        .validate()
        .map_err(|e| Cli::command().error(ErrorKind::ValueValidation, e.to_string()))?;
    Ok(SolveOptions {
        algorithm,
        optimizer,
        bounds: search.bounds,
        n_steps: search.steps,
        ..SolveOptions::default()
    })
}

/// Parse and validate `argv` (program name first).
pub fn parse_args<I, T>(argv: I) -> Result<RunSpec, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let case = |a: &CaseArgs| -> Result<WedgeParams, clap::Error> {
        let p = WedgeParams::new(a.beta0, a.beta);
        if !p.is_finite() {
            return Err(Cli::command().error(ErrorKind::ValueValidation, "--beta0 and --beta must be finite"));
        }
        Ok(p)
    };
    Ok(match cli.command {
        Cmd::Solve(a) => RunSpec {
            command: Command::Solve { params: case(&a)? },
            format: a.format,
            out: a.out,
            options: options(a.search, a.optimizer)?,
        },
        Cmd::Convergence(a) => RunSpec {
            command: Command::Convergence { params: case(&a)? },
            format: Format::Csv,
            out: a.out,
            options: options(a.search, a.optimizer)?,
        },
        Cmd::Matrix(a) => {
            let first = a.optimizer.first().copied().unwrap_or(Algorithm::Jaya);
            RunSpec {
                command: Command::Matrix { algorithms: a.optimizer },
                format: Format::Csv,
                out: a.out,
                options: options(a.search, first)?,
            }
        }
        Cmd::Regress(a) => RunSpec {
            command: Command::Regress,
            format: Format::Csv,
            out: a.out,
            options: options(a.search, a.optimizer)?,
        },
    })
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

fn write_to<F>(path: &Path, emit: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let wrap = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    if path.as_os_str() == "-" {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        emit(&mut lock).and_then(|_| lock.flush()).map_err(wrap)
    } else {
        let file = File::create(path).map_err(wrap)?;
        let mut w = BufWriter::new(file);
        emit(&mut w).and_then(|_| w.flush()).map_err(wrap)
    }
}

/// Execute a request. Returns the process exit code. Progress messages go to
/// `log`; the regression report goes to stdout.
pub fn run<L: Write>(spec: &RunSpec, log: &mut L) -> Result<i32, CliError> {
    let out = spec.output();
    match &spec.command {
        Command::Solve { params } => {
            let report = solve(params, &spec.options)?;
            let path = out.expect("solve has a default path");
            write_to(&path, |w| emit_profile(&report, spec.format, w))?;
            let _ = writeln!(
                log,
                "alpha = {} eta_inf = {} residual = {:e} -> {}",
                decimal(report.best.alpha),
                decimal(report.best.eta_inf),
                report.residual,
                path.display()
            );
        }
        Command::Convergence { params } => {
            let report = solve(params, &spec.options)?;
            let path = out.expect("convergence has a default path");
            write_to(&path, |w| emit_convergence(&report.history, w))?;
            let _ = writeln!(log, "{} iterations -> {}", report.history.len(), path.display());
        }
        Command::Matrix { algorithms } => {
            let rows = reference::embedded().regimes();
            let table = run_case_matrix(&rows, algorithms, &spec.options)?;
            let path = out.expect("matrix has a default path");
            write_to(&path, |w| emit_matrix(&table, w))?;
            let failed = table
                .iter()
                .flat_map(|r| &r.cells)
                .filter(|c| c.outcome.is_err())
                .count();
            let _ = writeln!(log, "{} cells ({failed} failed) -> {}", rows.len() * algorithms.len(), path.display());
            if failed > 0 {
                return Ok(EXIT_RUNTIME);
            }
        }
        Command::Regress => {
            let rep = regress(reference::embedded(), spec.options.algorithm, &spec.options);
            let text = rep.to_string();
            write_to(Path::new("-"), |w| writeln!(w, "{text}"))?;
            if let Some(path) = &out {
                write_to(path, |w| writeln!(w, "{text}"))?;
            }
            if !rep.passed() {
                return Ok(EXIT_REGRESSION);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let spec = match parse_args(argv) {
        Ok(s) => s,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut stderr = io::stderr();
    match run(&spec, &mut stderr) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}
