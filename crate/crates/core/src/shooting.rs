//! The hybrid solver: RK4 shooting scored by a boundary-residual fitness,
//! minimized over `(alpha, eta_inf)` by one of the population optimizers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ode::DEFAULT_STEPS;
use crate::optim::{optimize, Algorithm, ConvergenceHistory, Fidelity, Objective, OptimError, OptimizerConfig, SearchBounds};
use crate::problem::{boundary_residual, physical_profile, shoot, Candidate, ProblemError, ProfileSample, WedgeParams};

/// Steps used to re-integrate the optimum for the report.
pub const REPORT_STEPS: usize = 4000;
/// Coarsest step count used for low-fidelity evaluations.
pub const MIN_FIDELITY_STEPS: usize = 50;
/// Independent seeds tried for decelerating (`beta < 0`) regimes.
pub const DECELERATING_RESTARTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Optim(#[from] OptimError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("invalid wedge parameters (beta0 = {beta0}, beta = {beta})")]
    InvalidParams { beta0: f64, beta: f64 },
    #[error("search bounds must be two-dimensional (alpha, eta_inf) with eta_inf > 0")]
    InvalidSearchSpace,
    #[error("step counts must be >= 1")]
    InvalidSteps,
    #[error("case matrix needs at least one row")]
    EmptyMatrix,
}

/// Euclidean norm of the far-field residual after shooting with `c`.
///
/// Invalid candidates and diverging integrations score `+inf`.
pub fn fitness(c: &Candidate, p: &WedgeParams, n_steps: usize) -> f64 {
    match shoot(c, p, n_steps, false) {
        Ok(run) => {
            let (r1, r2) = boundary_residual(&run.final_state);
            let v = r1.hypot(r2);
            if v.is_finite() {
                v
            } else {
                f64::INFINITY
            }
        }
        Err(_) => f64::INFINITY,
    }
}

/// [`fitness`] as an optimizer objective over `[alpha, eta_inf]`.
///
/// Reduced fidelity maps linearly onto step counts between
/// [`MIN_FIDELITY_STEPS`] and `n_steps`.
#[derive(Debug, Clone, Copy)]
pub struct ShootingObjective {
    pub params: WedgeParams,
    pub n_steps: usize,
}

impl ShootingObjective {
    pub fn steps_for(&self, fidelity: Fidelity) -> usize {
        if self.n_steps <= MIN_FIDELITY_STEPS || fidelity.is_full() {
            return self.n_steps;
        }
        let span = (self.n_steps - MIN_FIDELITY_STEPS) as f64;
        MIN_FIDELITY_STEPS + (fidelity.fraction() * span).round() as usize
    }
}

impl Objective for ShootingObjective {
    fn evaluate(&self, x: &[f64]) -> f64 {
        fitness(&Candidate::from_point(x), &self.params, self.n_steps)
    }

    fn evaluate_at(&self, x: &[f64], fidelity: Fidelity) -> f64 {
        fitness(&Candidate::from_point(x), &self.params, self.steps_for(fidelity))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub optimizer: OptimizerConfig,
    pub bounds: SearchBounds,
    /// Steps per fitness evaluation during the search.
    pub n_steps: usize,
    /// Steps for the final re-integration.
    pub report_steps: usize,
    /// Record the profile at the optimum.
    pub record_profile: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Jaya,
            optimizer: OptimizerConfig::default(),
            bounds: SearchBounds::falkner_skan_default(),
            n_steps: DEFAULT_STEPS,
            report_steps: REPORT_STEPS,
            record_profile: true,
        }
    }
}

impl SolveOptions {
    pub fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.optimizer.seed = seed;
        self
    }
}

/// Run settings echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub optimizer: Algorithm,
    pub seed: u64,
    /// Seed of the restart that produced the reported optimum.
    pub winning_seed: u64,
    pub restarts: usize,
    pub n_steps: usize,
    pub report_steps: usize,
    pub population_size: usize,
    pub max_iterations: usize,
    pub bounds: SearchBounds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub params: WedgeParams,
    pub best: Candidate,
    /// Fitness of `best` at `config.report_steps`.
    pub residual: f64,
    pub history: ConvergenceHistory,
    pub profile: Vec<ProfileSample>,
    pub config: ConfigEcho,
}

/// Restart count for a regime: several seeds when the flow decelerates.
pub fn restarts_for(p: &WedgeParams) -> usize {
    if p.beta < 0.0 {
        DECELERATING_RESTARTS
    } else {
        1
    }
}

fn check_inputs(p: &WedgeParams, opts: &SolveOptions) -> Result<(), SolveError> {
    if !p.is_finite() {
        return Err(SolveError::InvalidParams {
            beta0: p.beta0,
            beta: p.beta,
        });
    }
    if opts.bounds.dim() != 2 || opts.bounds.lo()[1] <= 0.0 {
        return Err(SolveError::InvalidSearchSpace);
    }
    if opts.n_steps == 0 || opts.report_steps == 0 {
        return Err(SolveError::InvalidSteps);
    }
    opts.optimizer.validate()?;
    Ok(())
}

/// Find `(alpha, eta_inf)` for one regime and package the result.
pub fn solve(p: &WedgeParams, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    check_inputs(p, opts)?;
    let objective = ShootingObjective {
        params: *p,
        n_steps: opts.n_steps,
    };
    let restarts = restarts_for(p);

    let mut winner: Option<(u64, crate::optim::OptimizeResult)> = None;
    for k in 0..restarts {
        let seed = opts.optimizer.seed.wrapping_add(k as u64);
        let cfg = opts.optimizer.clone().with_seed(seed);
        let res = optimize(&objective, &opts.bounds, &cfg, opts.algorithm)?;
        let better = match &winner {
            None => true,
            Some((_, prev)) => res.best_fitness < prev.best_fitness,
        };
        if better {
            winner = Some((seed, res));
        }
    }
    let (winning_seed, res) = winner.expect("at least one restart");

    let best = Candidate::from_point(&res.best);
    let run = shoot(&best, p, opts.report_steps, opts.record_profile)?;
    let (r1, r2) = boundary_residual(&run.final_state);
    let profile = physical_profile(&run.trajectory, &best);

    Ok(SolveReport {
        params: *p,
        best,
        residual: r1.hypot(r2),
        history: res.history,
        profile,
        config: ConfigEcho {
            optimizer: opts.algorithm,
            seed: opts.optimizer.seed,
            winning_seed,
            restarts,
            n_steps: opts.n_steps,
            report_steps: opts.report_steps,
            population_size: opts.optimizer.population_size,
            max_iterations: opts.optimizer.max_iterations,
            bounds: opts.bounds.clone(),
        },
    })
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for matrix cell `(row, algorithm)` derived from a base seed.
pub fn cell_seed(base: u64, row: usize, algorithm: usize) -> u64 {
    mix64(base ^ mix64(((row as u64) << 16) | algorithm as u64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCell {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub outcome: Result<SolveReport, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRow {
    pub params: WedgeParams,
    pub cells: Vec<MatrixCell>,
}

/// One solve per `(row, algorithm)`, in the given order.
///
/// Cells run concurrently, each with its own seed from [`cell_seed`]. A
/// failing cell records its error and does not stop the others.
pub fn run_case_matrix(
    rows: &[WedgeParams],
    algorithms: &[Algorithm],
    opts: &SolveOptions,
) -> Result<Vec<MatrixRow>, SolveError> {
    if rows.is_empty() {
        return Err(SolveError::EmptyMatrix);
    }
    let jobs: Vec<(usize, usize)> = (0..rows.len())
        .flat_map(|r| (0..algorithms.len()).map(move |a| (r, a)))
        .collect();
    let cells: Vec<MatrixCell> = jobs
        .par_iter()
        .map(|&(r, a)| {
            let seed = cell_seed(opts.optimizer.seed, r, a);
            let cell_opts = opts.clone().with_algorithm(algorithms[a]).with_seed(seed);
            MatrixCell {
                algorithm: algorithms[a],
                seed,
                outcome: solve(&rows[r], &cell_opts).map_err(|e| e.to_string()),
            }
        })
        .collect();

    let mut cells = cells.into_iter();
    Ok(rows
        .iter()
        .map(|p| MatrixRow {
            params: *p,
            cells: cells.by_ref().take(algorithms.len()).collect(),
        })
        .collect())
}
