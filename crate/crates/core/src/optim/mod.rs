//! Derivative-free minimizers on box-bounded search spaces.
//!
//! Four algorithms share one entry point, [`optimize`]:
//!
//! * [`Algorithm::Jaya`]: moves every candidate toward the current best and
//!   away from the current worst, keeping a trial only if it improves.
//! * [`Algorithm::Pso`]: inertia-weight particle swarm.
//! * [`Algorithm::Ga`]: real-coded GA (binary tournament, blend crossover,
//!   Gaussian mutation, elitism).
//! * [`Algorithm::Hyperband`]: successive-halving brackets over an
//!   evaluation-fidelity axis, repeated on a region that contracts around
//!   the incumbent.
//!
//! Randomness comes from a single [`ChaCha8Rng`] stream per run. Draws are
//! always made serially in candidate/dimension order before the batch of
//! objective evaluations is dispatched, so evaluating in parallel gives
//! the same bits as evaluating serially.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

mod ga;
mod hyperband;
mod jaya;
mod pso;

pub use ga::ga_step;
pub use hyperband::{hyperband_run, Bracket, HyperbandOutcome, HyperbandSchedule, Rung};
pub use jaya::{jaya_step, jaya_trial};
pub use pso::{pso_step, Swarm};

/// The generator behind every run.
pub type RunRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> RunRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimError {
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Jaya,
    Pso,
    Ga,
    Hyperband,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Jaya,
        Algorithm::Pso,
        Algorithm::Ga,
        Algorithm::Hyperband,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Jaya => "jaya",
            Algorithm::Pso => "pso",
            Algorithm::Ga => "ga",
            Algorithm::Hyperband => "hyperband",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown optimizer `{s}` (expected jaya, pso, ga or hyperband)"))
    }
}

/// Per-dimension box `[lo[d], hi[d]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchBounds {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl SearchBounds {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, OptimError> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(OptimError::InvalidBounds(format!(
                "need matching non-empty bound vectors, got {} and {}",
                lo.len(),
                hi.len()
            )));
        }
        for (d, (l, h)) in lo.iter().zip(&hi).enumerate() {
            if !(l.is_finite() && h.is_finite() && l < h) {
                return Err(OptimError::InvalidBounds(format!(
                    "dimension {d}: need finite lo < hi, got [{l}, {h}]"
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    /// `alpha` in `[0, 3]`, `eta_inf` in `[1, 12]`.
    pub fn falkner_skan_default() -> Self {
        Self {
            lo: vec![0.0, 1.0],
            hi: vec![3.0, 12.0],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn width(&self, d: usize) -> f64 {
        self.hi[d] - self.lo[d]
    }

    pub fn clamp(&self, d: usize, v: f64) -> f64 {
        v.clamp(self.lo[d], self.hi[d])
    }

    pub fn clamp_point(&self, x: &mut [f64]) {
        for (d, v) in x.iter_mut().enumerate() {
            *v = self.clamp(d, *v);
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && x.iter().enumerate().all(|(d, v)| *v >= self.lo[d] && *v <= self.hi[d])
    }

    /// One uniform point, drawing dimensions in order.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.dim())
            .map(|d| self.clamp(d, self.lo[d] + rng.random::<f64>() * self.width(d)))
            .collect()
    }

    /// Sub-box centred on `center` with half-widths `scale * width / 2`,
    /// shifted to stay inside `self`.
    pub fn shrink_around(&self, center: &[f64], scale: f64) -> SearchBounds {
        let mut lo = Vec::with_capacity(self.dim());
        let mut hi = Vec::with_capacity(self.dim());
        for d in 0..self.dim() {
            let half = 0.5 * scale * self.width(d);
            let (mut l, mut h) = (center[d] - half, center[d] + half);
            if l < self.lo[d] {
                h += self.lo[d] - l;
                l = self.lo[d];
            }
            if h > self.hi[d] {
                l -= h - self.hi[d];
                h = self.hi[d];
            }
            l = l.max(self.lo[d]);
            if !(l < h) {
                // degenerate width; fall back to the full dimension
                l = self.lo[d];
                h = self.hi[d];
            }
            lo.push(l);
            hi.push(h);
        }
        SearchBounds { lo, hi }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsoParams {
    pub w: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            w: 0.7,
            c1: 1.5,
            c2: 1.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Mutation standard deviation as a fraction of each dimension's width.
    pub mutation_scale: f64,
    pub elite_count: usize,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            crossover_rate: 0.9,
            mutation_rate: 0.1,
            mutation_scale: 0.1,
            elite_count: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbandParams {
    /// Maximum resource per configuration.
    pub max_resource: f64,
    /// Halving factor.
    pub eta: f64,
    /// Per-sweep contraction of the sampling region around the incumbent.
    pub shrink: f64,
}

impl Default for HyperbandParams {
    fn default() -> Self {
        Self {
            max_resource: 81.0,
            eta: 3.0,
            shrink: 0.93,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub population_size: usize,
    pub max_iterations: usize,
    pub seed: u64,
    pub pso: PsoParams,
    pub ga: GaParams,
    pub hyperband: HyperbandParams,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            population_size: 20,
            max_iterations: 100,
            seed: 0,
            pso: PsoParams::default(),
            ga: GaParams::default(),
            hyperband: HyperbandParams::default(),
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), OptimError> {
        let bad = |m: String| Err(OptimError::InvalidConfig(m));
        if self.population_size < 4 {
            return bad(format!("population_size must be >= 4, got {}", self.population_size));
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be >= 1".into());
        }
        let PsoParams { w, c1, c2 } = self.pso;
        if ![w, c1, c2].iter().all(|v| v.is_finite() && *v >= 0.0) {
            return bad(format!("pso coefficients must be finite and >= 0, got w={w} c1={c1} c2={c2}"));
        }
        let g = &self.ga;
        for (name, r) in [("crossover_rate", g.crossover_rate), ("mutation_rate", g.mutation_rate)] {
            if !(0.0..=1.0).contains(&r) {
                return bad(format!("ga {name} must be in [0, 1], got {r}"));
            }
        }
        if !(g.mutation_scale.is_finite() && g.mutation_scale >= 0.0) {
            return bad(format!("ga mutation_scale must be >= 0, got {}", g.mutation_scale));
        }
        if g.elite_count >= self.population_size {
            return bad(format!(
                "ga elite_count ({}) must be below population_size ({})",
                g.elite_count, self.population_size
            ));
        }
        let h = &self.hyperband;
        if !(h.eta.is_finite() && h.eta >= 2.0) {
            return bad(format!("hyperband halving factor must be >= 2, got {}", h.eta));
        }
        if !(h.max_resource.is_finite() && h.max_resource >= 1.0) {
            return bad(format!("hyperband R must be >= 1, got {}", h.max_resource));
        }
        if !(h.shrink > 0.0 && h.shrink <= 1.0) {
            return bad(format!("hyperband shrink must be in (0, 1], got {}", h.shrink));
        }
        Ok(())
    }
}

/// Evaluation fidelity for multi-fidelity methods: `resource` out of the
/// range `[min_resource, max_resource]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fidelity {
    pub resource: f64,
    pub min_resource: f64,
    pub max_resource: f64,
}

impl Fidelity {
    pub fn full(max_resource: f64) -> Self {
        Self {
            resource: max_resource,
            min_resource: max_resource,
            max_resource,
        }
    }

    /// Position of `resource` in its range, `0` at the cheapest level and
    /// `1` at full fidelity.
    pub fn fraction(&self) -> f64 {
        let span = self.max_resource - self.min_resource;
        if span <= 0.0 {
            1.0
        } else {
            ((self.resource - self.min_resource) / span).clamp(0.0, 1.0)
        }
    }

    pub fn is_full(&self) -> bool {
        self.resource >= self.max_resource * (1.0 - 1e-12)
    }
}

/// Something to minimize.
pub trait Objective: Sync {
    fn evaluate(&self, x: &[f64]) -> f64;

    /// Cheaper approximation; ignores fidelity by default.
    fn evaluate_at(&self, x: &[f64], fidelity: Fidelity) -> f64 {
        let _ = fidelity;
        self.evaluate(x)
    }
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn evaluate(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// Non-finite objective values compete as `+inf`.
pub(crate) fn sanitize(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Evaluate a batch in parallel, returning values in input order.
pub(crate) fn evaluate_batch<O: Objective + ?Sized>(objective: &O, points: &[Vec<f64>]) -> Vec<f64> {
    points.par_iter().map(|x| sanitize(objective.evaluate(x))).collect()
}

pub(crate) fn evaluate_batch_at<O: Objective + ?Sized>(
    objective: &O,
    points: &[Vec<f64>],
    fidelity: Fidelity,
) -> Vec<f64> {
    points
        .par_iter()
        .map(|x| sanitize(objective.evaluate_at(x, fidelity)))
        .collect()
}

/// Index of the smallest value, lowest index on ties.
pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

/// Index of the largest value, lowest index on ties.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut worst = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[worst] {
            worst = i;
        }
    }
    worst
}

/// Candidates with their objective values and the current extremes.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub candidates: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub best_index: usize,
    pub worst_index: usize,
}

impl Population {
    pub fn new(candidates: Vec<Vec<f64>>, fitness: Vec<f64>) -> Self {
        assert_eq!(candidates.len(), fitness.len());
        assert!(!candidates.is_empty());
        let mut pop = Self {
            candidates,
            fitness,
            best_index: 0,
            worst_index: 0,
        };
        pop.refresh_extremes();
        pop
    }

    /// `n` uniform samples from `bounds`, evaluated.
    pub fn random<O: Objective + ?Sized, R: Rng + ?Sized>(
        n: usize,
        bounds: &SearchBounds,
        objective: &O,
        rng: &mut R,
    ) -> Self {
        let candidates: Vec<Vec<f64>> = (0..n).map(|_| bounds.sample(rng)).collect();
        let fitness = evaluate_batch(objective, &candidates);
        Self::new(candidates, fitness)
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn refresh_extremes(&mut self) {
        self.best_index = argmin(&self.fitness);
        self.worst_index = argmax(&self.fitness);
    }

    pub fn best(&self) -> (&[f64], f64) {
        (&self.candidates[self.best_index], self.fitness[self.best_index])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub iteration: usize,
    pub best_fitness: f64,
    pub best: Vec<f64>,
}

/// Incumbent after each iteration.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConvergenceHistory {
    pub entries: Vec<HistoryEntry>,
}

impl ConvergenceHistory {
    pub fn push(&mut self, iteration: usize, best_fitness: f64, best: &[f64]) {
        self.entries.push(HistoryEntry {
            iteration,
            best_fitness,
            best: best.to_vec(),
        });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_monotone(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[1].best_fitness <= w[0].best_fitness)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    pub best: Vec<f64>,
    pub best_fitness: f64,
    pub history: ConvergenceHistory,
    pub evaluations: usize,
}

/// Minimize `objective` over `bounds`.
///
/// Configuration and bounds are checked before the first evaluation.
pub fn optimize<O: Objective + ?Sized>(
    objective: &O,
    bounds: &SearchBounds,
    cfg: &OptimizerConfig,
    algorithm: Algorithm,
) -> Result<OptimizeResult, OptimError> {
    cfg.validate()?;
    let mut rng = rng_from_seed(cfg.seed);
    let res = match algorithm {
        Algorithm::Jaya => jaya::run(objective, bounds, cfg, &mut rng),
        Algorithm::Pso => pso::run(objective, bounds, cfg, &mut rng),
        Algorithm::Ga => ga::run(objective, bounds, cfg, &mut rng),
        Algorithm::Hyperband => hyperband::run(objective, bounds, cfg, &mut rng),
    };
    Ok(res)
}
