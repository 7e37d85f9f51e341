//! Hyperband over an evaluation-fidelity axis.
//!
//! [`hyperband_run`] is the classic bracket loop: for each
//! `s = s_max, ..., 0` draw `n` random configurations, evaluate them at
//! resource `r`, keep the best `floor(n_i / eta)` and multiply the resource
//! by `eta`, until a single rung at the full resource `R` remains.
//!
//! A continuous search space is never exhausted by one pass, so
//! [`optimize`](super::optimize) repeats the bracket loop once per
//! iteration on a box centred on the incumbent whose width shrinks
//! geometrically.

use rand::Rng;

use super::{
    evaluate_batch_at, ConvergenceHistory, Fidelity, HyperbandParams, Objective, OptimizeResult, OptimizerConfig,
    SearchBounds,
};

const EPS: f64 = 1e-9;

/// One successive-halving rung: evaluate `n` configurations at `resource`,
/// then keep the best `keep`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rung {
    pub n: usize,
    pub resource: f64,
    pub keep: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    pub s: usize,
    pub n: usize,
    pub r: f64,
    pub rungs: Vec<Rung>,
}

/// The full bracket layout for a given `(R, eta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbandSchedule {
    pub max_resource: f64,
    pub eta: f64,
    pub s_max: usize,
    pub budget: f64,
    pub brackets: Vec<Bracket>,
}

impl HyperbandSchedule {
    pub fn new(max_resource: f64, eta: f64) -> Self {
        // s_max = floor(log_eta R), computed without log rounding
        let mut s_max = 0usize;
        while eta.powi(s_max as i32 + 1) <= max_resource * (1.0 + EPS) {
            s_max += 1;
        }
        let budget = (s_max + 1) as f64 * max_resource;
        let brackets = (0..=s_max)
            .rev()
            .map(|s| {
                let n = ((budget / max_resource) * eta.powi(s as i32) / (s + 1) as f64 - EPS).ceil() as usize;
                let r = max_resource * eta.powi(-(s as i32));
                let rungs = (0..=s)
                    .map(|i| {
                        let n_i = (n as f64 * eta.powi(-(i as i32)) + EPS).floor() as usize;
                        Rung {
                            n: n_i,
                            resource: r * eta.powi(i as i32),
                            keep: (n_i as f64 / eta + EPS).floor() as usize,
                        }
                    })
                    .collect();
                Bracket { s, n, r, rungs }
            })
            .collect();
        Self {
            max_resource,
            eta,
            s_max,
            budget,
            brackets,
        }
    }

    /// Smallest resource any rung uses.
    pub fn min_resource(&self) -> f64 {
        self.max_resource * self.eta.powi(-(self.s_max as i32))
    }

    pub fn total_configurations(&self) -> usize {
        self.brackets.iter().map(|b| b.n).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperbandOutcome {
    /// Configuration with the lowest full-resource loss.
    pub best: Vec<f64>,
    pub best_loss: f64,
    /// Every full-resource loss observed, in evaluation order.
    pub full_losses: Vec<f64>,
    pub evaluations: usize,
}

/// One pass over all brackets, sampling uniformly from `bounds`.
///
/// Configurations for a bracket are drawn up front; rung evaluations run in
/// parallel and are ranked with a stable sort, so ties keep draw order.
pub fn hyperband_run<O, R>(objective: &O, bounds: &SearchBounds, params: &HyperbandParams, rng: &mut R) -> HyperbandOutcome
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let schedule = HyperbandSchedule::new(params.max_resource, params.eta);
    let min_resource = schedule.min_resource();
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut fallback: Option<(Vec<f64>, f64)> = None;
    let mut full_losses = Vec::new();
    let mut evaluations = 0;

    for bracket in &schedule.brackets {
        let mut configs: Vec<Vec<f64>> = (0..bracket.n).map(|_| bounds.sample(rng)).collect();
        for rung in &bracket.rungs {
            if configs.is_empty() {
                break;
            }
            let fidelity = Fidelity {
                resource: rung.resource,
                min_resource,
                max_resource: schedule.max_resource,
            };
            let losses = evaluate_batch_at(objective, &configs, fidelity);
            evaluations += configs.len();

            let mut order: Vec<usize> = (0..configs.len()).collect();
            order.sort_by(|&i, &j| losses[i].total_cmp(&losses[j]));

            let top = order[0];
            if fidelity.is_full() {
                full_losses.extend_from_slice(&losses);
                if best.as_ref().map_or(true, |(_, l)| losses[top] < *l) {
                    best = Some((configs[top].clone(), losses[top]));
                }
            } else if fallback.as_ref().map_or(true, |(_, l)| losses[top] < *l) {
                fallback = Some((configs[top].clone(), losses[top]));
            }

            configs = order.iter().take(rung.keep).map(|&i| configs[i].clone()).collect();
        }
    }

    let (best, best_loss) = best
        .or(fallback)
        .expect("every bracket evaluates at least one configuration");
    HyperbandOutcome {
        best,
        best_loss,
        full_losses,
        evaluations,
    }
}

pub(super) fn run<O, R>(objective: &O, bounds: &SearchBounds, cfg: &OptimizerConfig, rng: &mut R) -> OptimizeResult
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let params = &cfg.hyperband;
    let mut incumbent: Option<(Vec<f64>, f64)> = None;
    let mut history = ConvergenceHistory::default();
    let mut evaluations = 0;
    for it in 0..cfg.max_iterations {
        let region = match &incumbent {
            None => bounds.clone(),
            Some((x, _)) => bounds.shrink_around(x, params.shrink.powi(it as i32)),
        };
        let out = hyperband_run(objective, &region, params, rng);
        evaluations += out.evaluations;
        if incumbent.as_ref().map_or(true, |(_, f)| out.best_loss < *f) {
            incumbent = Some((out.best, out.best_loss));
        }
        let (x, f) = incumbent.as_ref().expect("set above");
        history.push(it + 1, *f, x);
    }
    let (best, best_fitness) = incumbent.expect("max_iterations >= 1");
    OptimizeResult {
        best,
        best_fitness,
        history,
        evaluations,
    }
}
