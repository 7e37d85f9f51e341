use rand::Rng;

use super::{evaluate_batch, ConvergenceHistory, Objective, OptimizeResult, OptimizerConfig, Population, SearchBounds};

/// Trial coordinate `x + r1 (best - |x|) - r2 (worst - |x|)`.
#[inline]
pub fn jaya_trial(x: f64, best: f64, worst: f64, r1: f64, r2: f64) -> f64 {
    x + r1 * (best - x.abs()) - r2 * (worst - x.abs())
}

/// One generation.
///
/// Best and worst are frozen for the whole sweep. Draws go candidate by
/// candidate, dimension by dimension (`r1` then `r2`); trials are clamped,
/// evaluated, and replace their parent only when strictly better.
pub fn jaya_step<O, R>(pop: &Population, objective: &O, bounds: &SearchBounds, rng: &mut R) -> Population
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let best = &pop.candidates[pop.best_index];
    let worst = &pop.candidates[pop.worst_index];

    let trials: Vec<Vec<f64>> = pop
        .candidates
        .iter()
        .map(|x| {
            x.iter()
                .enumerate()
                .map(|(d, &xd)| {
                    let r1: f64 = rng.random();
                    let r2: f64 = rng.random();
                    bounds.clamp(d, jaya_trial(xd, best[d], worst[d], r1, r2))
                })
                .collect()
        })
        .collect();
    let trial_fitness = evaluate_batch(objective, &trials);

    let mut next = pop.clone();
    for (i, (trial, f)) in trials.into_iter().zip(trial_fitness).enumerate() {
        if f < next.fitness[i] {
            next.candidates[i] = trial;
            next.fitness[i] = f;
        }
    }
    next.refresh_extremes();
    next
}

pub(super) fn run<O, R>(objective: &O, bounds: &SearchBounds, cfg: &OptimizerConfig, rng: &mut R) -> OptimizeResult
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let mut pop = Population::random(cfg.population_size, bounds, objective, rng);
    let mut evaluations = pop.len();
    let mut history = ConvergenceHistory::default();
    for it in 0..cfg.max_iterations {
        pop = jaya_step(&pop, objective, bounds, rng);
        evaluations += pop.len();
        let (x, f) = pop.best();
        history.push(it + 1, f, x);
    }
    let (x, f) = pop.best();
    OptimizeResult {
        best: x.to_vec(),
        best_fitness: f,
        history,
        evaluations,
    }
}
