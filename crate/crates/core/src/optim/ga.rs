use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{evaluate_batch, ConvergenceHistory, GaParams, Objective, OptimizeResult, OptimizerConfig, Population, SearchBounds};

/// Blend factor range for arithmetic crossover.
const BLEND_LO: f64 = -0.25;
const BLEND_HI: f64 = 1.25;

/// Binary tournament: the fitter of two uniformly drawn members, the first
/// draw on ties.
fn tournament<R: Rng + ?Sized>(pop: &Population, rng: &mut R) -> usize {
    let a = rng.random_range(0..pop.len());
    let b = rng.random_range(0..pop.len());
    if pop.fitness[b] < pop.fitness[a] {
        b
    } else {
        a
    }
}

/// Indices sorted by fitness, stable so ties keep index order.
fn ranking(pop: &Population) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.sort_by(|&i, &j| pop.fitness[i].total_cmp(&pop.fitness[j]));
    order
}

/// One generation.
///
/// The `elite_count` best members survive unchanged. Every other slot is
/// filled by a child of two tournament winners: per dimension
/// `lambda * a + (1 - lambda) * b` with `lambda ~ U[-0.25, 1.25]` (applied
/// with probability `crossover_rate`, otherwise a copy of `a`), then
/// Gaussian mutation with `sigma = mutation_scale * width` at
/// `mutation_rate`, then clamping.
pub fn ga_step<O, R>(pop: &Population, objective: &O, bounds: &SearchBounds, rng: &mut R, params: &GaParams) -> Population
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let n = pop.len();
    let elite = params.elite_count.min(n);
    let order = ranking(pop);

    let mut candidates: Vec<Vec<f64>> = order[..elite].iter().map(|&i| pop.candidates[i].clone()).collect();
    let mut fitness: Vec<f64> = order[..elite].iter().map(|&i| pop.fitness[i]).collect();

    let mut children = Vec::with_capacity(n - elite);
    for _ in elite..n {
        let a = &pop.candidates[tournament(pop, rng)];
        let b = &pop.candidates[tournament(pop, rng)];
        let cross = rng.random::<f64>() < params.crossover_rate;
        let child: Vec<f64> = (0..bounds.dim())
            .map(|d| {
                let mut v = if cross {
                    let lambda = BLEND_LO + (BLEND_HI - BLEND_LO) * rng.random::<f64>();
                    lambda * a[d] + (1.0 - lambda) * b[d]
                } else {
                    a[d]
                };
                if rng.random::<f64>() < params.mutation_rate {
                    let z: f64 = StandardNormal.sample(rng);
                    v += z * params.mutation_scale * bounds.width(d);
                }
                bounds.clamp(d, v)
            })
            .collect();
        children.push(child);
    }
    let child_fitness = evaluate_batch(objective, &children);
    candidates.extend(children);
    fitness.extend(child_fitness);
    Population::new(candidates, fitness)
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
        pop = ga_step(&pop, objective, bounds, rng, &cfg.ga);
        evaluations += pop.len() - cfg.ga.elite_count.min(pop.len());
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
