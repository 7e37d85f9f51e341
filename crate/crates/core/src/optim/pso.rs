use rand::Rng;

use super::{
    argmin, evaluate_batch, ConvergenceHistory, Objective, OptimizeResult, OptimizerConfig, PsoParams, SearchBounds,
};

/// Particle positions and velocities with personal and global memory.
#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub pbest: Vec<Vec<f64>>,
    pub pbest_fitness: Vec<f64>,
    /// Index into `pbest` of the global best.
    pub gbest_index: usize,
}

impl Swarm {
    /// Zero velocities, personal bests at the starting positions.
    pub fn new(positions: Vec<Vec<f64>>, fitness: Vec<f64>) -> Self {
        let velocities = positions.iter().map(|x| vec![0.0; x.len()]).collect();
        let gbest_index = argmin(&fitness);
        Self {
            pbest: positions.clone(),
            pbest_fitness: fitness.clone(),
            positions,
            velocities,
            fitness,
            gbest_index,
        }
    }

    pub fn random<O, R>(n: usize, bounds: &SearchBounds, objective: &O, rng: &mut R) -> Self
    where
        O: Objective + ?Sized,
        R: Rng + ?Sized,
    {
        let positions: Vec<Vec<f64>> = (0..n).map(|_| bounds.sample(rng)).collect();
        let fitness = evaluate_batch(objective, &positions);
        Self::new(positions, fitness)
    }

    pub fn gbest(&self) -> (&[f64], f64) {
        (&self.pbest[self.gbest_index], self.pbest_fitness[self.gbest_index])
    }
}

/// One swarm update: `V <- wV + c1 r1 (pbest - X) + c2 r2 (gbest - X)`,
/// `X <- X + V`.
///
/// A coordinate pushed outside the box is clamped and its velocity zeroed.
pub fn pso_step<O, R>(swarm: &Swarm, objective: &O, bounds: &SearchBounds, rng: &mut R, params: &PsoParams) -> Swarm
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let PsoParams { w, c1, c2 } = *params;
    let gbest = swarm.pbest[swarm.gbest_index].clone();
    let mut next = swarm.clone();

    for i in 0..next.positions.len() {
        for d in 0..bounds.dim() {
            let r1: f64 = rng.random();
            let r2: f64 = rng.random();
            let x = next.positions[i][d];
            let v = w * next.velocities[i][d] + c1 * r1 * (next.pbest[i][d] - x) + c2 * r2 * (gbest[d] - x);
            let moved = x + v;
            let clamped = bounds.clamp(d, moved);
            next.positions[i][d] = clamped;
            next.velocities[i][d] = if clamped != moved { 0.0 } else { v };
        }
    }

    next.fitness = evaluate_batch(objective, &next.positions);
    for i in 0..next.positions.len() {
        if next.fitness[i] < next.pbest_fitness[i] {
            next.pbest[i] = next.positions[i].clone();
            next.pbest_fitness[i] = next.fitness[i];
        }
    }
    next.gbest_index = argmin(&next.pbest_fitness);
    next
}

pub(super) fn run<O, R>(objective: &O, bounds: &SearchBounds, cfg: &OptimizerConfig, rng: &mut R) -> OptimizeResult
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let mut swarm = Swarm::random(cfg.population_size, bounds, objective, rng);
    let mut evaluations = swarm.positions.len();
    let mut history = ConvergenceHistory::default();
    for it in 0..cfg.max_iterations {
        swarm = pso_step(&swarm, objective, bounds, rng, &cfg.pso);
        evaluations += swarm.positions.len();
        let (x, f) = swarm.gbest();
        history.push(it + 1, f, x);
    }
    let (x, f) = swarm.gbest();
    OptimizeResult {
        best: x.to_vec(),
        best_fitness: f,
        history,
        evaluations,
    }
}
