//! The optimizers work on any box-bounded objective, not only the
//! boundary-layer residual. Here: the Rosenbrock valley.

use fskan::{optimize, Algorithm, OptimizerConfig, SearchBounds};

fn rosenbrock(x: &[f64]) -> f64 {
    (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
}

fn main() {
    let bounds = SearchBounds::new(vec![-2.0, -1.0], vec![2.0, 3.0]).unwrap();
    let cfg = OptimizerConfig {
        population_size: 30,
        max_iterations: 300,
        seed: 2024,
        ..OptimizerConfig::default()
    };
    for alg in Algorithm::ALL {
        let res = optimize(&rosenbrock, &bounds, &cfg, alg).unwrap();
        println!(
            "{:<10} x = ({:.6}, {:.6})  f = {:.3e}  after {} evaluations",
            alg.name(),
            res.best[0],
            res.best[1],
            res.best_fitness,
            res.evaluations
        );
    }
}
