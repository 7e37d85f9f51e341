//! Best fitness per iteration for each optimizer on the Homann flow, as CSV.
//!
//! `cargo run --release --example convergence_csv > homann_history.csv`

use fskan::io::decimal;
use fskan::{solve, Algorithm, SolveOptions, WedgeParams};

fn main() {
    println!("algorithm,iteration,best_fitness");
    for alg in Algorithm::ALL {
        let rep = solve(&WedgeParams::HOMANN, &SolveOptions::default().with_algorithm(alg)).expect("solve");
        assert!(rep.history.is_monotone());
        for e in &rep.history.entries {
            println!("{alg},{},{}", e.iteration, decimal(e.best_fitness));
        }
    }
}
