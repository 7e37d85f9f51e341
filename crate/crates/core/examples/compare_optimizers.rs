//! Run all four optimizers on one regime and compare what they find.
//!
//! `cargo run --release --example compare_optimizers -- 1 0.5`
//! (arguments: beta0 beta; defaults to the Hiemenz stagnation flow)

use std::time::Instant;

use fskan::{solve, Algorithm, SolveOptions, WedgeParams};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("number"));
    let params = WedgeParams::new(args.next().unwrap_or(1.0), args.next().unwrap_or(1.0));
    println!("beta0 = {}, beta = {}", params.beta0, params.beta);

    for alg in Algorithm::ALL {
        let t = Instant::now();
        let rep = solve(&params, &SolveOptions::default().with_algorithm(alg).with_seed(7)).expect("solve");
        println!(
            "{:<10} alpha {:.8}  eta_inf {:>7.4}  residual {:.2e}  ({:.2} s)",
            alg.name(),
            rep.best.alpha,
            rep.best.eta_inf,
            rep.residual,
            t.elapsed().as_secs_f64()
        );
    }
}
