//! Solve the Blasius flat-plate layer and print a coarse velocity profile.
//!
//! `cargo run --release --example blasius`

use fskan::{solve, SolveOptions, WedgeParams};

fn main() {
    let report = solve(&WedgeParams::BLASIUS, &SolveOptions::default()).expect("solve");

    println!("alpha   = f''(0) = {:.8}", report.best.alpha);
    println!("eta_inf          = {:.4}", report.best.eta_inf);
    println!("residual         = {:.3e}", report.residual);
    println!();
    println!("{:>8} {:>12} {:>12} {:>12}", "eta", "f", "f'", "f''");
    let stride = report.profile.len() / 20;
    for s in report.profile.iter().step_by(stride) {
        println!("{:>8.3} {:>12.8} {:>12.8} {:>12.8}", s.eta, s.f, s.fp, s.fpp);
    }
}
