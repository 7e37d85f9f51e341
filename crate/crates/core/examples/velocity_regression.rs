//! Regress one optimizer against the embedded reference data: wall shear
//! for every regime, plus f' at each tabulated point where a velocity table
//! exists.
//!
//! `cargo run --release --example velocity_regression -- pso`

use fskan::reference::embedded;
use fskan::regress::regress;
use fskan::{Algorithm, SolveOptions};

fn main() {
    let alg: Algorithm = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("optimizer name"))
        .unwrap_or(Algorithm::Jaya);
    let report = regress(embedded(), alg, &SolveOptions::default());

    for rec in report.records.iter().filter(|r| r.checks.len() > 1) {
        println!("{}", rec.name);
        for c in &rec.checks[1..] {
            println!("  {:<10} got {:.8} want {:.8}  |diff| {:.1e}", c.quantity, c.got, c.want, (c.got - c.want).abs());
        }
    }
    println!();
    println!("{report}");
    std::process::exit(if report.passed() { 0 } else { 3 });
}
