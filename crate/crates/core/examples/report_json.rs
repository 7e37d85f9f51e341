//! Solve a decelerating flow with GA and write the full report as JSON.
//!
//! `cargo run --release --example report_json > decel.json`

use fskan::io::emit_report_json;
use fskan::{solve, Algorithm, SolveOptions, WedgeParams};

fn main() {
    let mut opts = SolveOptions::default().with_algorithm(Algorithm::Ga).with_seed(1);
    // Keep the file small: record only the optimum, not the profile.
    opts.record_profile = false;
    let rep = solve(&WedgeParams::new(1.0, -0.15), &opts).expect("solve");
    eprintln!("best of {} restarts came from seed {}", rep.config.restarts, rep.config.winning_seed);
    emit_report_json(&rep, &mut std::io::stdout().lock()).expect("write");
}
