//! Observe fourth-order convergence of the integrator on y' = y.

use fskan::{integrate, Grid, State4};

fn main() {
    let field = |_t: f64, y: &State4| State4::new(y.f1, 0.0, 0.0, 0.0);
    let mut prev: Option<f64> = None;
    println!("{:>6} {:>14} {:>8}", "steps", "|y(1) - e|", "ratio");
    for k in 0..6 {
        let n = 5usize << k;
        let run = integrate(&field, &Grid::unit(n).unwrap(), State4::new(1.0, 0.0, 0.0, 0.0), false).unwrap();
        let err = (run.final_state.f1 - std::f64::consts::E).abs();
        match prev {
            Some(p) => println!("{n:>6} {err:>14.6e} {:>8.3}", p / err),
            None => println!("{n:>6} {err:>14.6e}"),
        }
        prev = Some(err);
    }
}
