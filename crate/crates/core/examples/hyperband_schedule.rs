//! Print the bracket layout Hyperband uses for a given maximum resource and
//! halving factor, and how resources map to RK4 step counts.
//!
//! `cargo run --example hyperband_schedule -- 81 3`

use fskan::optim::{Fidelity, HyperbandSchedule};
use fskan::shooting::ShootingObjective;
use fskan::WedgeParams;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("number"));
    let r = args.next().unwrap_or(81.0);
    let eta = args.next().unwrap_or(3.0);
    let sched = HyperbandSchedule::new(r, eta);
    let obj = ShootingObjective {
        params: WedgeParams::BLASIUS,
        n_steps: 1000,
    };

    println!("R = {r}, eta = {eta}: s_max = {}, {} configurations per sweep", sched.s_max, sched.total_configurations());
    for b in &sched.brackets {
        println!("bracket s = {}", b.s);
        for rung in &b.rungs {
            let fid = Fidelity {
                resource: rung.resource,
                min_resource: sched.min_resource(),
                max_resource: r,
            };
            println!(
                "  {:>4} configs at r = {:>6.2} ({:>4} RK4 steps), keep {}",
                rung.n,
                rung.resource,
                obj.steps_for(fid),
                rung.keep
            );
        }
    }
}
