//! End-to-end acceptance checks. Runs without the libtest harness so each
//! criterion prints exactly one PASS/FAIL line.
//!
//! `cargo test -p fskan --test acceptance`

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use fskan::optim::{jaya_step, optimize, rng_from_seed, Fidelity, Objective, OptimizerConfig, Population};
use fskan::reference::{embedded, ReferenceSet};
use fskan::regress::{alpha_tolerance, regress};
use fskan::shooting::{run_case_matrix, MatrixRow, ShootingObjective};
use fskan::{fitness, integrate, solve, Algorithm, Candidate, Grid, SearchBounds, SolveOptions, State4, WedgeParams};
use rand::Rng;

struct Failure(Vec<String>);

type Outcome = Result<(), Failure>;

#[derive(Default)]
struct Checker(Vec<String>);

impl Checker {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.0.push(msg());
        }
    }

    fn finish(self) -> Outcome {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(Failure(self.0))
        }
    }
}

fn report_of(row: &MatrixRow, i: usize) -> Result<&fskan::SolveReport, String> {
    row.cells[i].outcome.as_ref().map_err(Clone::clone)
}

fn blasius_wall_shear() -> Outcome {
    let mut c = Checker::default();
    let spec = fskan::cli::parse_args(["fskan", "solve", "--beta0", "0.5", "--beta", "0", "--optimizer", "jaya"])
        .expect("argv parses");
    let t = Instant::now();
    let rep = solve(&WedgeParams::BLASIUS, &spec.options).expect("solve runs");
    let secs = t.elapsed().as_secs_f64();
    c.check((rep.best.alpha - 0.332057).abs() <= 1e-3, || {
        format!("alpha {} not within 1e-3 of 0.332057", rep.best.alpha)
    });
    c.check(rep.residual <= 1e-6, || format!("fitness {:e} > 1e-6", rep.residual));
    c.check(secs < 10.0, || format!("took {secs:.1} s"));
    c.finish()
}

fn jaya_matrix(set: &ReferenceSet, matrix: &[MatrixRow], secs: f64) -> Outcome {
    let mut c = Checker::default();
    for (rec, row) in set.records.iter().zip(matrix) {
        match report_of(row, 0) {
            Ok(r) => c.check((r.best.alpha - rec.alpha.jaya).abs() <= 1e-3, || {
                format!("{}: alpha {} vs {}", rec.name, r.best.alpha, rec.alpha.jaya)
            }),
            Err(e) => c.check(false, || format!("{}: {e}", rec.name)),
        }
    }
    c.check(secs < 180.0, || format!("took {secs:.1} s"));
    c.finish()
}

fn classical_cross_check(set: &ReferenceSet, matrix: &[MatrixRow]) -> Outcome {
    let mut c = Checker::default();
    for (rec, row) in set.records.iter().zip(matrix) {
        let Ok(r) = report_of(row, 0) else {
            c.check(false, || format!("{}: no solution", rec.name));
            continue;
        };
        for (col, want) in [("zhang", rec.alpha.zhang), ("asaithambi", rec.alpha.asaithambi)] {
            c.check((r.best.alpha - want).abs() <= 1e-3, || {
                format!("{}: alpha {} vs {col} {want}", rec.name, r.best.alpha)
            });
        }
    }
    c.finish()
}

fn velocity_regression(set: &ReferenceSet) -> Outcome {
    let mut c = Checker::default();
    let mut tables = set.clone();
    tables.records.retain(|r| r.velocity.is_some());
    c.check(tables.records.len() == 5, || format!("{} velocity tables", tables.records.len()));
    let rep = regress(&tables, Algorithm::Jaya, &SolveOptions::default());
    for rec in &rep.records {
        if let Some(e) = &rec.error {
            c.check(false, || format!("{}: {e}", rec.name));
        }
        for chk in rec.checks.iter().filter(|k| k.quantity.starts_with("fp")) {
            c.check(chk.passed(), || {
                format!("{} {}: got {} want {}", rec.name, chk.quantity, chk.got, chk.want)
            });
        }
    }
    c.finish()
}

fn optimizer_columns(set: &ReferenceSet) -> Outcome {
    let mut c = Checker::default();
    let algs = [Algorithm::Pso, Algorithm::Ga, Algorithm::Hyperband];
    let matrix = run_case_matrix(&set.regimes(), &algs, &SolveOptions::default()).expect("matrix runs");
    for (rec, row) in set.records.iter().zip(&matrix) {
        for (i, alg) in algs.iter().enumerate() {
            let want = rec.alpha.for_algorithm(*alg);
            let tol = alpha_tolerance(*alg);
            match report_of(row, i) {
                Ok(r) => c.check((r.best.alpha - want).abs() <= tol, || {
                    format!("{} {alg}: alpha {} vs {want} (tol {tol})", rec.name, r.best.alpha)
                }),
                Err(e) => c.check(false, || format!("{} {alg}: {e}", rec.name)),
            }
        }
    }
    c.finish()
}

fn exp_error(n: usize, lambda: f64) -> f64 {
    let grid = Grid::unit(n).unwrap();
    let f = move |_t: f64, y: &State4| State4::new(lambda * y.f1, 0.0, 0.0, 0.0);
    let run = integrate(&f, &grid, State4::new(1.0, 0.0, 0.0, 0.0), false).unwrap();
    (run.final_state.f1 - lambda.exp()).abs()
}

fn integrator_order() -> Outcome {
    let mut c = Checker::default();
    for lambda in [1.0_f64, -1.0, 2.0, 0.5] {
        // Start inside the asymptotic range: |lambda| * h <= 0.2.
        for n0 in [5, 8, 10, 16, 20].into_iter().filter(|n| lambda.abs() / *n as f64 <= 0.2) {
            let errs: Vec<f64> = (0..4).map(|k| exp_error(n0 << k, lambda)).collect();
            for w in errs.windows(2) {
                let ratio = w[0] / w[1];
                c.check((14.0..=18.0).contains(&ratio), || {
                    format!("lambda {lambda}, n0 {n0}: ratio {ratio}")
                });
            }
        }
    }
    c.finish()
}

/// Records every point handed to the wrapped objective.
struct Recording<O> {
    inner: O,
    seen: Mutex<Vec<Vec<f64>>>,
}

impl<O: Objective> Objective for Recording<O> {
    fn evaluate(&self, x: &[f64]) -> f64 {
        self.seen.lock().unwrap().push(x.to_vec());
        self.inner.evaluate(x)
    }

    fn evaluate_at(&self, x: &[f64], fidelity: Fidelity) -> f64 {
        self.seen.lock().unwrap().push(x.to_vec());
        self.inner.evaluate_at(x, fidelity)
    }
}

fn invariants(set: &ReferenceSet, jaya: &[MatrixRow]) -> Outcome {
    let mut c = Checker::default();
    let bounds = SearchBounds::falkner_skan_default();
    let cfg = OptimizerConfig {
        max_iterations: 30,
        seed: 11,
        ..OptimizerConfig::default()
    };

    for alg in Algorithm::ALL {
        let obj = Recording {
            inner: ShootingObjective {
                params: WedgeParams::HIEMENZ,
                n_steps: 400,
            },
            seen: Mutex::new(Vec::new()),
        };
        let res = optimize(&obj, &bounds, &cfg, alg).unwrap();
        c.check(res.history.is_monotone(), || format!("{alg}: history not monotone"));
        let seen = obj.seen.into_inner().unwrap();
        c.check(!seen.is_empty(), || format!("{alg}: nothing evaluated"));
        let outside = seen.iter().filter(|x| !bounds.contains(x)).count();
        c.check(outside == 0, || format!("{alg}: {outside} points evaluated outside bounds"));

        let again = optimize(&obj.inner, &bounds, &cfg, alg).unwrap();
        c.check(again == res, || format!("{alg}: rerun with the same seed differs"));
    }

    let opts = SolveOptions::default().with_algorithm(Algorithm::Pso).with_seed(5);
    let p = WedgeParams::new(1.0, -0.1);
    let (a, b) = (solve(&p, &opts).unwrap(), solve(&p, &opts).unwrap());
    c.check(
        serde_json::to_string(&a).unwrap() == serde_json::to_string(&b).unwrap(),
        || "solve reruns are not bit-identical".into(),
    );

    let point = vec![0.4, 9.0];
    let collapsed = Population::new(vec![point.clone(); 8], vec![0.25; 8]);
    let mut rng = rng_from_seed(3);
    let next = jaya_step(&collapsed, &|x: &[f64]| x[0] + x[1], &bounds, &mut rng);
    c.check(next.candidates.iter().all(|x| *x == point), || "collapsed jaya population moved".into());

    let mut rng = rng_from_seed(99);
    for _ in 0..500 {
        let cand = Candidate::new(rng.random_range(-1.0..4.0), rng.random_range(-2.0..15.0));
        let p = WedgeParams::new(rng.random_range(0.0..3.0), rng.random_range(-0.5..2.5));
        let f = fitness(&cand, &p, 200);
        c.check(f >= 0.0, || format!("negative fitness {f} at {cand:?} {p:?}"));
    }

    for (rec, row) in set.records.iter().zip(jaya) {
        let Ok(r) = report_of(row, 0) else {
            c.check(false, || format!("{}: no solution", rec.name));
            continue;
        };
        let last = r.profile.last().expect("profile recorded");
        c.check((last.fp - 1.0).abs() <= 1e-4 && last.fpp.abs() <= 1e-4, || {
            format!("{}: endpoint fp={} fpp={}", rec.name, last.fp, last.fpp)
        });
    }
    c.finish()
}

fn oracle_dominance() -> Outcome {
    let mut c = Checker::default();
    let t = Instant::now();
    let bounds = SearchBounds::falkner_skan_default();
    let obj = ShootingObjective {
        params: WedgeParams::BLASIUS,
        n_steps: fskan::ode::DEFAULT_STEPS,
    };
    const N: usize = 200;
    let axis = |d: usize, i: usize| bounds.lo()[d] + bounds.width(d) * i as f64 / (N - 1) as f64;
    let mut grid_min = f64::INFINITY;
    for i in 0..N {
        for j in 0..N {
            grid_min = grid_min.min(obj.evaluate(&[axis(0, i), axis(1, j)]));
        }
    }
    for alg in Algorithm::ALL {
        let res = optimize(&obj, &bounds, &OptimizerConfig::default(), alg).unwrap();
        c.check(res.best_fitness <= grid_min, || {
            format!("{alg}: {:e} > grid minimum {grid_min:e}", res.best_fitness)
        });
    }
    let secs = t.elapsed().as_secs_f64();
    c.check(secs < 120.0, || format!("took {secs:.1} s"));
    c.finish()
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f));
    let secs = t.elapsed().as_secs_f64();
    match outcome {
        Ok(Ok(())) => {
            println!("PASS  {label} ({secs:.1} s)");
            true
        }
        Ok(Err(Failure(msgs))) => {
            println!("FAIL  {label} ({secs:.1} s)");
            for m in msgs {
                println!("        {m}");
            }
            false
        }
        Err(_) => {
            println!("FAIL  {label} (panicked)");
            false
        }
    }
}

fn main() -> ExitCode {
    let set = embedded();
    let t = Instant::now();
    let jaya = run_case_matrix(&set.regimes(), &[Algorithm::Jaya], &SolveOptions::default()).expect("matrix runs");
    let jaya_secs = t.elapsed().as_secs_f64();

    let results = [
        run("1 blasius wall shear (jaya)", blasius_wall_shear),
        run("2 ten-regime matrix vs jaya column", || jaya_matrix(set, &jaya, jaya_secs)),
        run("3 ten-regime matrix vs classical columns", || classical_cross_check(set, &jaya)),
        run("4 velocity tables", || velocity_regression(set)),
        run("5 pso/ga/hyperband vs their own columns", || optimizer_columns(set)),
        run("6 rk4 error ratio under step halving", integrator_order),
        run("7 invariant suite", || invariants(set, &jaya)),
        run("8 oracle dominance on a 200x200 grid", oracle_dominance),
    ];
    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
