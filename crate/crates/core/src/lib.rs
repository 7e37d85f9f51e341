//! Falkner-Skan boundary layers solved as a free-boundary problem.
//!
//! The unknown wall shear `alpha = f''(0)` and the truncated edge of the
//! layer `eta_inf` are found by shooting with fixed-step RK4 on the rescaled
//! domain `xi = eta / eta_inf` and minimizing the far-field residual with a
//! population-based optimizer (Jaya, PSO, GA or Hyperband).
//!
//! ## Examples
//!
//! Each capability has a runnable example under `examples/`:
//!
//! - **`blasius`**: solve one regime and print the profile
//! - **`compare_optimizers`**: the four optimizers side by side on one regime
//! - **`case_matrix`**: every reference regime, long-format CSV
//! - **`convergence_csv`**: best fitness per iteration
//! - **`velocity_regression`**: compare against the embedded reference tables
//! - **`report_json`**: a full report as JSON
//! - **`rk4_order`**: fourth-order convergence of the integrator
//! - **`hyperband_schedule`**: bracket layout and fidelity mapping
//! - **`custom_objective`**: the optimizers on an arbitrary objective
//!
//! ```bash
//! cargo run --release --example blasius
//! cargo run --release --example velocity_regression -- pso
//! ```
//!
//! ```no_run
//! use fskan::{solve, SolveOptions, WedgeParams};
//!
//! let report = solve(&WedgeParams::BLASIUS, &SolveOptions::default().with_seed(42)).unwrap();
//! println!("alpha = {:.6}, eta_inf = {:.3}", report.best.alpha, report.best.eta_inf);
//! ```

pub mod cli;
pub mod io;
pub mod ode;
pub mod optim;
pub mod problem;
pub mod reference;
pub mod regress;
pub mod shooting;

pub use ode::{integrate, rk4_step, Grid, State4};
pub use optim::{optimize, Algorithm, ConvergenceHistory, OptimizerConfig, SearchBounds};
pub use problem::{Candidate, ProfileSample, WedgeParams};
pub use shooting::{fitness, run_case_matrix, solve, SolveOptions, SolveReport};
