//! Regression of solved regimes against the embedded reference data.
//!
//! For every record the regime is solved, the solved `alpha` is compared
//! with the column for the chosen algorithm, and where a velocity table
//! exists `f'` is compared with the reference column. Tabulated `xi` values
//! are tied to the record's own `eta_inf`, so velocities are evaluated at
//! the physical coordinate `eta = xi * eta_inf_ref`.

use std::fmt;

use rayon::prelude::*;

use crate::optim::Algorithm;
use crate::problem::{velocity_at, WedgeParams};
use crate::reference::ReferenceSet;
use crate::shooting::{cell_seed, solve, SolveOptions, SolveReport, REPORT_STEPS};

/// Tolerance on `f'` at tabulated points.
pub const VELOCITY_TOL: f64 = 1e-3;

/// Tolerance on `alpha` against the algorithm's own published column.
pub fn alpha_tolerance(alg: Algorithm) -> f64 {
    match alg {
        Algorithm::Jaya => 1e-3,
        Algorithm::Pso | Algorithm::Ga => 5e-3,
        Algorithm::Hyperband => 2e-2,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub quantity: String,
    pub got: f64,
    pub want: f64,
    pub tol: f64,
}

impl Check {
    pub fn new(quantity: impl Into<String>, got: f64, want: f64, tol: f64) -> Self {
        Self {
            quantity: quantity.into(),
            got,
            want,
            tol,
        }
    }

    pub fn passed(&self) -> bool {
        (self.got - self.want).abs() <= self.tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecordOutcome {
    pub name: String,
    pub params: WedgeParams,
    pub checks: Vec<Check>,
    /// Set when the solve itself failed.
    pub error: Option<String>,
    pub report: Option<SolveReport>,
}

impl RecordOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(Check::passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionReport {
    pub algorithm: Algorithm,
    pub records: Vec<RecordOutcome>,
}

impl RegressionReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(RecordOutcome::passed)
    }

    pub fn pass_count(&self) -> usize {
        self.records.iter().filter(|r| r.passed()).count()
    }
}

impl fmt::Display for RegressionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            let tag = if r.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {} (beta0={}, beta={})", r.name, r.params.beta0, r.params.beta)?;
            if let Some(e) = &r.error {
                writeln!(f, "    error: {e}")?;
            }
            for c in r.checks.iter().filter(|c| !c.passed()) {
                writeln!(
                    f,
                    "    {}: got {:.8} want {:.8} tol {:e}",
                    c.quantity, c.got, c.want, c.tol
                )?;
            }
        }
        write!(
            f,
            "{}: {}/{} records passed",
            self.algorithm,
            self.pass_count(),
            self.records.len()
        )
    }
}

/// Solve every record with `algorithm` and compare.
///
/// Record `i` runs with seed `cell_seed(opts seed, i, 0)`.
pub fn regress(set: &ReferenceSet, algorithm: Algorithm, opts: &SolveOptions) -> RegressionReport {
    let records = set
        .records
        .par_iter()
        .enumerate()
        .map(|(i, rec)| {
            let params = rec.params();
            let run_opts = opts
                .clone()
                .with_algorithm(algorithm)
                .with_seed(cell_seed(opts.optimizer.seed, i, 0));
            let report = match solve(&params, &run_opts) {
                Ok(r) => r,
                Err(e) => {
                    return RecordOutcome {
                        name: rec.name.clone(),
                        params,
                        checks: Vec::new(),
                        error: Some(e.to_string()),
                        report: None,
                    }
                }
            };
            let alpha = report.best.alpha;
            let mut checks = vec![Check::new(
                "alpha",
                alpha,
                rec.alpha.for_algorithm(algorithm),
                alpha_tolerance(algorithm),
            )];
            let mut error = None;
            if let (Some(table), Some(eta_inf)) = (&rec.velocity, rec.eta_inf) {
                for row in &table.rows {
                    match velocity_at(alpha, &params, row.xi * eta_inf, REPORT_STEPS) {
                        Ok(fp) => checks.push(Check::new(format!("fp(xi={})", row.xi), fp, row.fp_ref, VELOCITY_TOL)),
                        Err(e) => error = Some(e.to_string()),
                    }
                }
            }
            RecordOutcome {
                name: rec.name.clone(),
                params,
                checks,
                error,
                report: Some(report),
            }
        })
        .collect();
    RegressionReport { algorithm, records }
}
