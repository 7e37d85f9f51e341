//! The Falkner-Skan boundary-layer equation
//!
//! ```text
//! f''' + beta0 * f * f'' + beta * (1 - f'^2) = 0,
//! f(0) = f'(0) = 0,  f'(inf) = 1
//! ```
//!
//! posed as a free-boundary problem. Infinity is truncated at an unknown
//! `eta_inf`, the coordinate is rescaled to `xi = eta / eta_inf` on `[0, 1]`,
//! and the third-order equation is reduced to four first-order ones with
//! `eta_inf` carried as a constant state. Given a trial wall shear `alpha`
//! and `eta_inf`, integrating from `xi = 0` leaves a residual at `xi = 1`
//! against the far-field conditions `f' = 1`, `f'' = 0`.
//!
//! Solutions with `beta < -0.1988` (past separation) are outside the
//! tabulated range but are not rejected here.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ode::{integrate, Grid, Integration, IntegrationError, State4};

/// The `(beta0, beta)` pair selecting a flow regime. `beta * pi` is the
/// wedge angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WedgeParams {
    pub beta0: f64,
    pub beta: f64,
}

impl WedgeParams {
    pub const BLASIUS: WedgeParams = WedgeParams::new(0.5, 0.0);
    pub const HIEMENZ: WedgeParams = WedgeParams::new(1.0, 1.0);
    pub const HOMANN: WedgeParams = WedgeParams::new(2.0, 1.0);

    pub const fn new(beta0: f64, beta: f64) -> Self {
        Self { beta0, beta }
    }

    pub fn is_finite(&self) -> bool {
        self.beta0.is_finite() && self.beta.is_finite()
    }
}

/// A point in the search space: trial wall shear and truncated boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub alpha: f64,
    pub eta_inf: f64,
}

impl Candidate {
    pub const fn new(alpha: f64, eta_inf: f64) -> Self {
        Self { alpha, eta_inf }
    }

    /// Interpret an optimizer point `[alpha, eta_inf]`.
    pub fn from_point(x: &[f64]) -> Self {
        Self::new(x[0], x[1])
    }

    pub fn to_point(self) -> [f64; 2] {
        [self.alpha, self.eta_inf]
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if !self.alpha.is_finite() || !self.eta_inf.is_finite() || self.eta_inf <= 0.0 {
            return Err(ProblemError::InvalidCandidate(*self));
        }
        Ok(())
    }
}

/// One point of a physical profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub eta: f64,
    pub f: f64,
    pub fp: f64,
    pub fpp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ProblemError {
    #[error("invalid candidate (alpha = {}, eta_inf = {}): need finite values and eta_inf > 0", .0.alpha, .0.eta_inf)]
    InvalidCandidate(Candidate),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}

/// Derivative of the reduced state with respect to `xi`.
pub fn rhs(y: &State4, p: &WedgeParams) -> State4 {
    State4::new(
        y.f2 * y.f4,
        y.f3 * y.f4,
        -p.beta0 * y.f1 * y.f3 * y.f4 - p.beta * (1.0 - y.f2 * y.f2) * y.f4,
        0.0,
    )
}

/// Wall state `(0, 0, alpha, eta_inf)`.
pub fn initial_state(c: &Candidate) -> Result<State4, ProblemError> {
    c.validate()?;
    Ok(State4::new(0.0, 0.0, c.alpha, c.eta_inf))
}

/// Signed far-field residual pair `(f2(1) - 1, f3(1))`.
pub fn boundary_residual(y_final: &State4) -> (f64, f64) {
    (y_final.f2 - 1.0, y_final.f3)
}

/// Integrate the transformed system over `xi` in `[0, 1]`.
pub fn shoot(
    c: &Candidate,
    p: &WedgeParams,
    n_steps: usize,
    record: bool,
) -> Result<Integration, ProblemError> {
    let y0 = initial_state(c)?;
    let grid = Grid::unit(n_steps)?;
    let field = |_xi: f64, y: &State4| rhs(y, p);
    Ok(integrate(&field, &grid, y0, record)?)
}

/// Map a recorded `xi` trajectory back to physical `eta = xi * eta_inf`.
///
/// `eta_inf` comes from the candidate, not from the carried fourth state.
pub fn physical_profile(trajectory: &[(f64, State4)], c: &Candidate) -> Vec<ProfileSample> {
    trajectory
        .iter()
        .map(|&(xi, y)| ProfileSample {
            eta: xi * c.eta_inf,
            f: y.f1,
            fp: y.f2,
            fpp: y.f3,
        })
        .collect()
}

/// `f'(eta)` of the initial-value solution with wall shear `alpha`.
///
/// Shoots over `[0, eta]` by reusing the transformed system with the
/// truncated boundary set to `eta`.
pub fn velocity_at(
    alpha: f64,
    p: &WedgeParams,
    eta: f64,
    n_steps: usize,
) -> Result<f64, ProblemError> {
    if eta == 0.0 {
        return Ok(0.0);
    }
    let run = shoot(&Candidate::new(alpha, eta), p, n_steps, false)?;
    Ok(run.final_state.f2)
}
