//! Fixed-step classical Runge-Kutta (RK4) integration on a finite interval.
//!
//! The integrator works on [`State4`], the reduced state of the transformed
//! boundary-layer system, but knows nothing about the physics: any
//! vector field `Fn(t, &State4) -> State4` can be integrated.

use std::ops::{Add, Div, Mul};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default number of RK4 steps on the unit interval.
pub const DEFAULT_STEPS: usize = 1000;

/// Reduced first-order state `(f1, f2, f3, f4)`.
///
/// `f1 = f`, `f2 = f'`, `f3 = f''` and `f4 = eta_inf`, the truncated boundary
/// carried along as a constant component.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct State4 {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
}

impl State4 {
    pub const ZERO: State4 = State4::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(f1: f64, f2: f64, f3: f64, f4: f64) -> Self {
        Self { f1, f2, f3, f4 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.f1, self.f2, self.f3, self.f4]
    }

    pub fn is_finite(&self) -> bool {
        self.f1.is_finite() && self.f2.is_finite() && self.f3.is_finite() && self.f4.is_finite()
    }
}

impl From<[f64; 4]> for State4 {
    fn from(v: [f64; 4]) -> Self {
        State4::new(v[0], v[1], v[2], v[3])
    }
}

impl Add for State4 {
    type Output = State4;

    fn add(self, o: State4) -> State4 {
        State4::new(self.f1 + o.f1, self.f2 + o.f2, self.f3 + o.f3, self.f4 + o.f4)
    }
}

impl Mul<f64> for State4 {
    type Output = State4;

    fn mul(self, s: f64) -> State4 {
        State4::new(self.f1 * s, self.f2 * s, self.f3 * s, self.f4 * s)
    }
}

impl Div<f64> for State4 {
    type Output = State4;

    fn div(self, s: f64) -> State4 {
        State4::new(self.f1 / s, self.f2 / s, self.f3 / s, self.f4 / s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum IntegrationError {
    #[error("non-finite state at t = {t} (step {step:?})")]
    NonFinite { t: f64, step: Option<usize> },
    #[error("invalid grid: t0 = {t0}, t1 = {t1}, n_steps = {n_steps}")]
    InvalidGrid { t0: f64, t1: f64, n_steps: usize },
    #[error("non-finite initial state")]
    NonFiniteInitial,
}

/// Uniform grid `t0 < t1` split into `n_steps` equal steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    t0: f64,
    t1: f64,
    n_steps: usize,
    h: f64,
}

impl Grid {
    pub fn new(t0: f64, t1: f64, n_steps: usize) -> Result<Self, IntegrationError> {
        let bad = IntegrationError::InvalidGrid { t0, t1, n_steps };
        if n_steps == 0 || !t0.is_finite() || !t1.is_finite() || t0 >= t1 {
            return Err(bad);
        }
        let h = (t1 - t0) / n_steps as f64;
        if h <= 0.0 {
            return Err(bad);
        }
        Ok(Self { t0, t1, n_steps, h })
    }

    /// `[0, 1]` with `n_steps` steps.
    pub fn unit(n_steps: usize) -> Result<Self, IntegrationError> {
        Self::new(0.0, 1.0, n_steps)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Coordinate of node `i`, computed as `t0 + i*h` with the last node
    /// pinned to `t1`.
    pub fn node(&self, i: usize) -> f64 {
        if i >= self.n_steps {
            self.t1
        } else {
            self.t0 + i as f64 * self.h
        }
    }
}

/// One classical RK4 step from `(t, y)` with step `h`.
///
/// Stages follow `k_i = h * f(...)` and the update
/// `y + (k1 + 2 k2 + 2 k3 + k4) / 6`.
pub fn rk4_step<F>(rhs: &F, t: f64, y: &State4, h: f64) -> Result<State4, IntegrationError>
where
    F: Fn(f64, &State4) -> State4 + ?Sized,
{
    let half = 0.5 * h;
    let check = |s: State4, at: f64| {
        if s.is_finite() {
            Ok(s)
        } else {
            Err(IntegrationError::NonFinite { t: at, step: None })
        }
    };

    let k1 = check(rhs(t, y) * h, t)?;
    let k2 = check(rhs(t + half, &(*y + k1 / 2.0)) * h, t + half)?;
    let k3 = check(rhs(t + half, &(*y + k2 / 2.0)) * h, t + half)?;
    let k4 = check(rhs(t + h, &(*y + k3)) * h, t + h)?;

    let incr = (k1 + k2 * 2.0 + k3 * 2.0 + k4) / 6.0;
    check(*y + incr, t + h)
}

/// Final state plus the optional recorded trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Integration {
    pub final_state: State4,
    /// `(t, state)` at every node, including both endpoints; empty unless
    /// recording was requested.
    pub trajectory: Vec<(f64, State4)>,
}

/// Apply [`rk4_step`] `grid.n_steps()` times starting from `y0`.
pub fn integrate<F>(
    rhs: &F,
    grid: &Grid,
    y0: State4,
    record: bool,
) -> Result<Integration, IntegrationError>
where
    F: Fn(f64, &State4) -> State4 + ?Sized,
{
    if !y0.is_finite() {
        return Err(IntegrationError::NonFiniteInitial);
    }
    let n = grid.n_steps();
    let mut trajectory = Vec::with_capacity(if record { n + 1 } else { 0 });
    if record {
        trajectory.push((grid.node(0), y0));
    }
    let mut y = y0;
    for i in 0..n {
        let t = grid.node(i);
        y = rk4_step(rhs, t, &y, grid.h()).map_err(|e| match e {
            IntegrationError::NonFinite { t, .. } => IntegrationError::NonFinite { t, step: Some(i) },
            other => other,
        })?;
        if record {
            trajectory.push((grid.node(i + 1), y));
        }
    }
    Ok(Integration {
        final_state: y,
        trajectory,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_field(_t: f64, y: &State4) -> State4 {
        State4::new(y.f1, 0.0, 0.0, 0.0)
    }

    #[test]
    fn zero_field_is_a_fixed_point() {
        let y = State4::new(1.0, 2.0, 3.0, 4.0);
        let out = rk4_step(&|_t: f64, _y: &State4| State4::ZERO, 0.0, &y, 0.1).unwrap();
        assert_eq!(out, y);
    }

    #[test]
    fn one_step_matches_hand_expansion() {
        // 1 + 1/2 + 1/8 + 1/48 + 1/384
        let out = rk4_step(&exp_field, 0.0, &State4::new(1.0, 0.0, 0.0, 0.0), 0.5).unwrap();
        assert_eq!(out.f1, 1.6484375);
    }

    #[test]
    fn exponential_over_unit_interval() {
        let grid = Grid::unit(100).unwrap();
        let out = integrate(&exp_field, &grid, State4::new(1.0, 0.0, 0.0, 0.0), false).unwrap();
        assert!((out.final_state.f1 - std::f64::consts::E).abs() < 1e-8);
        assert!(out.trajectory.is_empty());
    }

    #[test]
    fn zero_field_trajectory_length() {
        let grid = Grid::unit(1000).unwrap();
        let y0 = State4::new(0.3, -1.0, 2.5, 7.0);
        let out = integrate(&|_t: f64, _y: &State4| State4::ZERO, &grid, y0, true).unwrap();
        assert_eq!(out.trajectory.len(), 1001);
        assert_eq!(out.final_state, y0);
        assert_eq!(out.trajectory[0].0, 0.0);
        assert_eq!(out.trajectory[1000].0, 1.0);
    }

    #[test]
    fn last_node_is_exactly_t1() {
        for n in [3, 7, 10, 49, 1000, 4000] {
            let g = Grid::new(0.1, 0.7, n).unwrap();
            assert_eq!(g.node(n), 0.7);
            assert_eq!(g.node(0), 0.1);
        }
    }

    #[test]
    fn invalid_grids_rejected() {
        assert!(Grid::new(0.0, 1.0, 0).is_err());
        assert!(Grid::new(1.0, 1.0, 5).is_err());
        assert!(Grid::new(1.0, 0.0, 5).is_err());
        assert!(Grid::new(0.0, f64::INFINITY, 5).is_err());
    }

    #[test]
    fn blow_up_reports_step_index() {
        // y' = y^2 from y(0) = 1 blows up at t = 1
        let field = |_t: f64, y: &State4| State4::new(y.f1 * y.f1 * 1e150, 0.0, 0.0, 0.0);
        let grid = Grid::unit(10).unwrap();
        let err = integrate(&field, &grid, State4::new(1.0, 0.0, 0.0, 0.0), false).unwrap_err();
        match err {
            IntegrationError::NonFinite { step: Some(i), t } => {
                assert!(i < 10);
                assert!(t >= 0.0 && t <= 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_finite_initial_state_rejected() {
        let grid = Grid::unit(10).unwrap();
        let y0 = State4::new(f64::NAN, 0.0, 0.0, 1.0);
        assert_eq!(
            integrate(&exp_field, &grid, y0, false).unwrap_err(),
            IntegrationError::NonFiniteInitial
        );
    }
}
