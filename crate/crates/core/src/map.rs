//! The discrete pendulum map in translated coordinates,
//! `Δ²y_{n-1} - A·sin y_n = 0`, together with its equilibria and the
//! residual/tail diagnostics used everywhere else in the crate.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::window::Window;

pub const TWO_PI: f64 = 2.0 * PI;

/// Half the spacing-to-exclusion ratio used by the constrained sets: 2π/3.
pub const GAMMA: f64 = 2.0 * PI / 3.0;

/// Model parameters: the amplitude `A > 0` of the pendulum nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    amplitude: f64,
}

impl Params {
    pub fn new(amplitude: f64) -> Result<Self> {
        if !(amplitude > 0.0) || !amplitude.is_finite() {
            return Err(Error::OutOfRange {
                name: "amplitude",
                value: amplitude,
                range: "(0, inf)",
            });
        }
        Ok(Self { amplitude })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }
}

/// A point of the phase plane: position `y_n` and forward difference
/// `Δy_n = y_{n+1} - y_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub position: f64,
    pub velocity: f64,
}

impl PhaseState {
    pub fn new(position: f64, velocity: f64) -> Self {
        Self { position, velocity }
    }
}

/// One forward step: `y_{n+1} = 2·y_n - y_{n-1} + A·sin y_n`.
pub fn step(prev: f64, curr: f64, params: Params) -> f64 {
    2.0 * curr - prev + params.amplitude * curr.sin()
}

/// Exact inverse of [`step`]: `y_{n-1} = 2·y_n - y_{n+1} + A·sin y_n`.
pub fn step_back(curr: f64, next: f64, params: Params) -> f64 {
    2.0 * curr - next + params.amplitude * curr.sin()
}

/// One step of the phase-plane map `(y, Δy) ↦ (y + Δy, Δy + A·sin(y + Δy))`.
pub fn phase_step(state: PhaseState, params: Params) -> PhaseState {
    let position = state.position + state.velocity;
    PhaseState {
        position,
        velocity: state.velocity + params.amplitude * position.sin(),
    }
}

/// Analytic Jacobian of [`phase_step`] at `state`.
pub fn jacobian(state: PhaseState, params: Params) -> [[f64; 2]; 2] {
    let c = params.amplitude * (state.position + state.velocity).cos();
    [[1.0, 1.0], [c, 1.0 + c]]
}

/// Determinant of the analytic Jacobian of the phase-plane map.
///
/// The entries of [`jacobian`] give `1·(1 + c) - 1·c`, which simplifies to 1
/// for every state and amplitude: the map preserves area. The simplified form
/// is returned; the finite-difference determinant is checked in tests.
pub fn jacobian_det(_state: PhaseState, _params: Params) -> f64 {
    1.0
}

/// Index `k` of the equilibrium `2kπ` nearest to `y`. A tie at an odd
/// multiple of π breaks toward the lower even multiple.
pub fn equilibrium_multiple(y: f64) -> i64 {
    (y / TWO_PI - 0.5).ceil() as i64
}

/// Nearest point of the equilibrium set `Θ = {2kπ}` and the distance to it.
pub fn nearest_equilibrium(y: f64) -> (f64, f64) {
    let point = TWO_PI * equilibrium_multiple(y) as f64;
    (point, (y - point).abs())
}

/// Residual profile of a window: `r_n = Δ²y_{n-1} - A·sin y_n` for every
/// `n` in `[n₀-1, n₁+1]`, with the constant-tail extension supplying
/// out-of-window neighbors.
#[derive(Debug, Clone)]
pub struct ResidualProfile {
    pub first_index: i64,
    pub values: Vec<f64>,
    pub max_abs: f64,
}

impl ResidualProfile {
    pub fn value_at(&self, n: i64) -> Option<f64> {
        let off = n - self.first_index;
        if off < 0 {
            None
        } else {
            self.values.get(off as usize).copied()
        }
    }
}

pub fn residual(window: &Window, params: Params) -> ResidualProfile {
    let first = window.first_index() - 1;
    let last = window.last_index() + 1;
    let mut values = Vec::with_capacity((last - first + 1) as usize);
    let mut max_abs: f64 = 0.0;
    for n in first..=last {
        let r = residual_at(window, n, params);
        max_abs = max_abs.max(r.abs());
        values.push(r);
    }
    ResidualProfile {
        first_index: first,
        values,
        max_abs,
    }
}

fn residual_at(window: &Window, n: i64, params: Params) -> f64 {
    let prev = window.value_at(n - 1);
    let curr = window.value_at(n);
    let next = window.value_at(n + 1);
    (next - 2.0 * curr + prev) - params.amplitude * curr.sin()
}

/// Where a tail sits relative to the equilibrium set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailStatus {
    /// Nearest point of `Θ`, an exact representation of `2kπ`.
    pub point: f64,
    /// The integer `k` with `point = 2kπ`.
    pub multiple: i64,
    pub distance: f64,
    pub in_theta: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailClassification {
    pub left: TailStatus,
    pub right: TailStatus,
    /// Both tails within tolerance of `Θ`. A tail that stays a fixed distance
    /// from every equilibrium contributes `A(1-cos δ)` per site forever, so
    /// the sequence has infinite action.
    pub finite_action: bool,
}

pub fn tail_classify(window: &Window, tol: f64) -> TailClassification {
    let left = tail_status(window.left_tail(), tol);
    let right = tail_status(window.right_tail(), tol);
    TailClassification {
        left,
        right,
        finite_action: left.in_theta && right.in_theta,
    }
}

fn tail_status(value: f64, tol: f64) -> TailStatus {
    let multiple = equilibrium_multiple(value);
    let point = TWO_PI * multiple as f64;
    let distance = (value - point).abs();
    TailStatus {
        point,
        multiple,
        distance,
        in_theta: distance <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64) -> Params {
        Params::new(a).unwrap()
    }

    #[test]
    fn step_fixed_points() {
        assert_eq!(step(0.0, 0.0, params(1.0)), 0.0);
        assert_eq!(step(PI, PI, params(1.0)), PI);
        assert_eq!(step_back(0.0, 0.0, params(1.0)), 0.0);
    }

    #[test]
    fn step_matches_high_precision_evaluation() {
        // 0.2 + 0.1·sin(0.1), evaluated with 40-digit arithmetic.
        let expected = 0.20998334166468283;
        assert!((step(0.0, 0.1, params(0.1)) - expected).abs() < 1e-16);
        // and its inverse recovers the starting point
        assert!((step_back(0.1, expected, params(0.1)) - 0.0).abs() < 1e-15);
    }

    #[test]
    fn step_back_inverts_step() {
        let p = params(3.7);
        for (a, b) in [(0.3, -1.2), (10.0, 2.5), (-7.7, 0.01)] {
            let next = step(a, b, p);
            let back = step_back(b, next, p);
            assert!((back - a).abs() <= 1e-12 * a.abs().max(1.0), "{back} vs {a}");
        }
    }

    #[test]
    fn nearest_equilibrium_basics() {
        assert_eq!(nearest_equilibrium(0.0), (0.0, 0.0));
        let (p, d) = nearest_equilibrium(TWO_PI + 0.3);
        assert_eq!(p, TWO_PI);
        assert!((d - 0.3).abs() < 1e-15);
    }

    #[test]
    fn nearest_equilibrium_tie_breaks_low() {
        // Exactly between 0 and 2π: the lower multiple wins.
        let (p, d) = nearest_equilibrium(PI);
        assert_eq!(p, 0.0);
        assert_eq!(d, PI);
        // Same rule one period down: -π goes to -2π (its lower multiple).
        let (p, _) = nearest_equilibrium(-PI);
        assert_eq!(p, -TWO_PI);
        // 3π lies between 2π and 4π; the lower one wins.
        let (p, _) = nearest_equilibrium(3.0 * PI);
        assert_eq!(p, TWO_PI);
    }

    #[test]
    fn residual_of_equilibria_vanishes() {
        // sin(kπ) = 0 exactly only in exact arithmetic; the double nearest
        // to kπ leaves a ~k·1.2e-16 sine, so compare against that scale.
        for k in -2..=2 {
            let w = Window::constant(k as f64 * PI);
            let prof = residual(&w, params(2.5));
            assert!(prof.max_abs <= 1e-14, "k = {k}: {}", prof.max_abs);
        }
        assert_eq!(residual(&Window::constant(0.0), params(2.5)).max_abs, 0.0);
    }

    #[test]
    fn residual_of_pi_spike() {
        // window {y₀ = π} with zero tails, A = 1: profile (π, -2π, π).
        let w = Window::new(0, vec![PI], 0.0, 0.0).unwrap();
        let prof = residual(&w, params(1.0));
        assert_eq!(prof.first_index, -1);
        assert!((prof.value_at(-1).unwrap() - PI).abs() < 1e-15);
        assert!((prof.value_at(0).unwrap() + TWO_PI).abs() < 1e-15);
        assert!((prof.value_at(1).unwrap() - PI).abs() < 1e-15);
        assert!((prof.max_abs - TWO_PI).abs() < 1e-15);
    }

    #[test]
    fn stepped_orbit_has_tiny_residual() {
        let p = params(0.8);
        let (mut prev, mut curr) = (0.1, 0.15);
        let mut values = vec![prev, curr];
        for _ in 0..40 {
            let next = step(prev, curr, p);
            values.push(next);
            prev = curr;
            curr = next;
        }
        // Tails are wrong here, so only interior rows count.
        let w = Window::new(0, values, 0.0, 0.0).unwrap();
        let prof = residual(&w, p);
        for n in w.first_index() + 1..w.last_index() {
            assert!(prof.value_at(n).unwrap().abs() <= 1e-12, "n = {n}");
        }
    }

    #[test]
    fn jacobian_det_is_one() {
        assert_eq!(jacobian_det(PhaseState::new(0.0, 0.0), params(1.0)), 1.0);
        assert_eq!(jacobian_det(PhaseState::new(1.3, -0.7), params(10.0)), 1.0);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let p = params(1.0);
        let s = PhaseState::new(0.5, 0.2);
        let h = 1e-6;
        let fx = |st: PhaseState| phase_step(st, p);
        let dp = fx(PhaseState::new(s.position + h, s.velocity));
        let dm = fx(PhaseState::new(s.position - h, s.velocity));
        let vp = fx(PhaseState::new(s.position, s.velocity + h));
        let vm = fx(PhaseState::new(s.position, s.velocity - h));
        let fd = [
            [
                (dp.position - dm.position) / (2.0 * h),
                (vp.position - vm.position) / (2.0 * h),
            ],
            [
                (dp.velocity - dm.velocity) / (2.0 * h),
                (vp.velocity - vm.velocity) / (2.0 * h),
            ],
        ];
        let det = fd[0][0] * fd[1][1] - fd[0][1] * fd[1][0];
        assert!((det - 1.0).abs() < 1e-6, "fd determinant {det}");
        let analytic = jacobian(s, p);
        for i in 0..2 {
            for j in 0..2 {
                assert!((fd[i][j] - analytic[i][j]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn tail_classify_examples() {
        let w = Window::new(0, vec![1.0], 0.0, TWO_PI).unwrap();
        let c = tail_classify(&w, 1e-9);
        assert!(c.finite_action);
        assert_eq!(c.left.point, 0.0);
        assert_eq!(c.right.point, TWO_PI);
        assert_eq!(c.right.multiple, 1);

        let w = Window::new(0, vec![1.0], 0.0, PI).unwrap();
        let c = tail_classify(&w, 1e-2);
        assert!(!c.finite_action);
        assert!(!c.right.in_theta);

        let w = Window::new(0, vec![1.0], 1e-10, TWO_PI - 1e-10).unwrap();
        let c = tail_classify(&w, 1e-9);
        assert!(c.finite_action);
        assert_eq!(c.left.point, 0.0);
        assert_eq!(c.right.point, TWO_PI);
    }
}
