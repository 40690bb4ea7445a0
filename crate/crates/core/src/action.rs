//! The variational layer: the action functional
//! `J(y) = Σ [½|Δy_n|² + A(1 - cos y_n)]`, its truncations and gradient, the
//! sequence-space norm and inner product, and the explicit constants and
//! lower bounds attached to the constrained minimization problem.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::map::{self, Params, GAMMA};
use crate::window::Window;

/// Tails farther than this from `Θ = {2kπ}` make the full action diverge.
pub const TAIL_TOL: f64 = 1e-9;

/// Left-to-right compensated (Neumaier) summation. Keeps the 1e-12 symmetry
/// tolerances honest on long windows.
fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// Full action over the support of (`left`, `values`, `right`): kinetic terms
/// for `n ∈ [n₀-1, n₁]`, potential terms for `n ∈ [n₀, n₁]`. All terms beyond
/// that range vanish when the tails are exact equilibria.
pub(crate) fn action_raw(left: f64, values: &[f64], right: f64, amplitude: f64) -> f64 {
    let m = values.len();
    let terms = (0..=m).map(|i| {
        let a = if i == 0 { left } else { values[i - 1] };
        let b = if i == m { right } else { values[i] };
        let d = b - a;
        let mut t = 0.5 * d * d;
        if i < m {
            t += amplitude * (1.0 - values[i].cos());
        }
        t
    });
    compensated_sum(terms)
}

/// The action `J` of a window whose tails lie in `Θ`.
///
/// Tail terms vanish because the differences are zero there and
/// `1 - cos(2kπ) = 0`, so the finite sum over `[n₀-1, n₁]` is the exact
/// value. Tails within [`TAIL_TOL`] of `Θ` are snapped to the equilibrium
/// point; farther tails mean `J = +∞` and produce an error.
pub fn action(window: &Window, params: Params) -> Result<f64> {
    let class = map::tail_classify(window, TAIL_TOL);
    if !class.left.in_theta {
        return Err(Error::TailNotEquilibrium {
            side: "left",
            value: window.left_tail(),
            distance: class.left.distance,
            limit: TAIL_TOL,
        });
    }
    if !class.right.in_theta {
        return Err(Error::TailNotEquilibrium {
            side: "right",
            value: window.right_tail(),
            distance: class.right.distance,
            limit: TAIL_TOL,
        });
    }
    Ok(action_raw(
        class.left.point,
        window.values(),
        class.right.point,
        params.amplitude(),
    ))
}

/// Truncated action `J(s,t,y) = Σ_{n=s}^{t} [½|Δy_n|² + A(1 - cos y_n)]`,
/// evaluated on the constant-tail extension. No tail condition is needed:
/// the sum is finite for any window.
pub fn action_partial(s: i64, t: i64, window: &Window, params: Params) -> Result<f64> {
    if s > t {
        return Err(Error::InvalidRange { s, t });
    }
    let a = params.amplitude();
    let terms = (s..=t).map(|n| {
        let v = window.value_at(n);
        let d = window.value_at(n + 1) - v;
        0.5 * d * d + a * (1.0 - v.cos())
    });
    Ok(compensated_sum(terms))
}

/// Gradient of the finite-support action with the tails held fixed:
/// `∂J/∂y_n = -Δ²y_{n-1} + A·sin y_n`, the negated map residual.
pub(crate) fn gradient_into(
    left: f64,
    values: &[f64],
    right: f64,
    amplitude: f64,
    out: &mut [f64],
) {
    let m = values.len();
    debug_assert_eq!(out.len(), m);
    for i in 0..m {
        let prev = if i == 0 { left } else { values[i - 1] };
        let next = if i + 1 == m { right } else { values[i + 1] };
        let v = values[i];
        out[i] = -(next - 2.0 * v + prev) + amplitude * v.sin();
    }
}

/// Gradient components over the window indices `[n₀, n₁]`.
pub fn gradient(window: &Window, params: Params) -> Vec<f64> {
    let mut out = vec![0.0; window.len()];
    gradient_into(
        window.left_tail(),
        window.values(),
        window.right_tail(),
        params.amplitude(),
        &mut out,
    );
    out
}

/// Inner product `⟨x, y⟩ = Σ Δx_k·Δy_k + x₀·y₀` of two windows on their
/// common constant-tail extension.
pub fn h_inner(a: &Window, b: &Window) -> f64 {
    let lo = a.first_index().min(b.first_index()) - 1;
    let hi = a.last_index().max(b.last_index());
    let terms = (lo..=hi).map(|n| {
        let da = a.value_at(n + 1) - a.value_at(n);
        let db = b.value_at(n + 1) - b.value_at(n);
        da * db
    });
    compensated_sum(terms) + a.value_at(0) * b.value_at(0)
}

/// Norm `‖y‖ = (Σ(Δy_k)² + y₀²)^{1/2}`.
pub fn h_norm(window: &Window) -> f64 {
    h_inner(window, window).sqrt()
}

/// `α_ε = min over t ∉ B_ε(Θ) of (1 - cos t)`, which the cosine's shape
/// pins to the boundary of the excluded neighborhood: `1 - cos ε`.
/// Evaluated as `2·sin²(ε/2)` to avoid cancellation for small ε.
pub fn alpha(epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon <= PI) {
        return Err(Error::OutOfRange {
            name: "epsilon",
            value: epsilon,
            range: "(0, pi]",
        });
    }
    let s = (0.5 * epsilon).sin();
    Ok(2.0 * s * s)
}

/// Ordered, pairwise-disjoint integer intervals `[n_k, m_k]` with `n_k < m_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalList {
    intervals: Vec<(i64, i64)>,
}

impl IntervalList {
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self> {
        for &(n, m) in &intervals {
            if n >= m {
                return Err(Error::InvalidArgument(format!(
                    "interval ({n}, {m}) must satisfy n < m"
                )));
            }
        }
        for pair in intervals.windows(2) {
            let (_, m0) = pair[0];
            let (n1, _) = pair[1];
            if m0 >= n1 {
                return Err(Error::InvalidArgument(format!(
                    "intervals must be strictly increasing and disjoint, got ..{m0} then {n1}.."
                )));
            }
        }
        Ok(Self { intervals })
    }

    pub fn empty() -> Self {
        Self { intervals: vec![] }
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        &self.intervals
    }
}

/// Lower bound versus actual action value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub bound_value: f64,
    pub action_value: f64,
    /// `action_value - bound_value`; nonnegative whenever the hypothesis holds.
    pub slack: f64,
}

/// The displacement lower bound: when every `y_i` with `i` in the given
/// intervals stays outside `B_ε(Θ)`,
/// `J(y) ≥ √(2A·α_ε) · Σ_k |y_{m_k} - y_{n_k}|`.
///
/// The hypothesis is checked index by index; a violating value aborts with
/// the offending index.
pub fn lemma2_bound(
    window: &Window,
    intervals: &IntervalList,
    epsilon: f64,
    params: Params,
) -> Result<BoundReport> {
    let alpha_eps = alpha(epsilon)?;
    for &(n, m) in intervals.intervals() {
        for i in n..=m {
            let v = window.value_at(i);
            let (point, dist) = map::nearest_equilibrium(v);
            if dist < epsilon {
                return Err(Error::HypothesisViolated {
                    index: i,
                    value: v,
                    equilibrium: point,
                });
            }
        }
    }
    let action_value = action(window, params)?;
    let displacement: f64 = intervals
        .intervals()
        .iter()
        .map(|&(n, m)| (window.value_at(m) - window.value_at(n)).abs())
        .sum();
    let bound_value = (2.0 * params.amplitude() * alpha_eps).sqrt() * displacement;
    Ok(BoundReport {
        bound_value,
        action_value,
        slack: action_value - bound_value,
    })
}

/// Largest `δ > 0` with `6δ < ε` and `½(2δ)² + δ² < √(2A·α_δ)·ε/6`,
/// located by bisection on the margin; the returned value sits within
/// 1e-10 of the supremum of the admissible set and satisfies both strict
/// inequalities.
pub fn find_delta(epsilon: f64, params: Params) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < GAMMA) {
        return Err(Error::OutOfRange {
            name: "epsilon",
            value: epsilon,
            range: "(0, 2*pi/3)",
        });
    }
    let a = params.amplitude();
    let admissible = |d: f64| -> bool {
        if !(6.0 * d < epsilon) {
            return false;
        }
        let alpha_d = alpha(d).expect("0 < d < eps/6 < pi");
        let margin = (2.0 * a * alpha_d).sqrt() * epsilon / 6.0 - (0.5 * (2.0 * d).powi(2) + d * d);
        margin > 0.0
    };

    // The admissible set is an interval (0, sup): bracket it and bisect.
    let mut hi = epsilon;
    let mut lo = epsilon / 12.0;
    let mut shrink = 0;
    while !admissible(lo) {
        lo /= 2.0;
        shrink += 1;
        if shrink > 2000 {
            unreachable!("margin is positive on a right neighborhood of zero");
        }
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if admissible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
