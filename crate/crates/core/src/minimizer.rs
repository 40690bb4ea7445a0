//! Constrained minimization of the action over sequences running from 0 to a
//! chosen equilibrium `ξ = 2kπ` while avoiding ε-neighborhoods of every other
//! equilibrium, plus continuation in ε, per-target sweeps of the minimal
//! action `c_ε(ξ)`, and certification of minimizers as orbits.
//!
//! The solver is a monotone projected-gradient method with spectral
//! (Barzilai-Borwein) step lengths and a tridiagonal Newton polish on the
//! inactive coordinates once the gradient is small. Every accepted iterate
//! is feasible and does not increase the action; iteration stops when the
//! gradient max-norm over inactive coordinates drops below `tol_grad`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::{action_raw, gradient_into};
use crate::error::{Error, Result};
use crate::map::{self, Params, GAMMA, TWO_PI};
use crate::window::Window;

/// Tolerance for tail matching in membership checks.
const TAIL_MATCH_TOL: f64 = 1e-9;
/// Slack below which a distance-to-ball comparison counts as a violation.
const BALL_SLACK: f64 = 1e-12;
/// A coordinate within this distance of a ball boundary counts as "at" it.
const ACTIVE_TOL: f64 = 1e-9;

/// The constraint data: exclusion radius ε and target equilibrium `ξ = 2kπ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintSpec {
    epsilon: f64,
    target_multiple: i64,
}

impl ConstraintSpec {
    pub fn new(epsilon: f64, target_multiple: i64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < GAMMA) {
            return Err(Error::OutOfRange {
                name: "epsilon",
                value: epsilon,
                range: "(0, 2*pi/3)",
            });
        }
        if target_multiple == 0 {
            return Err(Error::InvalidArgument(
                "target multiple must be nonzero (the run starts at 0)".into(),
            ));
        }
        Ok(Self {
            epsilon,
            target_multiple,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn target_multiple(&self) -> i64 {
        self.target_multiple
    }

    /// The target equilibrium ξ.
    pub fn target(&self) -> f64 {
        TWO_PI * self.target_multiple as f64
    }

    /// Nearest forbidden equilibrium to `v`, if `v` lies strictly inside its
    /// ε-ball. Only the nearest equilibrium can be within ε of `v`, since
    /// ε < 2π/3 keeps the balls well separated.
    fn violated_ball(&self, v: f64) -> Option<(i64, f64, f64)> {
        let k = map::equilibrium_multiple(v);
        if k == 0 || k == self.target_multiple {
            return None;
        }
        let point = TWO_PI * k as f64;
        let dist = (v - point).abs();
        if dist < self.epsilon - BALL_SLACK {
            Some((k, point, dist))
        } else {
            None
        }
    }
}

/// One value inside a forbidden neighborhood.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallViolation {
    pub index: i64,
    pub equilibrium: f64,
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub is_member: bool,
    pub left_tail_ok: bool,
    pub right_tail_ok: bool,
    pub violations: Vec<BallViolation>,
}

/// Does the window represent an element of the constrained set: left tail 0,
/// right tail ξ, and no value inside `B_ε` of any other equilibrium?
pub fn membership(window: &Window, spec: &ConstraintSpec) -> MembershipReport {
    let left_tail_ok = window.left_tail().abs() <= TAIL_MATCH_TOL;
    let right_tail_ok = (window.right_tail() - spec.target()).abs() <= TAIL_MATCH_TOL;
    let mut violations = Vec::new();
    for (i, &v) in window.values().iter().enumerate() {
        if let Some((_, point, dist)) = spec.violated_ball(v) {
            violations.push(BallViolation {
                index: window.first_index() + i as i64,
                equilibrium: point,
                distance: dist,
            });
        }
    }
    MembershipReport {
        is_member: left_tail_ok && right_tail_ok && violations.is_empty(),
        left_tail_ok,
        right_tail_ok,
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    /// Stop when the gradient max-norm over inactive coordinates is below this.
    pub tol_grad: f64,
    /// Residual bound a certified orbit must satisfy.
    pub tol_residual: f64,
    pub max_iter: u64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            tol_grad: 1e-10,
            tol_residual: 1e-8,
            max_iter: 100_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub window: Window,
    pub action_value: f64,
    /// Max |residual| over the window indices `[n₀, n₁]`. Rows `n₀-1` and
    /// `n₁+1` measure tail compatibility instead and are reported by
    /// [`map::residual`].
    pub max_residual: f64,
    /// Any coordinate pinned against a forbidden-ball boundary?
    pub constraint_active: bool,
    pub active_indices: Vec<i64>,
    pub iterations: u64,
    pub converged: bool,
}

/// Default window half-width: 20 e-foldings of the continuum decay rate √A,
/// clamped to `[16, 100_000]`.
pub fn auto_half_width(params: Params) -> usize {
    let n = (20.0 / params.amplitude().sqrt()).ceil();
    (n as usize).clamp(16, 100_000)
}

/// The default initial profile: the continuum separatrix shape scaled to the
/// target, `y_n = (ξ/2π)·4·arctan(exp(√A·n))` on `[-N, N]`. It has the right
/// tails and a monotone shape for every tested amplitude.
pub fn default_profile(params: Params, spec: &ConstraintSpec, half_width: usize) -> Window {
    let n = half_width as i64;
    let rate = params.amplitude().sqrt();
    let scale = spec.target_multiple() as f64;
    let values: Vec<f64> = (-n..=n)
        .map(|i| scale * 4.0 * (rate * i as f64).exp().atan())
        .collect();
    let mut w = Window::new(-n, values, 0.0, spec.target()).expect("finite profile");
    project_window(&mut w, spec);
    w
}

fn project_window(window: &mut Window, spec: &ConstraintSpec) {
    let first = window.first_index();
    let left = window.left_tail();
    let right = window.right_tail();
    let mut values = window.values().to_vec();
    let prev = values.clone();
    project_values(&mut values, &prev, spec);
    *window = Window::new(first, values, left, right).expect("projection keeps values finite");
}

/// Move every coordinate inside a forbidden ball to the nearest boundary
/// point. An exact hit on a ball center takes the side of its previous
/// value, and the side toward 0 if the previous value was the center too.
fn project_values(values: &mut [f64], prev: &[f64], spec: &ConstraintSpec) {
    let eps = spec.epsilon();
    for (v, &p) in values.iter_mut().zip(prev) {
        if let Some((_, point, _)) = spec.violated_ball(*v) {
            *v = if *v > point {
                point + eps
            } else if *v < point {
                point - eps
            } else if p > point {
                point + eps
            } else if p < point {
                point - eps
            } else if point > 0.0 {
                point - eps
            } else {
                point + eps
            };
        }
    }
}

/// Indices pinned at a ball boundary with the gradient pushing inward.
fn binding_set(values: &[f64], grad: &[f64], spec: &ConstraintSpec, out: &mut Vec<usize>) {
    out.clear();
    let eps = spec.epsilon();
    for (i, (&v, &g)) in values.iter().zip(grad).enumerate() {
        let k = map::equilibrium_multiple(v);
        if k == 0 || k == spec.target_multiple() {
            continue;
        }
        let point = TWO_PI * k as f64;
        let dist = (v - point).abs();
        if (dist - eps).abs() <= ACTIVE_TOL {
            let inward_blocked = if v >= point { g > 0.0 } else { g < 0.0 };
            if inward_blocked {
                out.push(i);
            }
        }
    }
}

struct Solver<'a> {
    spec: &'a ConstraintSpec,
    amplitude: f64,
    first_index: i64,
    left: f64,
    right: f64,
    opts: MinimizeOptions,
}

impl Solver<'_> {
    fn action(&self, values: &[f64]) -> f64 {
        action_raw(self.left, values, self.right, self.amplitude)
    }

    fn gradient(&self, values: &[f64], out: &mut [f64]) {
        gradient_into(self.left, values, self.right, self.amplitude, out);
    }

    /// Newton step restricted to the free coordinates: the Hessian is
    /// tridiagonal with diagonal `2 + A·cos y_i` and off-diagonal -1, and
    /// pinned coordinates split it into independent segments solved by the
    /// Thomas algorithm. Returns false when a pivot degenerates.
    fn newton_direction(
        &self,
        values: &[f64],
        grad: &[f64],
        binding: &[usize],
        dir: &mut [f64],
    ) -> bool {
        let m = values.len();
        dir.iter_mut().for_each(|d| *d = 0.0);
        let mut is_bound = vec![false; m];
        for &i in binding {
            is_bound[i] = true;
        }
        let mut seg_start = None;
        for i in 0..=m {
            let free = i < m && !is_bound[i];
            match (seg_start, free) {
                (None, true) => seg_start = Some(i),
                (Some(s), false) => {
                    if !self.solve_segment(values, grad, s, i, dir) {
                        return false;
                    }
                    seg_start = None;
                }
                _ => {}
            }
        }
        true
    }

    fn solve_segment(
        &self,
        values: &[f64],
        grad: &[f64],
        start: usize,
        end: usize,
        dir: &mut [f64],
    ) -> bool {
        let n = end - start;
        let mut c = vec![0.0; n]; // scratch superdiagonal
        let mut d = vec![0.0; n]; // scratch rhs
        let mut pivot = 2.0 + self.amplitude * values[start].cos();
        if pivot.abs() < 1e-12 {
            return false;
        }
        c[0] = -1.0 / pivot;
        d[0] = -grad[start] / pivot;
        for j in 1..n {
            let b = 2.0 + self.amplitude * values[start + j].cos();
            pivot = b + c[j - 1];
            if pivot.abs() < 1e-12 {
                return false;
            }
            c[j] = -1.0 / pivot;
            d[j] = (-grad[start + j] + d[j - 1]) / pivot;
        }
        dir[start + n - 1] = d[n - 1];
        for j in (0..n - 1).rev() {
            dir[start + j] = d[j] - c[j] * dir[start + j + 1];
        }
        dir.iter().skip(start).take(n).all(|v| v.is_finite())
    }

    fn run(&self, init: Vec<f64>) -> (MinimizeResult, Vec<f64>) {
        let m = init.len();
        let mut y = init;
        let mut prev_for_ties = y.clone();
        project_values(&mut y, &prev_for_ties, self.spec);

        let mut j = self.action(&y);
        let mut g = vec![0.0; m];
        self.gradient(&y, &mut g);

        let mut binding: Vec<usize> = Vec::new();
        let mut trial = vec![0.0; m];
        let mut g_trial = vec![0.0; m];
        let mut newton = vec![0.0; m];

        let mut trace = vec![j];
        let mut iterations = 0u64;
        let mut converged = false;
        let fallback_step = 1.0 / (4.0 + self.amplitude);
        let mut bb_step = fallback_step;

        loop {
            binding_set(&y, &g, self.spec, &mut binding);
            let g_free = free_grad_norm(&g, &binding);
            if g_free <= self.opts.tol_grad {
                converged = true;
                break;
            }
            if iterations >= self.opts.max_iter {
                break;
            }

            let mut accepted = false;

            // Near-stationary: try the quadratically convergent polish first.
            if g_free <= 1e-3
                && self.newton_direction(&y, &g, &binding, &mut newton)
            {
                let mut t = 1.0;
                for _ in 0..8 {
                    for i in 0..m {
                        trial[i] = y[i] + t * newton[i];
                    }
                    project_values(&mut trial, &y, self.spec);
                    let j_trial = self.action(&trial);
                    if j_trial <= j {
                        accepted = step_differs(&y, &trial);
                        if accepted {
                            prev_for_ties.copy_from_slice(&y);
                            self.accept(&mut y, &mut g, &mut g_trial, &trial, j_trial, &mut j);
                        }
                        break;
                    }
                    t *= 0.25;
                }
            }

            if !accepted {
                // Spectral projected gradient with monotone backtracking.
                let mut t = bb_step.clamp(1e-12, 1e6);
                let mut stalled = true;
                for _ in 0..60 {
                    for i in 0..m {
                        trial[i] = y[i] - t * g[i];
                    }
                    project_values(&mut trial, &y, self.spec);
                    if !step_differs(&y, &trial) {
                        t *= 0.5;
                        continue;
                    }
                    let j_trial = self.action(&trial);
                    let slope: f64 = trial
                        .iter()
                        .zip(&y)
                        .zip(&g)
                        .map(|((tv, yv), gv)| (tv - yv) * gv)
                        .sum();
                    if j_trial <= j + 1e-4 * slope.min(0.0) && j_trial <= j {
                        // Barzilai-Borwein length from the accepted move.
                        self.gradient(&trial, &mut g_trial);
                        let mut ss = 0.0;
                        let mut sg = 0.0;
                        for i in 0..m {
                            let s = trial[i] - y[i];
                            ss += s * s;
                            sg += s * (g_trial[i] - g[i]);
                        }
                        bb_step = if sg > 0.0 { ss / sg } else { fallback_step };
                        prev_for_ties.copy_from_slice(&y);
                        y.copy_from_slice(&trial);
                        g.copy_from_slice(&g_trial);
                        j = j_trial;
                        accepted = true;
                        stalled = false;
                        break;
                    }
                    t *= 0.5;
                }
                if stalled && !accepted {
                    // No decreasing feasible step exists at this precision.
                    converged = free_grad_norm(&g, &binding) <= self.opts.tol_grad;
                    break;
                }
            }

            iterations += 1;
            trace.push(j);
            debug_assert!(
                y.iter().all(|v| self.spec.violated_ball(*v).is_none()),
                "iterate left the feasible set"
            );
        }

        binding_set(&y, &g, self.spec, &mut binding);
        let active_indices: Vec<i64> = binding
            .iter()
            .map(|&i| self.first_index + i as i64)
            .collect();
        let max_residual = g.iter().fold(0.0_f64, |acc, &v| acc.max(v.abs()));
        let window = Window::new(self.first_index, y, self.left, self.right)
            .expect("solver keeps values finite");
        (
            MinimizeResult {
                window,
                action_value: j,
                max_residual,
                constraint_active: !active_indices.is_empty(),
                active_indices,
                iterations,
                converged,
            },
            trace,
        )
    }

    fn accept(
        &self,
        y: &mut [f64],
        g: &mut [f64],
        g_scratch: &mut [f64],
        trial: &[f64],
        j_trial: f64,
        j: &mut f64,
    ) {
        y.copy_from_slice(trial);
        self.gradient(y, g_scratch);
        g.copy_from_slice(g_scratch);
        *j = j_trial;
    }
}

fn step_differs(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x != y)
}

fn free_grad_norm(grad: &[f64], binding: &[usize]) -> f64 {
    let mut max = 0.0_f64;
    let mut b = binding.iter().peekable();
    for (i, &g) in grad.iter().enumerate() {
        if b.peek() == Some(&&i) {
            b.next();
            continue;
        }
        max = max.max(g.abs());
    }
    max
}

/// Minimize the action over the constrained set on a window of half-width
/// `half_width` (used when `init` is `None`; an explicit `init` supplies its
/// own geometry and must already be a member of the constrained set).
pub fn minimize(
    params: Params,
    spec: &ConstraintSpec,
    half_width: usize,
    init: Option<&Window>,
    opts: &MinimizeOptions,
) -> Result<MinimizeResult> {
    Ok(minimize_traced(params, spec, half_width, init, opts)?.0)
}

/// Like [`minimize`], additionally returning the action value of every
/// accepted iterate (non-increasing by construction).
pub fn minimize_traced(
    params: Params,
    spec: &ConstraintSpec,
    half_width: usize,
    init: Option<&Window>,
    opts: &MinimizeOptions,
) -> Result<(MinimizeResult, Vec<f64>)> {
    if !(opts.tol_grad > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol_grad must be positive, got {}",
            opts.tol_grad
        )));
    }
    if opts.max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
    }

    let (first_index, values) = match init {
        Some(w) => {
            let report = membership(w, spec);
            if !report.is_member {
                return Err(Error::InfeasibleInit {
                    reason: describe_membership_failure(&report),
                });
            }
            (w.first_index(), w.values().to_vec())
        }
        None => {
            if half_width < 4 {
                return Err(Error::InvalidArgument(format!(
                    "window half-width must be at least 4, got {half_width}"
                )));
            }
            let w = default_profile(params, spec, half_width);
            (w.first_index(), w.values().to_vec())
        }
    };

    let solver = Solver {
        spec,
        amplitude: params.amplitude(),
        first_index,
        left: 0.0,
        right: spec.target(),
        opts: *opts,
    };
    Ok(solver.run(values))
}

fn describe_membership_failure(report: &MembershipReport) -> String {
    if !report.left_tail_ok {
        return "left tail must equal 0".into();
    }
    if !report.right_tail_ok {
        return "right tail must equal the target equilibrium".into();
    }
    match report.violations.first() {
        Some(v) => format!(
            "value at index {} lies inside the forbidden ball around {}",
            v.index, v.equilibrium
        ),
        None => "not a member".into(),
    }
}

/// Per-stage summary of a continuation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageRecord {
    pub epsilon: f64,
    pub action_value: f64,
    pub iterations: u64,
    pub converged: bool,
    pub constraint_active: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CertificateStatus {
    /// The final minimizer has inactive constraints and residual below
    /// tolerance: it is an orbit of the recurrence to working precision.
    Granted,
    Denied {
        /// Equilibrium balls still touched at the final stage, as
        /// (index, equilibrium) pairs.
        touched: Vec<(i64, f64)>,
        max_residual: f64,
        converged: bool,
    },
}

#[derive(Debug, Clone)]
pub struct HeteroclinicResult {
    pub stages: Vec<StageRecord>,
    pub result: MinimizeResult,
    pub certificate: CertificateStatus,
}

impl HeteroclinicResult {
    pub fn certified(&self) -> bool {
        matches!(self.certificate, CertificateStatus::Granted)
    }
}

/// Minimize along a decreasing ε-schedule, warm-starting each stage from the
/// previous minimizer, and certify the final iterate. Action values are
/// non-increasing along the schedule: shrinking ε only enlarges the feasible
/// set, and every stage starts from the previous minimizer.
pub fn heteroclinic(
    params: Params,
    target_multiple: i64,
    schedule: &[f64],
    half_width: Option<usize>,
    opts: &MinimizeOptions,
) -> Result<HeteroclinicResult> {
    if schedule.is_empty() {
        return Err(Error::InvalidArgument("epsilon schedule is empty".into()));
    }
    for pair in schedule.windows(2) {
        if pair[1] >= pair[0] {
            return Err(Error::InvalidArgument(format!(
                "epsilon schedule must be strictly decreasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }

    let n = half_width
        .unwrap_or_else(|| auto_half_width(params) * target_multiple.unsigned_abs().max(1) as usize);

    let mut stages = Vec::with_capacity(schedule.len());
    let mut current: Option<MinimizeResult> = None;
    for &eps in schedule {
        let spec = ConstraintSpec::new(eps, target_multiple)?;
        let result = match &current {
            None => minimize(params, &spec, n, None, opts)?,
            Some(prev) => minimize(params, &spec, n, Some(&prev.window), opts)?,
        };
        stages.push(StageRecord {
            epsilon: eps,
            action_value: result.action_value,
            iterations: result.iterations,
            converged: result.converged,
            constraint_active: result.constraint_active,
        });
        current = Some(result);
    }

    let result = current.expect("schedule is nonempty");
    let last_spec = ConstraintSpec::new(schedule[schedule.len() - 1], target_multiple)?;
    let certificate = if result.converged
        && !result.constraint_active
        && result.max_residual <= opts.tol_residual
    {
        CertificateStatus::Granted
    } else {
        let touched = result
            .active_indices
            .iter()
            .map(|&i| {
                let (point, _) = map::nearest_equilibrium(result.window.value_at(i));
                (i, point)
            })
            .collect();
        let _ = last_spec;
        CertificateStatus::Denied {
            touched,
            max_residual: result.max_residual,
            converged: result.converged,
        }
    };

    Ok(HeteroclinicResult {
        stages,
        result,
        certificate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepEntry {
    pub target_multiple: i64,
    pub c_value: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub epsilon: f64,
    pub entries: Vec<SweepEntry>,
    /// Targets whose value ties the minimum within 1e-6 relative.
    pub minimizing_targets: Vec<i64>,
    /// Minimum recorded value over the targets.
    pub c_epsilon: f64,
}

/// Estimate `c_ε(ξ)` for every requested target by multi-start minimization
/// (smooth default profile, piecewise-constant jump, and a seeded random
/// perturbation), then report the minimizing-target set and the global
/// minimum. A target that fails to converge is marked, not fatal.
pub fn c_epsilon_sweep(
    params: Params,
    epsilon: f64,
    targets: &[i64],
    half_width: Option<usize>,
    opts: &MinimizeOptions,
    seed: u64,
) -> Result<SweepResult> {
    if targets.is_empty() {
        return Err(Error::InvalidArgument("target list is empty".into()));
    }
    let mut entries = Vec::with_capacity(targets.len());
    for &k in targets {
        let spec = ConstraintSpec::new(epsilon, k)?;
        let n = half_width.unwrap_or_else(|| auto_half_width(params) * k.unsigned_abs() as usize);
        let mut best: Option<MinimizeResult> = None;
        for init in multi_starts(params, &spec, n, seed) {
            let result = minimize(params, &spec, n, Some(&init), opts)?;
            let better = match &best {
                None => true,
                Some(b) => result.action_value < b.action_value,
            };
            if better {
                best = Some(result);
            }
        }
        let best = best.expect("at least three starts");
        entries.push(SweepEntry {
            target_multiple: k,
            c_value: best.action_value,
            converged: best.converged,
        });
    }
    let c_epsilon = entries
        .iter()
        .map(|e| e.c_value)
        .fold(f64::INFINITY, f64::min);
    let minimizing_targets = entries
        .iter()
        .filter(|e| e.c_value <= c_epsilon * (1.0 + 1e-6) + f64::MIN_POSITIVE)
        .map(|e| e.target_multiple)
        .collect();
    Ok(SweepResult {
        epsilon,
        entries,
        minimizing_targets,
        c_epsilon,
    })
}

fn multi_starts(
    params: Params,
    spec: &ConstraintSpec,
    half_width: usize,
    seed: u64,
) -> Vec<Window> {
    let n = half_width as i64;
    let smooth = default_profile(params, spec, half_width);

    let jump_values: Vec<f64> = (-n..=n)
        .map(|i| if i < 0 { 0.0 } else { spec.target() })
        .collect();
    let mut jump = Window::new(-n, jump_values, 0.0, spec.target()).expect("finite");
    project_window(&mut jump, spec);

    let mut rng = ChaCha8Rng::seed_from_u64(
        seed ^ (spec.target_multiple() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
    );
    let noisy_values: Vec<f64> = smooth
        .values()
        .iter()
        .map(|v| v + rng.random_range(-0.3..0.3))
        .collect();
    let mut noisy = Window::new(-n, noisy_values, 0.0, spec.target()).expect("finite");
    project_window(&mut noisy, spec);

    vec![smooth, jump, noisy]
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyReport {
    pub epsilon: f64,
    pub c_two_pi: f64,
    pub c_four_pi: f64,
    /// Required gap, `0.5 · c_ε(2π)`.
    pub required_margin: f64,
    pub pass: bool,
    pub all_converged: bool,
}

/// Compare the minimal actions toward 2π and 4π: the 4π connection must
/// exceed the 2π one by at least half of the latter, the numerical surrogate
/// for the strict gap that confines minimizing targets to the adjacent
/// equilibria.
pub fn adjacency_check(
    params: Params,
    epsilon: f64,
    half_width: Option<usize>,
    opts: &MinimizeOptions,
    seed: u64,
) -> Result<AdjacencyReport> {
    let sweep = c_epsilon_sweep(params, epsilon, &[1, 2], half_width, opts, seed)?;
    let c2 = sweep.entries[0].c_value;
    let c4 = sweep.entries[1].c_value;
    let required_margin = 0.5 * c2;
    Ok(AdjacencyReport {
        epsilon,
        c_two_pi: c2,
        c_four_pi: c4,
        required_margin,
        pass: c4 - c2 >= required_margin,
        all_converged: sweep.entries.iter().all(|e| e.converged),
    })
}
