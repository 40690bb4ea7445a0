//! Runtime verification suites behind `dpend verify`: seeded randomized
//! re-checks of the library's mathematical guarantees, reported
//! machine-readably. These run release-speed and are also reused by the
//! acceptance tests.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use dpend::action::{self, IntervalList};
use dpend::map;
use dpend::minimizer::{self, MinimizeOptions};
use dpend::{Params, PhaseState, Window, TWO_PI};

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub detail: String,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
    pub all_passed: bool,
}

pub const SUITES: &[&str] = &[
    "lemma2",
    "symmetry",
    "norm",
    "gradient",
    "map",
    "alpha",
    "monotonicity",
    "adjacency",
];

pub fn run_suites(names: &[String], amplitude: f64, seed: u64) -> Result<VerifyReport, CliError> {
    let selected: Vec<&str> = if names.iter().any(|n| n == "all") {
        SUITES.to_vec()
    } else {
        let mut out = Vec::new();
        for n in names {
            if !SUITES.contains(&n.as_str()) {
                return Err(CliError::invalid(format!(
                    "unknown suite {n:?}; available: {} or all",
                    SUITES.join(", ")
                )));
            }
            out.push(n.as_str());
        }
        out
    };
    let params = Params::new(amplitude)
        .map_err(|e| CliError::invalid(format!("amplitude: {e}")))?;

    let mut suites = Vec::new();
    for name in selected {
        let report = match name {
            "lemma2" => lemma2_suite(seed, 1000),
            "symmetry" => symmetry_suite(seed, 200),
            "norm" => norm_suite(seed, 200),
            "gradient" => gradient_suite(seed, 100),
            "map" => map_suite(seed),
            "alpha" => alpha_suite(),
            "monotonicity" => monotonicity_suite(params, seed),
            "adjacency" => adjacency_suite(params, seed),
            _ => unreachable!(),
        };
        suites.push(report);
    }
    let all_passed = suites.iter().all(SuiteReport::passed);
    Ok(VerifyReport { suites, all_passed })
}

fn random_window(rng: &mut ChaCha8Rng) -> Window {
    let len = rng.random_range(3..40);
    let first = rng.random_range(-15i64..15);
    let values: Vec<f64> = (0..len).map(|_| rng.random_range(-8.0..8.0)).collect();
    let left = TWO_PI * rng.random_range(-1i64..=1) as f64;
    let right = TWO_PI * rng.random_range(-1i64..=1) as f64;
    Window::new(first, values, left, right).unwrap()
}

/// Randomized lower-bound suite: windows adjusted to satisfy the hypothesis
/// on random disjoint intervals must have nonnegative slack.
pub fn lemma2_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..cases {
        let a = rng.random_range(0.05..10.0);
        let eps = rng.random_range(0.02..PI / 2.0);
        let len = rng.random_range(8usize..60);
        let first = rng.random_range(-20i64..20);
        let mut values: Vec<f64> = (0..len)
            .map(|_| rng.random_range(-3.0 * TWO_PI..3.0 * TWO_PI))
            .collect();
        let left = TWO_PI * rng.random_range(-2i64..=2) as f64;
        let right = TWO_PI * rng.random_range(-2i64..=2) as f64;

        let mut intervals = Vec::new();
        let mut cursor = first;
        let last = first + len as i64 - 1;
        for _ in 0..rng.random_range(1..4) {
            let n = cursor + rng.random_range(0..6);
            let m = n + rng.random_range(1..6);
            if m > last {
                break;
            }
            intervals.push((n, m));
            cursor = m + 1 + rng.random_range(0..3);
        }
        for &(n, m) in &intervals {
            for i in n..=m {
                let idx = (i - first) as usize;
                let v = values[idx];
                let (point, dist) = map::nearest_equilibrium(v);
                if dist < eps {
                    let side = if v >= point { 1.0 } else { -1.0 };
                    values[idx] = point + side * (eps + rng.random_range(0.01..0.5));
                }
            }
        }
        let w = Window::new(first, values, left, right).unwrap();
        let iv = IntervalList::new(intervals).unwrap();
        let p = Params::new(a).unwrap();
        match action::lemma2_bound(&w, &iv, eps, p) {
            Ok(report) => {
                worst = worst.min(report.slack);
                if report.slack < -1e-12 {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    SuiteReport {
        name: "lemma2".into(),
        cases,
        failures,
        detail: format!("minimum slack {worst:.3e}"),
    }
}

/// Shift-by-2π and index reflection must preserve the action to 1e-12
/// relative.
pub fn symmetry_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut failures = 0;
    let mut worst = 0.0_f64;
    for _ in 0..cases {
        let w = random_window(&mut rng);
        let p = Params::new(rng.random_range(0.05..10.0)).unwrap();
        let j = action::action(&w, p).unwrap();
        let js = action::action(&w.translated(TWO_PI), p).unwrap();
        let jr = action::action(&w.reversed(), p).unwrap();
        let scale = j.abs().max(1e-9);
        let rel = ((js - j).abs() / scale).max((jr - j).abs() / scale);
        worst = worst.max(rel);
        if rel > 1e-12 {
            failures += 1;
        }
    }
    SuiteReport {
        name: "symmetry".into(),
        cases,
        failures,
        detail: format!("worst relative deviation {worst:.3e}"),
    }
}

/// The norm identity reproduced by two independent summation orders.
pub fn norm_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2023);
    let mut failures = 0;
    let mut worst = 0.0_f64;
    for _ in 0..cases {
        let w = random_window(&mut rng);
        let n2 = action::h_norm(&w).powi(2);
        let mut sum = w.value_at(0) * w.value_at(0);
        for n in (w.first_index() - 1..=w.last_index()).rev() {
            let d = w.value_at(n + 1) - w.value_at(n);
            sum += d * d;
        }
        let rel = (n2 - sum).abs() / sum.max(1e-9);
        worst = worst.max(rel);
        if rel > 1e-12 {
            failures += 1;
        }
    }
    SuiteReport {
        name: "norm".into(),
        cases,
        failures,
        detail: format!("worst relative deviation {worst:.3e}"),
    }
}

/// Analytic gradient versus central differences at h = 1e-6.
pub fn gradient_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x97ad);
    let mut failures = 0;
    let mut worst = 0.0_f64;
    let h = 1e-6;
    for _ in 0..cases {
        let len = rng.random_range(3..25);
        let first = rng.random_range(-10i64..10);
        let values: Vec<f64> = (0..len).map(|_| rng.random_range(-PI..PI)).collect();
        let left = TWO_PI * rng.random_range(-1i64..=1) as f64;
        let right = TWO_PI * rng.random_range(-1i64..=1) as f64;
        let w = Window::new(first, values.clone(), left, right).unwrap();
        let p = Params::new(rng.random_range(0.05..5.0)).unwrap();
        let g = action::gradient(&w, p);
        let i = rng.random_range(0..len);
        let mut up = values.clone();
        up[i] += h;
        let mut dn = values;
        dn[i] -= h;
        let jp = action::action(&Window::new(first, up, left, right).unwrap(), p).unwrap();
        let jm = action::action(&Window::new(first, dn, left, right).unwrap(), p).unwrap();
        let fd = (jp - jm) / (2.0 * h);
        let err = (fd - g[i]).abs();
        worst = worst.max(err);
        if err > 1e-6 {
            failures += 1;
        }
    }
    SuiteReport {
        name: "gradient".into(),
        cases,
        failures,
        detail: format!("worst |fd - analytic| {worst:.3e}"),
    }
}

/// Forward-backward identity in the libration cell and the area-preservation
/// check of the phase-plane map.
pub fn map_suite(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xaa77);
    let mut failures = 0;
    let cases = 300;

    for _ in 0..200 {
        let a = rng.random_range(0.05..1.0);
        let p = Params::new(a).unwrap();
        let y0 = PI + rng.random_range(-1.0..1.0);
        let v0 = rng.random_range(-1.0..1.0);
        let k = rng.random_range(10..=200);
        let (mut prev, mut curr) = (y0, y0 + v0);
        for _ in 0..k {
            let next = map::step(prev, curr, p);
            prev = curr;
            curr = next;
        }
        for _ in 0..k {
            let before = map::step_back(prev, curr, p);
            curr = prev;
            prev = before;
        }
        if (prev - y0).abs() > 1e-6 || (curr - y0 - v0).abs() > 1e-6 {
            failures += 1;
        }
    }

    let h = 1e-6;
    for _ in 0..100 {
        let a = rng.random_range(0.05..10.0);
        let p = Params::new(a).unwrap();
        let s = PhaseState::new(rng.random_range(-8.0..8.0), rng.random_range(-4.0..4.0));
        let f = |st: PhaseState| map::phase_step(st, p);
        let dxp = f(PhaseState::new(s.position + h, s.velocity));
        let dxm = f(PhaseState::new(s.position - h, s.velocity));
        let dvp = f(PhaseState::new(s.position, s.velocity + h));
        let dvm = f(PhaseState::new(s.position, s.velocity - h));
        let det = ((dxp.position - dxm.position) / (2.0 * h))
            * ((dvp.velocity - dvm.velocity) / (2.0 * h))
            - ((dvp.position - dvm.position) / (2.0 * h))
                * ((dxp.velocity - dxm.velocity) / (2.0 * h));
        if (det - 1.0).abs() > 1e-5 || map::jacobian_det(s, p) != 1.0 {
            failures += 1;
        }
    }

    SuiteReport {
        name: "map".into(),
        cases,
        failures,
        detail: "forward-backward identity and unit Jacobian determinant".into(),
    }
}

/// Grid search of (1 - cos t) outside the excluded neighborhoods, boundary
/// points included, against the closed form.
pub fn alpha_suite() -> SuiteReport {
    let mut failures = 0;
    let epsilons = [0.1, 0.3, 0.5, 1.0, 1.5, 2.0, 2.5, PI];
    for &eps in &epsilons {
        let a = action::alpha(eps).unwrap();
        let mut min = f64::INFINITY;
        let steps = (8.0 * PI / 1e-4) as i64;
        for i in 0..=steps {
            let t = -4.0 * PI + i as f64 * 1e-4;
            let (_, dist) = map::nearest_equilibrium(t);
            if dist >= eps {
                min = min.min(1.0 - t.cos());
            }
        }
        for k in -2..=2 {
            let c = TWO_PI * k as f64;
            for b in [c - eps, c + eps] {
                if (-4.0 * PI..=4.0 * PI).contains(&b) {
                    min = min.min(1.0 - b.cos());
                }
            }
        }
        if (min - a).abs() > 1e-7 {
            failures += 1;
        }
    }
    SuiteReport {
        name: "alpha".into(),
        cases: epsilons.len(),
        failures,
        detail: "grid minimum of 1 - cos t agrees with the closed form".into(),
    }
}

/// The constrained minima must not increase as ε shrinks.
pub fn monotonicity_suite(params: Params, seed: u64) -> SuiteReport {
    let opts = MinimizeOptions::default();
    let grid = [0.6, 0.45, 0.3, 0.15];
    let mut failures = 0;
    let mut last = f64::INFINITY;
    let mut values = Vec::new();
    for &eps in &grid {
        match minimizer::c_epsilon_sweep(params, eps, &[1], None, &opts, seed) {
            Ok(s) => {
                let c = s.c_epsilon;
                values.push(c);
                if c > last + 1e-6 || !s.entries[0].converged {
                    failures += 1;
                }
                last = c;
            }
            Err(_) => failures += 1,
        }
    }
    SuiteReport {
        name: "monotonicity".into(),
        cases: grid.len(),
        failures,
        detail: format!("c estimates {values:?}"),
    }
}

/// The 4π connection must cost at least 1.5x the 2π one.
pub fn adjacency_suite(params: Params, seed: u64) -> SuiteReport {
    let opts = MinimizeOptions::default();
    match minimizer::adjacency_check(params, 0.3, None, &opts, seed) {
        Ok(r) => SuiteReport {
            name: "adjacency".into(),
            cases: 1,
            failures: usize::from(!(r.pass && r.all_converged)),
            detail: format!(
                "c(2π) = {:.6}, c(4π) = {:.6}, ratio {:.4}",
                r.c_two_pi,
                r.c_four_pi,
                r.c_four_pi / r.c_two_pi
            ),
        },
        Err(e) => SuiteReport {
            name: "adjacency".into(),
            cases: 1,
            failures: 1,
            detail: e.to_string(),
        },
    }
}
