//! Second scratch probe: coordinate-descent oracle vs the solver, and the
//! stability of the site-centered stationary point.
use dpend::action;
use dpend::minimizer::{self, ConstraintSpec, MinimizeOptions};
use dpend::{Params, Window};

/// Cyclic coordinate descent with per-coordinate Newton and ball projection.
/// Independent of the solver's descent path.
fn coordinate_descent(
    params: Params,
    spec: &ConstraintSpec,
    init: &Window,
    sweeps: usize,
) -> (Window, f64) {
    let a = params.amplitude();
    let mut v = init.values().to_vec();
    let left = init.left_tail();
    let right = init.right_tail();
    let m = v.len();
    for _ in 0..sweeps {
        let mut change = 0.0_f64;
        for i in 0..m {
            let prev = if i == 0 { left } else { v[i - 1] };
            let next = if i + 1 == m { right } else { v[i + 1] };
            let mut x = v[i];
            for _ in 0..40 {
                let g = -(next - 2.0 * x + prev) + a * x.sin();
                let h = 2.0 + a * x.cos();
                if h <= 1e-9 {
                    break;
                }
                let step = g / h;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            // project against forbidden balls
            let k = (x / dpend::TWO_PI - 0.5).ceil() as i64;
            if k != 0 && k != spec.target_multiple() {
                let point = dpend::TWO_PI * k as f64;
                let dist = (x - point).abs();
                if dist < spec.epsilon() {
                    x = if x >= point {
                        point + spec.epsilon()
                    } else {
                        point - spec.epsilon()
                    };
                }
            }
            change = change.max((x - v[i]).abs());
            v[i] = x;
        }
        if change < 1e-15 {
            break;
        }
    }
    let w = Window::new(init.first_index(), v, left, right).unwrap();
    let j = action::action(&w, params).unwrap();
    (w, j)
}

fn main() {
    let opts = MinimizeOptions::default();
    let p = Params::new(1.0).unwrap();
    let spec = ConstraintSpec::new(0.3, 1).unwrap();

    // same default init for both paths
    let init = minimizer::default_profile(p, &spec, 40);
    let solver = minimizer::minimize(p, &spec, 40, None, &opts).unwrap();
    let (_, j_cd) = coordinate_descent(p, &spec, &init, 20_000);
    println!("A=1 N=40 from default profile: solver J={:.15}, CD J={:.15}", solver.action_value, j_cd);

    // jump init for both paths
    let n = 40i64;
    let jump_vals: Vec<f64> = (-n..=n)
        .map(|i| if i < 0 { 0.0 } else { dpend::TWO_PI })
        .collect();
    let jump = Window::new(-n, jump_vals, 0.0, dpend::TWO_PI).unwrap();
    let s2 = minimizer::minimize(p, &spec, 40, Some(&jump), &opts).unwrap();
    let (_, j_cd2) = coordinate_descent(p, &spec, &jump, 20_000);
    println!("A=1 N=40 from jump: solver J={:.15}, CD J={:.15}", s2.action_value, j_cd2);

    // asymmetric perturbation of the site-centered solution: does it slide?
    let mut pv = solver.window.values().to_vec();
    for (i, x) in pv.iter_mut().enumerate() {
        *x += 1e-4 * ((i as f64) * 0.77).sin().abs() * if i % 3 == 0 { 1.0 } else { -0.4 };
    }
    let pw = Window::new(solver.window.first_index(), pv, 0.0, dpend::TWO_PI).unwrap();
    let s3 = minimizer::minimize(p, &spec, 40, Some(&pw), &opts).unwrap();
    println!("perturbed site-centered re-minimized: J={:.15} (site={:.15})", s3.action_value, solver.action_value);

    // A=0.01 N=400: CD oracle from default profile (coarse check of 0.8 band)
    let p = Params::new(0.01).unwrap();
    let spec = ConstraintSpec::new(0.5, 1).unwrap();
    let init = minimizer::default_profile(p, &spec, 400);
    let s = minimizer::minimize(p, &spec, 400, None, &opts).unwrap();
    let (_, j_cd) = coordinate_descent(p, &spec, &init, 50_000);
    println!("A=0.01 N=400: solver J={:.15}, CD J={:.15}", s.action_value, j_cd);
}
