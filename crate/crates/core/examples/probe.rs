//! Scratch driver used while pinning expected values; not part of the API.
use std::time::Instant;

use dpend::minimizer::{self, ConstraintSpec, MinimizeOptions};
use dpend::portrait;
use dpend::{Params, PhaseState};

fn main() {
    let opts = MinimizeOptions::default();

    // A=1, xi=2pi, eps=0.3, N=40
    let p = Params::new(1.0).unwrap();
    let spec = ConstraintSpec::new(0.3, 1).unwrap();
    let t0 = Instant::now();
    let r = minimizer::minimize(p, &spec, 40, None, &opts).unwrap();
    println!(
        "A=1 N=40: J={:.15} res={:.3e} iters={} conv={} active={} dt={:?}",
        r.action_value, r.max_residual, r.iterations, r.converged, r.constraint_active, t0.elapsed()
    );

    // A=0.01, eps=0.5, N=400
    let p = Params::new(0.01).unwrap();
    let spec = ConstraintSpec::new(0.5, 1).unwrap();
    let t0 = Instant::now();
    let r = minimizer::minimize(p, &spec, 400, None, &opts).unwrap();
    println!(
        "A=0.01 N=400: J={:.15} J/8sqrtA={:.6} res={:.3e} iters={} conv={} dt={:?}",
        r.action_value,
        r.action_value / 0.8,
        r.max_residual,
        r.iterations,
        r.converged,
        t0.elapsed()
    );

    // A=1e-3 heteroclinic full pipeline
    let p = Params::new(1e-3).unwrap();
    println!("auto half width at 1e-3: {}", minimizer::auto_half_width(p));
    let t0 = Instant::now();
    let h = minimizer::heteroclinic(p, 1, &[0.6, 0.3, 0.15], None, &opts).unwrap();
    println!(
        "A=1e-3: J={:.15} J/sqrtA={:.9} res={:.3e} cert={:?} stages={:?} dt={:?}",
        h.result.action_value,
        h.result.action_value / (1e-3_f64).sqrt(),
        h.result.max_residual,
        h.certified(),
        h.stages.iter().map(|s| s.action_value).collect::<Vec<_>>(),
        t0.elapsed()
    );

    // A=1 heteroclinic + A=0.1
    for a in [0.1, 1.0] {
        let p = Params::new(a).unwrap();
        let t0 = Instant::now();
        let h = minimizer::heteroclinic(p, 1, &[0.6, 0.3, 0.15], None, &opts).unwrap();
        println!(
            "A={a}: J={:.15} res={:.3e} cert={:?} iters={} dt={:?}",
            h.result.action_value,
            h.result.max_residual,
            h.certified(),
            h.result.iterations,
            t0.elapsed()
        );
    }

    // adjacency at A=1 eps=0.3 and A=0.01 eps in {0.5, 0.15}
    let p = Params::new(1.0).unwrap();
    let t0 = Instant::now();
    let adj = minimizer::adjacency_check(p, 0.3, None, &opts, 42).unwrap();
    println!(
        "adj A=1 eps=0.3: c2={:.12} c4={:.12} ratio={:.6} pass={} conv={} dt={:?}",
        adj.c_two_pi,
        adj.c_four_pi,
        adj.c_four_pi / adj.c_two_pi,
        adj.pass,
        adj.all_converged,
        t0.elapsed()
    );
    let p = Params::new(0.01).unwrap();
    for eps in [0.5, 0.3, 0.15] {
        let t0 = Instant::now();
        let adj = minimizer::adjacency_check(p, eps, None, &opts, 42).unwrap();
        println!(
            "adj A=0.01 eps={eps}: c2={:.12} c4={:.12} ratio={:.6} pass={} conv={} dt={:?}",
            adj.c_two_pi,
            adj.c_four_pi,
            adj.c_four_pi / adj.c_two_pi,
            adj.pass,
            adj.all_converged,
            t0.elapsed()
        );
    }

    // monotonicity sweep at A=1
    let p = Params::new(1.0).unwrap();
    for eps in [0.6, 0.45, 0.3, 0.15] {
        let s = minimizer::c_epsilon_sweep(p, eps, &[1], None, &opts, 1).unwrap();
        println!("sweep A=1 eps={eps}: c={:.15} conv={}", s.c_epsilon, s.entries[0].converged);
    }

    // sweep ordering 2pi,4pi,6pi at A=1 eps=0.3
    let s = minimizer::c_epsilon_sweep(p, 0.3, &[1, 2, 3], None, &opts, 5).unwrap();
    for e in &s.entries {
        println!("target {}: c={:.12} conv={}", e.target_multiple, e.c_value, e.converged);
    }
    println!("minimizing targets: {:?}", s.minimizing_targets);

    // portraits
    for a in [0.1, 1.0, 10.0] {
        let p = Params::new(a).unwrap();
        let traces = portrait::portrait_grid(p, &portrait::default_grid(p), 10_000);
        let mut lib = 0;
        let mut lib_small = 0;
        let mut rot = 0;
        let mut dis = 0;
        for t in &traces {
            match t.classification {
                portrait::Classification::Libration => {
                    lib += 1;
                    let max = t.points.iter().fold(0.0_f64, |m, q| m.max(q.position.abs()));
                    if max < std::f64::consts::PI {
                        lib_small += 1;
                    }
                }
                portrait::Classification::Rotation => rot += 1,
                portrait::Classification::Disordered => dis += 1,
            }
        }
        println!("A={a}: libration={lib} (|x|<pi: {lib_small}) rotation={rot} disordered={dis}");
    }

    // orbit classification examples
    let p = Params::new(10.0).unwrap();
    let t = portrait::iterate_orbit(p, PhaseState::new(1.0, 0.0), 10_000);
    println!(
        "A=10 (1,0): class={:?} overflow={} points={}",
        t.classification,
        t.overflow,
        t.points.len()
    );
}
