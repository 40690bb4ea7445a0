//! Phase portraits of the map in original coordinates,
//! `x_{n+1} = 2x_n - x_{n-1} - A·sin x_n`, and a coarse orbit classifier.
//!
//! Everything here works in the original `x` variables to match the usual
//! phase-plane pictures; the variational modules use the translated
//! `y = x - π` coordinates, which flips the sign of the sine term.

use crate::map::{Params, PhaseState, TWO_PI};

/// Traces are truncated once |x| exceeds this and classified disordered.
pub const OVERFLOW_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Stays strictly inside one potential cell `(c - π, c + π)`.
    Libration,
    /// Eventually monotone, crossing at least two cell boundaries one way.
    Rotation,
    Disordered,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Libration => "libration",
            Classification::Rotation => "rotation",
            Classification::Disordered => "disordered",
        }
    }
}

/// Thresholds of the classifier. The map itself fixes the cell geometry;
/// these two knobs are reporting choices, not dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyConfig {
    /// Length of the trailing run that must be monotone for a rotation.
    pub monotone_window: usize,
    /// Cell boundaries that must be crossed in one direction for a rotation.
    pub min_cell_crossings: i64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            monotone_window: 100,
            min_cell_crossings: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrbitTrace {
    pub params: Params,
    pub initial: PhaseState,
    pub points: Vec<PhaseState>,
    pub classification: Classification,
    pub overflow: bool,
}

/// One step of the original-coordinate phase map
/// `(x, Δx) ↦ (x + Δx, Δx - A·sin(x + Δx))`.
pub fn phase_step_original(state: PhaseState, params: Params) -> PhaseState {
    let position = state.position + state.velocity;
    PhaseState {
        position,
        velocity: state.velocity - params.amplitude() * position.sin(),
    }
}

/// Iterate the map for `steps` steps (or until overflow) and classify.
pub fn iterate_orbit(params: Params, initial: PhaseState, steps: usize) -> OrbitTrace {
    let mut points = Vec::with_capacity(steps + 1);
    points.push(initial);
    let mut state = initial;
    let mut overflow = false;
    for _ in 0..steps {
        state = phase_step_original(state, params);
        if !state.position.is_finite() || state.position.abs() > OVERFLOW_LIMIT {
            overflow = true;
            break;
        }
        points.push(state);
    }
    let classification = if overflow {
        Classification::Disordered
    } else {
        classify(&points, ClassifyConfig::default())
    };
    OrbitTrace {
        params,
        initial,
        points,
        classification,
        overflow,
    }
}

/// Classify a point sequence. Meaningful from ~100 points up; shorter traces
/// fall back to whatever trailing run is available.
pub fn classify(points: &[PhaseState], config: ClassifyConfig) -> Classification {
    if points.is_empty() {
        return Classification::Disordered;
    }
    let first = points[0].position;
    let center = TWO_PI * (first / TWO_PI).round();
    use std::f64::consts::PI;
    if points.iter().all(|p| (p.position - center).abs() < PI) {
        return Classification::Libration;
    }

    let w = config.monotone_window.min(points.len() - 1);
    let tail = &points[points.len() - 1 - w..];
    let up = tail.windows(2).all(|p| p[1].position >= p[0].position);
    let down = tail.windows(2).all(|p| p[1].position <= p[0].position);
    let cell = |x: f64| (x / TWO_PI).round() as i64;
    let crossed = cell(points[points.len() - 1].position) - cell(first);
    if up && crossed >= config.min_cell_crossings {
        return Classification::Rotation;
    }
    if down && crossed <= -config.min_cell_crossings {
        return Classification::Rotation;
    }
    Classification::Disordered
}

/// The default initial-condition grid: rest states `x₀ ∈ {±0.4, …, ±3.6}`
/// and two running seeds at 5% above the separatrix velocity. The choice of
/// grid is ours; only the map is fixed.
pub fn default_grid(params: Params) -> Vec<PhaseState> {
    let mut ics = Vec::with_capacity(20);
    for i in 1..=9 {
        let x = 0.4 * i as f64;
        ics.push(PhaseState::new(x, 0.0));
        ics.push(PhaseState::new(-x, 0.0));
    }
    let v = 2.0 * params.amplitude().sqrt() * 1.05;
    ics.push(PhaseState::new(0.0, v));
    ics.push(PhaseState::new(0.0, -v));
    ics
}

/// One trace per initial condition, in order; deterministic.
pub fn portrait_grid(params: Params, ics: &[PhaseState], steps: usize) -> Vec<OrbitTrace> {
    ics.iter()
        .map(|&ic| iterate_orbit(params, ic, steps))
        .collect()
}

/// CSV rows `trace_id,n,x,dx`, one row per retained point.
pub fn traces_to_csv(traces: &[OrbitTrace]) -> String {
    let mut out = String::from("trace_id,n,x,dx\n");
    for (id, trace) in traces.iter().enumerate() {
        for (n, p) in trace.points.iter().enumerate() {
            out.push_str(&format!("{id},{n},{:.16e},{:.16e}\n", p.position, p.velocity));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    pub x_range: (f64, f64),
    pub v_range: (f64, f64),
    pub width: u32,
    pub height: u32,
}

impl SvgOptions {
    /// Default frame: `x ∈ [-4π, 4π]`, `Δx ∈ [-6√A, 6√A]`.
    pub fn for_params(params: Params) -> Self {
        use std::f64::consts::PI;
        let v = 6.0 * params.amplitude().sqrt();
        Self {
            x_range: (-4.0 * PI, 4.0 * PI),
            v_range: (-v, v),
            width: 900,
            height: 600,
        }
    }
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// One polyline per trace in the `(x, Δx)` plane.
pub fn traces_to_svg(traces: &[OrbitTrace], opts: SvgOptions) -> String {
    let (w, h) = (opts.width as f64, opts.height as f64);
    let margin = 10.0;
    let sx = |x: f64| margin + (x - opts.x_range.0) / (opts.x_range.1 - opts.x_range.0) * (w - 2.0 * margin);
    let sy = |v: f64| h - margin - (v - opts.v_range.0) / (opts.v_range.1 - opts.v_range.0) * (h - 2.0 * margin);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        opts.width, opts.height, opts.width, opts.height
    ));
    out.push_str(&format!(
        "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        opts.width, opts.height
    ));
    // axes through the origin, when visible
    if opts.x_range.0 < 0.0 && opts.x_range.1 > 0.0 {
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"0\" x2=\"{:.2}\" y2=\"{}\" stroke=\"#cccccc\"/>\n",
            sx(0.0),
            sx(0.0),
            opts.height
        ));
    }
    if opts.v_range.0 < 0.0 && opts.v_range.1 > 0.0 {
        out.push_str(&format!(
            "<line x1=\"0\" y1=\"{:.2}\" x2=\"{}\" y2=\"{:.2}\" stroke=\"#cccccc\"/>\n",
            sy(0.0),
            opts.width,
            sy(0.0)
        ));
    }
    for (id, trace) in traces.iter().enumerate() {
        let color = PALETTE[id % PALETTE.len()];
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"0.7\" points=\""
        ));
        for p in &trace.points {
            out.push_str(&format!("{:.2},{:.2} ", sx(p.position), sy(p.velocity)));
        }
        out.push_str("\"/>\n");
    }
    out.push_str("</svg>\n");
    out
}
