//! The work behind each subcommand: settings structs, file emission, and
//! the summary records the tests and scripts consume.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use dpend::minimizer::{self, CertificateStatus, MinimizeOptions};
use dpend::portrait::{self, SvgOptions};
use dpend::{map, Params, PhaseState, Window};

use crate::config::HalfWidth;
use crate::CliError;

/// Write-then-rename so readers never observe a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    let io = |e: std::io::Error| {
        CliError::invalid(format!("cannot write {}: {e}", path.display()))
    };
    {
        let mut f = std::fs::File::create(&tmp).map_err(io)?;
        f.write_all(bytes).map_err(io)?;
        f.sync_all().map_err(io)?;
    }
    std::fs::rename(&tmp, path).map_err(io)
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SolveSettings {
    pub amplitude: f64,
    pub target_multiple: i64,
    pub schedule: Vec<f64>,
    pub half_width: HalfWidth,
    pub tol_grad: f64,
    pub tol_residual: f64,
    pub max_iter: u64,
    pub orbit_path: PathBuf,
    pub summary_path: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageSummary {
    pub epsilon: f64,
    pub action_value: f64,
    pub iterations: u64,
    pub converged: bool,
    pub constraint_active: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveSummary {
    pub amplitude: f64,
    pub target_multiple: i64,
    pub epsilon_schedule: Vec<f64>,
    pub half_width: usize,
    pub tol_grad: f64,
    pub tol_residual: f64,
    pub action_value: f64,
    pub max_residual: f64,
    pub constraint_active: bool,
    pub iterations: u64,
    pub converged: bool,
    pub certificate: String,
    pub stages: Vec<StageSummary>,
    pub orbit_path: String,
}

pub fn run_solve(s: &SolveSettings) -> Result<(SolveSummary, bool), CliError> {
    let params = Params::new(s.amplitude)
        .map_err(|e| CliError::invalid(format!("amplitude: {e}")))?;
    if s.target_multiple == 0 {
        return Err(CliError::invalid(
            "target must be a nonzero integer k (the connection runs 0 -> 2kπ)".into(),
        ));
    }
    validate_schedule(&s.schedule)?;
    let opts = MinimizeOptions {
        tol_grad: s.tol_grad,
        tol_residual: s.tol_residual,
        max_iter: s.max_iter,
    };
    let half_width = s.half_width.resolve(params, s.target_multiple);
    let outcome = minimizer::heteroclinic(
        params,
        s.target_multiple,
        &s.schedule,
        Some(half_width),
        &opts,
    )
    .map_err(CliError::from_core)?;

    let orbit_csv = orbit_to_csv(&outcome.result.window, params);
    write_atomic(&s.orbit_path, orbit_csv.as_bytes())?;

    let summary = SolveSummary {
        amplitude: s.amplitude,
        target_multiple: s.target_multiple,
        epsilon_schedule: s.schedule.clone(),
        half_width,
        tol_grad: s.tol_grad,
        tol_residual: s.tol_residual,
        action_value: outcome.result.action_value,
        max_residual: outcome.result.max_residual,
        constraint_active: outcome.result.constraint_active,
        iterations: outcome.result.iterations,
        converged: outcome.result.converged,
        certificate: match &outcome.certificate {
            CertificateStatus::Granted => "granted".into(),
            CertificateStatus::Denied { .. } => "denied".into(),
        },
        stages: outcome
            .stages
            .iter()
            .map(|st| StageSummary {
                epsilon: st.epsilon,
                action_value: st.action_value,
                iterations: st.iterations,
                converged: st.converged,
                constraint_active: st.constraint_active,
            })
            .collect(),
        orbit_path: s.orbit_path.display().to_string(),
    };
    let json = serde_json::to_string_pretty(&summary)
        .map_err(|e| CliError::invalid(format!("summary serialization: {e}")))?;
    write_atomic(&s.summary_path, json.as_bytes())?;

    Ok((summary, outcome.certified()))
}

fn validate_schedule(schedule: &[f64]) -> Result<(), CliError> {
    if schedule.is_empty() {
        return Err(CliError::invalid(
            "epsilon_schedule must contain at least one value".into(),
        ));
    }
    for &e in schedule {
        if !(e > 0.0 && e < dpend::GAMMA) {
            return Err(CliError::invalid(format!(
                "epsilon values must lie in (0, 2π/3 ≈ 2.0944), got {e}"
            )));
        }
    }
    for pair in schedule.windows(2) {
        if pair[1] >= pair[0] {
            return Err(CliError::invalid(format!(
                "epsilon_schedule must be strictly decreasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

/// Orbit CSV `n,y,dy,residual` over `[n₀-1, n₁+1]`: the edge rows show the
/// tail-compatibility residuals, the interior rows the equation residuals.
pub fn orbit_to_csv(window: &Window, params: Params) -> String {
    let profile = map::residual(window, params);
    let mut out = String::from("n,y,dy,residual\n");
    for n in window.first_index() - 1..=window.last_index() + 1 {
        let y = window.value_at(n);
        let dy = window.value_at(n + 1) - y;
        let r = profile.value_at(n).unwrap();
        out.push_str(&format!("{n},{},{},{}\n", fmt17(y), fmt17(dy), fmt17(r)));
    }
    out
}

// ---------------------------------------------------------------------------
// portrait
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PortraitSettings {
    pub amplitude: f64,
    pub steps: usize,
    pub ics: Option<Vec<PhaseState>>,
    pub x_range: Option<(f64, f64)>,
    pub v_range: Option<(f64, f64)>,
    pub csv_path: PathBuf,
    pub svg_path: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
pub struct PortraitSummary {
    pub amplitude: f64,
    pub steps: usize,
    pub traces: usize,
    pub libration: usize,
    pub rotation: usize,
    pub disordered: usize,
    pub overflowed: usize,
}

pub fn run_portrait(s: &PortraitSettings) -> Result<PortraitSummary, CliError> {
    let params = Params::new(s.amplitude)
        .map_err(|e| CliError::invalid(format!("amplitude: {e}")))?;
    if s.steps == 0 {
        return Err(CliError::invalid("steps must be at least 1".into()));
    }
    let ics = match &s.ics {
        Some(list) if list.is_empty() => {
            return Err(CliError::invalid("initial-condition list is empty".into()))
        }
        Some(list) => list.clone(),
        None => portrait::default_grid(params),
    };
    let traces = portrait::portrait_grid(params, &ics, s.steps);

    write_atomic(&s.csv_path, portrait::traces_to_csv(&traces).as_bytes())?;
    let mut svg_opts = SvgOptions::for_params(params);
    if let Some(r) = s.x_range {
        svg_opts.x_range = r;
    }
    if let Some(r) = s.v_range {
        svg_opts.v_range = r;
    }
    write_atomic(
        &s.svg_path,
        portrait::traces_to_svg(&traces, svg_opts).as_bytes(),
    )?;

    let count = |c: portrait::Classification| {
        traces.iter().filter(|t| t.classification == c).count()
    };
    Ok(PortraitSummary {
        amplitude: s.amplitude,
        steps: s.steps,
        traces: traces.len(),
        libration: count(portrait::Classification::Libration),
        rotation: count(portrait::Classification::Rotation),
        disordered: count(portrait::Classification::Disordered),
        overflowed: traces.iter().filter(|t| t.overflow).count(),
    })
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SweepSettings {
    pub amplitude: f64,
    pub epsilons: Vec<f64>,
    pub targets: Vec<i64>,
    pub half_width: HalfWidth,
    pub tol_grad: f64,
    pub tol_residual: f64,
    pub max_iter: u64,
    pub seed: u64,
    pub out_path: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub all_converged: bool,
    /// Per-target check that the c-estimates do not increase as ε shrinks.
    pub monotone: bool,
    pub rows: usize,
}

pub fn run_sweep(s: &SweepSettings) -> Result<SweepOutcome, CliError> {
    let params = Params::new(s.amplitude)
        .map_err(|e| CliError::invalid(format!("amplitude: {e}")))?;
    validate_schedule(&s.epsilons)?;
    if s.targets.is_empty() {
        return Err(CliError::invalid("target list is empty".into()));
    }
    if s.targets.iter().any(|&k| k == 0) {
        return Err(CliError::invalid("targets must be nonzero integers".into()));
    }
    let opts = MinimizeOptions {
        tol_grad: s.tol_grad,
        tol_residual: s.tol_residual,
        max_iter: s.max_iter,
    };

    let mut csv = String::from("epsilon,target,c_value,converged\n");
    let mut all_converged = true;
    // per-target c values in ε-grid order
    let mut per_target: Vec<Vec<f64>> = vec![Vec::new(); s.targets.len()];
    for &eps in &s.epsilons {
        let half_width = match s.half_width {
            HalfWidth::Auto => None,
            HalfWidth::Fixed(n) => Some(n),
        };
        let sweep =
            minimizer::c_epsilon_sweep(params, eps, &s.targets, half_width, &opts, s.seed)
                .map_err(CliError::from_core)?;
        for (slot, entry) in per_target.iter_mut().zip(&sweep.entries) {
            all_converged &= entry.converged;
            slot.push(entry.c_value);
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt17(eps),
                entry.target_multiple,
                fmt17(entry.c_value),
                entry.converged
            ));
        }
    }
    write_atomic(&s.out_path, csv.as_bytes())?;

    let monotone = per_target.iter().all(|values| {
        values
            .windows(2)
            .all(|pair| pair[1] <= pair[0] + 1e-6)
    });
    Ok(SweepOutcome {
        all_converged,
        monotone,
        rows: s.epsilons.len() * s.targets.len(),
    })
}

// ---------------------------------------------------------------------------
// delta
// ---------------------------------------------------------------------------

pub fn run_delta(epsilon: f64, amplitude: f64) -> Result<f64, CliError> {
    let params = Params::new(amplitude)
        .map_err(|e| CliError::invalid(format!("amplitude: {e}")))?;
    dpend::action::find_delta(epsilon, params).map_err(|e| CliError::invalid(e.to_string()))
}
