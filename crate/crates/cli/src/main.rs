use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use dpend::PhaseState;
use dpend_cli::commands::{self, PortraitSettings, SolveSettings, SweepSettings};
use dpend_cli::config::{
    parse_f64_list, parse_i64_list, require_positive, resolve_seed, FileConfig, HalfWidth,
};
use dpend_cli::{verify, CliError};

#[derive(Parser)]
#[command(
    name = "dpend",
    version,
    about = "Heteroclinic connections and phase portraits of the discrete pendulum lattice"
)]
struct Cli {
    /// JSON config file; command-line flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a heteroclinic connection 0 -> 2kπ and certify it.
    Solve(SolveArgs),
    /// Iterate the map on a grid of initial conditions; write CSV and SVG.
    Portrait(PortraitArgs),
    /// Run randomized verification suites; exit 1 if any fails.
    Verify(VerifyArgs),
    /// Tabulate c_ε(ξ) over an ε grid and target list.
    Sweep(SweepArgs),
    /// Print the largest admissible δ for the given ε and amplitude.
    Delta(DeltaArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SolveArgs {
    #[arg(long)]
    amplitude: Option<f64>,
    /// Target as the integer k in ξ = 2kπ.
    #[arg(long)]
    target: Option<i64>,
    /// Single exclusion radius (shorthand for a one-stage schedule).
    #[arg(long)]
    epsilon: Option<f64>,
    /// Comma-separated strictly decreasing ε continuation schedule.
    #[arg(long)]
    epsilon_schedule: Option<String>,
    /// "auto" or an integer half-width.
    #[arg(long)]
    half_width: Option<String>,
    #[arg(long)]
    tol_grad: Option<f64>,
    #[arg(long)]
    tol_residual: Option<f64>,
    #[arg(long)]
    max_iter: Option<u64>,
    #[arg(long)]
    orbit: Option<PathBuf>,
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct PortraitArgs {
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Initial condition "x,v"; repeat for several. Defaults to the built-in grid.
    #[arg(long = "ic")]
    ics: Option<Vec<String>>,
    /// SVG x-axis range "lo,hi".
    #[arg(long)]
    x_range: Option<String>,
    /// SVG Δx-axis range "lo,hi".
    #[arg(long)]
    v_range: Option<String>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    /// Suite name (repeatable) or "all".
    #[arg(long, default_values_t = [String::from("all")])]
    suite: Vec<String>,
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[arg(long)]
    amplitude: Option<f64>,
    /// Comma-separated strictly decreasing ε grid.
    #[arg(long)]
    epsilons: Option<String>,
    /// Comma-separated target multiples k.
    #[arg(long)]
    targets: Option<String>,
    #[arg(long)]
    half_width: Option<String>,
    #[arg(long)]
    tol_grad: Option<f64>,
    #[arg(long)]
    tol_residual: Option<f64>,
    #[arg(long)]
    max_iter: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct DeltaArgs {
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    amplitude: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };

    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Solve(args) => cmd_solve(file, args),
        Command::Portrait(args) => cmd_portrait(file, args),
        Command::Verify(args) => cmd_verify(file, args),
        Command::Sweep(args) => cmd_sweep(file, args),
        Command::Delta(args) => cmd_delta(file, args),
    }
}

fn cmd_solve(file: FileConfig, args: SolveArgs) -> Result<ExitCode, CliError> {
    let amplitude = require_positive(
        "amplitude",
        args.amplitude.or(file.amplitude).unwrap_or(1.0),
    )?;
    let target_multiple = args.target.or(file.target_multiple).unwrap_or(1);
    let schedule = match (&args.epsilon_schedule, args.epsilon) {
        (Some(text), _) => parse_f64_list("epsilon_schedule", text)?,
        (None, Some(eps)) => vec![eps],
        (None, None) => match (&file.epsilon_schedule, file.epsilon) {
            (Some(s), _) => s.clone(),
            (None, Some(e)) => vec![e],
            (None, None) => vec![0.6, 0.3, 0.15],
        },
    };
    let half_width = match &args.half_width {
        Some(text) => HalfWidth::parse(text)?,
        None => file.window_half_width.unwrap_or(HalfWidth::Auto),
    };
    let settings = SolveSettings {
        amplitude,
        target_multiple,
        schedule,
        half_width,
        tol_grad: require_positive("tol_grad", args.tol_grad.or(file.tol_grad).unwrap_or(1e-10))?,
        tol_residual: require_positive(
            "tol_residual",
            args.tol_residual.or(file.tol_residual).unwrap_or(1e-8),
        )?,
        max_iter: args.max_iter.or(file.max_iter).unwrap_or(100_000),
        orbit_path: args
            .orbit
            .or(file.orbit_path)
            .unwrap_or_else(|| PathBuf::from("orbit.csv")),
        summary_path: args
            .summary
            .or(file.summary_path)
            .unwrap_or_else(|| PathBuf::from("summary.json")),
    };
    let (summary, certified) = commands::run_solve(&settings)?;
    println!(
        "target 2kπ with k={}: action {:.12}, max interior residual {:.3e}, certificate {}",
        summary.target_multiple, summary.action_value, summary.max_residual, summary.certificate
    );
    println!(
        "orbit -> {}, summary -> {}",
        summary.orbit_path,
        settings.summary_path.display()
    );
    if certified {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("certificate denied: see {}", settings.summary_path.display());
        Ok(ExitCode::from(2))
    }
}

fn cmd_portrait(file: FileConfig, args: PortraitArgs) -> Result<ExitCode, CliError> {
    let ics = match &args.ics {
        None => None,
        Some(list) => {
            let mut states = Vec::with_capacity(list.len());
            for text in list {
                let parts = parse_f64_list("ic", text)?;
                if parts.len() != 2 {
                    return Err(CliError::invalid(format!(
                        "ic must be \"x,v\", got {text:?}"
                    )));
                }
                states.push(PhaseState::new(parts[0], parts[1]));
            }
            Some(states)
        }
    };
    let parse_range = |name: &str, text: &Option<String>| -> Result<Option<(f64, f64)>, CliError> {
        match text {
            None => Ok(None),
            Some(t) => {
                let parts = parse_f64_list(name, t)?;
                if parts.len() != 2 || parts[0] >= parts[1] {
                    return Err(CliError::invalid(format!(
                        "{name} must be \"lo,hi\" with lo < hi, got {t:?}"
                    )));
                }
                Ok(Some((parts[0], parts[1])))
            }
        }
    };
    let settings = PortraitSettings {
        amplitude: require_positive(
            "amplitude",
            args.amplitude.or(file.amplitude).unwrap_or(0.1),
        )?,
        steps: args.steps.or(file.steps).unwrap_or(10_000),
        ics,
        x_range: parse_range("x_range", &args.x_range)?,
        v_range: parse_range("v_range", &args.v_range)?,
        csv_path: args
            .csv
            .or(file.portrait_csv_path)
            .unwrap_or_else(|| PathBuf::from("portrait.csv")),
        svg_path: args
            .svg
            .or(file.portrait_svg_path)
            .unwrap_or_else(|| PathBuf::from("portrait.svg")),
    };
    let summary = commands::run_portrait(&settings)?;
    println!(
        "A = {}: {} traces ({} libration, {} rotation, {} disordered, {} overflowed)",
        summary.amplitude,
        summary.traces,
        summary.libration,
        summary.rotation,
        summary.disordered,
        summary.overflowed
    );
    println!(
        "csv -> {}, svg -> {}",
        settings.csv_path.display(),
        settings.svg_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(file: FileConfig, args: VerifyArgs) -> Result<ExitCode, CliError> {
    let amplitude = require_positive(
        "amplitude",
        args.amplitude.or(file.amplitude).unwrap_or(1.0),
    )?;
    let seed = resolve_seed(file.seed, args.seed)?;
    let report = verify::run_suites(&args.suite, amplitude, seed)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::invalid(format!("report serialization: {e}")))?
    );
    if report.all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_sweep(file: FileConfig, args: SweepArgs) -> Result<ExitCode, CliError> {
    let epsilons = match &args.epsilons {
        Some(text) => parse_f64_list("epsilons", text)?,
        None => file
            .epsilons
            .clone()
            .or(file.epsilon_schedule.clone())
            .unwrap_or_else(|| vec![0.6, 0.45, 0.3, 0.15]),
    };
    let targets = match &args.targets {
        Some(text) => parse_i64_list("targets", text)?,
        None => file.targets.clone().unwrap_or_else(|| vec![1]),
    };
    let settings = SweepSettings {
        amplitude: require_positive(
            "amplitude",
            args.amplitude.or(file.amplitude).unwrap_or(1.0),
        )?,
        epsilons,
        targets,
        half_width: match &args.half_width {
            Some(text) => HalfWidth::parse(text)?,
            None => file.window_half_width.unwrap_or(HalfWidth::Auto),
        },
        tol_grad: require_positive("tol_grad", args.tol_grad.or(file.tol_grad).unwrap_or(1e-10))?,
        tol_residual: require_positive(
            "tol_residual",
            args.tol_residual.or(file.tol_residual).unwrap_or(1e-8),
        )?,
        max_iter: args.max_iter.or(file.max_iter).unwrap_or(100_000),
        seed: resolve_seed(file.seed, args.seed)?,
        out_path: args
            .out
            .or(file.sweep_path)
            .unwrap_or_else(|| PathBuf::from("sweep.csv")),
    };
    let outcome = commands::run_sweep(&settings)?;
    println!(
        "{} rows -> {} (monotone in ε: {}, all converged: {})",
        outcome.rows,
        settings.out_path.display(),
        outcome.monotone,
        outcome.all_converged
    );
    if !outcome.all_converged {
        eprintln!("some cells failed to converge");
        return Ok(ExitCode::from(2));
    }
    if !outcome.monotone {
        eprintln!("monotonicity check failed: c increased as ε shrank");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_delta(file: FileConfig, args: DeltaArgs) -> Result<ExitCode, CliError> {
    let amplitude = require_positive(
        "amplitude",
        args.amplitude.or(file.amplitude).unwrap_or(1.0),
    )?;
    let delta = commands::run_delta(args.epsilon, amplitude)?;
    println!("{delta:.16e}");
    Ok(ExitCode::SUCCESS)
}
