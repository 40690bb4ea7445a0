//! Run configuration: a JSON file mirroring the CLI options, with flags
//! overriding file values and `HET_SEED` overriding the resolved seed.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

/// Window sizing: automatic (from the amplitude) or a fixed half-width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfWidth {
    Auto,
    Fixed(usize),
}

impl HalfWidth {
    pub fn resolve(&self, params: dpend::Params, target_multiple: i64) -> usize {
        match self {
            HalfWidth::Auto => {
                dpend::minimizer::auto_half_width(params)
                    * target_multiple.unsigned_abs().max(1) as usize
            }
            HalfWidth::Fixed(n) => *n,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text == "auto" {
            return Ok(HalfWidth::Auto);
        }
        match text.parse::<usize>() {
            Ok(n) if n >= 4 => Ok(HalfWidth::Fixed(n)),
            _ => Err(CliError::invalid(format!(
                "window_half_width must be \"auto\" or an integer >= 4, got {text:?}"
            ))),
        }
    }
}

impl fmt::Display for HalfWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfWidth::Auto => write!(f, "auto"),
            HalfWidth::Fixed(n) => write!(f, "{n}"),
        }
    }
}

impl<'de> Deserialize<'de> for HalfWidth {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(u64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) if s == "auto" => Ok(HalfWidth::Auto),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "window_half_width must be \"auto\" or an integer, got {s:?}"
            ))),
            Raw::Number(n) => Ok(HalfWidth::Fixed(n as usize)),
        }
    }
}

/// The configuration file. Every field is optional; command-line flags
/// override whatever the file sets.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub amplitude: Option<f64>,
    pub target_multiple: Option<i64>,
    pub epsilon: Option<f64>,
    pub epsilon_schedule: Option<Vec<f64>>,
    pub window_half_width: Option<HalfWidth>,
    pub tol_grad: Option<f64>,
    pub tol_residual: Option<f64>,
    pub max_iter: Option<u64>,
    pub seed: Option<u64>,
    pub steps: Option<usize>,
    pub targets: Option<Vec<i64>>,
    pub epsilons: Option<Vec<f64>>,
    pub orbit_path: Option<PathBuf>,
    pub summary_path: Option<PathBuf>,
    pub portrait_csv_path: Option<PathBuf>,
    pub portrait_svg_path: Option<PathBuf>,
    pub sweep_path: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::invalid(format!("cannot read config {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::invalid(format!("config {}: {e}", path.display())))
    }
}

/// Seed precedence: file < flag < `HET_SEED`.
pub fn resolve_seed(file: Option<u64>, flag: Option<u64>) -> Result<u64, CliError> {
    if let Ok(text) = std::env::var("HET_SEED") {
        return text.trim().parse::<u64>().map_err(|_| {
            CliError::invalid(format!("HET_SEED must be an unsigned integer, got {text:?}"))
        });
    }
    Ok(flag.or(file).unwrap_or(0))
}

pub fn require_positive(name: &str, value: f64) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::invalid(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}

pub fn parse_f64_list(name: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<f64>().map_err(|_| {
                CliError::invalid(format!("{name}: cannot parse {part:?} as a number"))
            })
        })
        .collect()
}

pub fn parse_i64_list(name: &str, text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|_| {
                CliError::invalid(format!("{name}: cannot parse {part:?} as an integer"))
            })
        })
        .collect()
}
