use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A window tail sits too far from the equilibrium set `{2kπ}`; the full
    /// action of such a sequence diverges, so it has no finite value to return.
    #[error("{side} tail {value} is {distance:.3e} from the nearest equilibrium (limit {limit:.1e}); the action diverges")]
    TailNotEquilibrium {
        side: &'static str,
        value: f64,
        distance: f64,
        limit: f64,
    },

    #[error("invalid index range: start {s} exceeds end {t}")]
    InvalidRange { s: i64, t: i64 },

    #[error("{name} = {value} is outside the admissible range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// The lower-bound hypothesis fails: some listed index carries a value
    /// inside the forbidden neighborhood of an equilibrium.
    #[error("hypothesis violated at index {index}: value {value} lies within epsilon of equilibrium {equilibrium}")]
    HypothesisViolated {
        index: i64,
        value: f64,
        equilibrium: f64,
    },

    #[error("initial window is not feasible: {reason}")]
    InfeasibleInit { reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
