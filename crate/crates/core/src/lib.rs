//! Heteroclinic orbits of the discrete pendulum equation.
//!
//! The lattice recurrence `Δ²y_{n-1} - A·sin y_n = 0` has equilibria at every
//! multiple of 2π. This crate finds orbits connecting two of them by
//! minimizing the discrete action `J(y) = Σ [½|Δy_n|² + A(1 - cos y_n)]`
//! over sequences constrained to avoid neighborhoods of the remaining
//! equilibria, then certifies the minimizers as genuine orbits of the
//! recurrence. A small phase-portrait module reproduces the qualitative
//! behavior of the map in original coordinates across amplitudes.
//!
//! Modules:
//! - [`map`]: the exact map, equilibria, residuals, tail classification;
//! - [`action`]: the action functional, its gradient, the sequence-space
//!   inner product, and the explicit constants/lower bounds;
//! - [`minimizer`]: constrained minimization, continuation in the exclusion
//!   radius, target sweeps, and orbit certification;
//! - [`portrait`]: phase portraits and orbit classification in original
//!   coordinates.

pub mod action;
mod error;
pub mod map;
pub mod minimizer;
pub mod portrait;
mod window;

pub use error::{Error, Result};
pub use map::{Params, PhaseState, GAMMA, TWO_PI};
pub use window::Window;
