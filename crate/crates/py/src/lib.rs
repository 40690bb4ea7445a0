//! Python bindings: the window type, the action layer, the constrained
//! solver, and the portrait iterator, exposed as the `dpend_py` module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dpend::minimizer::{self, MinimizeOptions};
use dpend::portrait;
use dpend::{action, map, Params, PhaseState};

fn to_py_err(e: dpend::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(amplitude: f64) -> PyResult<Params> {
    Params::new(amplitude).map_err(to_py_err)
}

/// Finite segment of a bi-infinite sequence with constant tails.
#[pyclass(name = "Window")]
#[derive(Clone)]
struct PyWindow {
    inner: dpend::Window,
}

#[pymethods]
impl PyWindow {
    #[new]
    fn new(first_index: i64, values: Vec<f64>, left_tail: f64, right_tail: f64) -> PyResult<Self> {
        Ok(Self {
            inner: dpend::Window::new(first_index, values, left_tail, right_tail)
                .map_err(to_py_err)?,
        })
    }

    #[getter]
    fn first_index(&self) -> i64 {
        self.inner.first_index()
    }

    #[getter]
    fn last_index(&self) -> i64 {
        self.inner.last_index()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    #[getter]
    fn left_tail(&self) -> f64 {
        self.inner.left_tail()
    }

    #[getter]
    fn right_tail(&self) -> f64 {
        self.inner.right_tail()
    }

    fn value_at(&self, n: i64) -> f64 {
        self.inner.value_at(n)
    }

    /// The action J of this window (tails must sit on equilibria).
    fn action(&self, amplitude: f64) -> PyResult<f64> {
        action::action(&self.inner, params(amplitude)?).map_err(to_py_err)
    }

    /// Truncated action over `[s, t]`.
    fn action_partial(&self, s: i64, t: i64, amplitude: f64) -> PyResult<f64> {
        action::action_partial(s, t, &self.inner, params(amplitude)?).map_err(to_py_err)
    }

    /// Gradient components over the window indices.
    fn gradient(&self, amplitude: f64) -> PyResult<Vec<f64>> {
        Ok(action::gradient(&self.inner, params(amplitude)?))
    }

    /// Residual profile over `[n0-1, n1+1]` and its max absolute value.
    fn residual(&self, amplitude: f64) -> PyResult<(Vec<f64>, f64)> {
        let prof = map::residual(&self.inner, params(amplitude)?);
        Ok((prof.values, prof.max_abs))
    }

    fn h_norm(&self) -> f64 {
        action::h_norm(&self.inner)
    }

    /// Are both tails on equilibria (within tol), and which ones?
    fn tail_classify(&self, tol: f64) -> (bool, i64, i64) {
        let c = map::tail_classify(&self.inner, tol);
        (c.finite_action, c.left.multiple, c.right.multiple)
    }

    fn translated(&self, offset: f64) -> Self {
        Self {
            inner: self.inner.translated(offset),
        }
    }

    fn reversed(&self) -> Self {
        Self {
            inner: self.inner.reversed(),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Window(first_index={}, len={}, tails=({}, {}))",
            self.inner.first_index(),
            self.inner.len(),
            self.inner.left_tail(),
            self.inner.right_tail()
        )
    }
}

/// Outcome of a continuation solve.
#[pyclass(name = "SolveResult")]
struct PySolveResult {
    #[pyo3(get)]
    action_value: f64,
    #[pyo3(get)]
    max_residual: f64,
    #[pyo3(get)]
    iterations: u64,
    #[pyo3(get)]
    converged: bool,
    #[pyo3(get)]
    certified: bool,
    #[pyo3(get)]
    constraint_active: bool,
    #[pyo3(get)]
    stage_actions: Vec<f64>,
    window: dpend::Window,
}

#[pymethods]
impl PySolveResult {
    fn window(&self) -> PyWindow {
        PyWindow {
            inner: self.window.clone(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "SolveResult(action={:.6}, residual={:.3e}, certified={})",
            self.action_value, self.max_residual, self.certified
        )
    }
}

/// A phase-plane trace in original coordinates.
#[pyclass(name = "Orbit")]
struct PyOrbit {
    #[pyo3(get)]
    points: Vec<(f64, f64)>,
    #[pyo3(get)]
    classification: String,
    #[pyo3(get)]
    overflow: bool,
}

#[pymethods]
impl PyOrbit {
    fn __len__(&self) -> usize {
        self.points.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Orbit({} points, {})",
            self.points.len(),
            self.classification
        )
    }
}

/// One forward step of the recurrence in translated coordinates.
#[pyfunction]
fn step(prev: f64, curr: f64, amplitude: f64) -> PyResult<f64> {
    Ok(map::step(prev, curr, params(amplitude)?))
}

/// Exact inverse of `step`.
#[pyfunction]
fn step_back(curr: f64, next: f64, amplitude: f64) -> PyResult<f64> {
    Ok(map::step_back(curr, next, params(amplitude)?))
}

/// Nearest equilibrium `2kπ` and the distance to it.
#[pyfunction]
fn nearest_equilibrium(y: f64) -> (f64, f64) {
    map::nearest_equilibrium(y)
}

/// `alpha(eps) = 1 - cos(eps)`, the potential floor outside the excluded
/// neighborhoods.
#[pyfunction]
fn alpha(epsilon: f64) -> PyResult<f64> {
    action::alpha(epsilon).map_err(to_py_err)
}

/// Largest admissible δ for the given ε and amplitude.
#[pyfunction]
fn find_delta(epsilon: f64, amplitude: f64) -> PyResult<f64> {
    action::find_delta(epsilon, params(amplitude)?).map_err(to_py_err)
}

/// Inner product of two windows.
#[pyfunction]
fn h_inner(a: &PyWindow, b: &PyWindow) -> f64 {
    action::h_inner(&a.inner, &b.inner)
}

/// Membership in the constrained set for target `2kπ`: returns
/// (is_member, violating (index, equilibrium) pairs).
#[pyfunction]
fn membership(
    window: &PyWindow,
    epsilon: f64,
    target_multiple: i64,
) -> PyResult<(bool, Vec<(i64, f64)>)> {
    let spec = minimizer::ConstraintSpec::new(epsilon, target_multiple).map_err(to_py_err)?;
    let report = minimizer::membership(&window.inner, &spec);
    Ok((
        report.is_member,
        report
            .violations
            .iter()
            .map(|v| (v.index, v.equilibrium))
            .collect(),
    ))
}

/// Find and certify a heteroclinic connection 0 -> 2kπ by constrained
/// minimization along a decreasing ε schedule.
#[pyfunction]
#[pyo3(signature = (amplitude, target_multiple = 1, schedule = vec![0.6, 0.3, 0.15], half_width = None, tol_grad = 1e-10, tol_residual = 1e-8, max_iter = 100_000))]
fn solve(
    amplitude: f64,
    target_multiple: i64,
    schedule: Vec<f64>,
    half_width: Option<usize>,
    tol_grad: f64,
    tol_residual: f64,
    max_iter: u64,
) -> PyResult<PySolveResult> {
    let opts = MinimizeOptions {
        tol_grad,
        tol_residual,
        max_iter,
    };
    let outcome =
        minimizer::heteroclinic(params(amplitude)?, target_multiple, &schedule, half_width, &opts)
            .map_err(to_py_err)?;
    Ok(PySolveResult {
        action_value: outcome.result.action_value,
        max_residual: outcome.result.max_residual,
        iterations: outcome.result.iterations,
        converged: outcome.result.converged,
        certified: outcome.certified(),
        constraint_active: outcome.result.constraint_active,
        stage_actions: outcome.stages.iter().map(|s| s.action_value).collect(),
        window: outcome.result.window,
    })
}

/// Estimate c_ε(2kπ) for each target; returns (k, c, converged) triples.
#[pyfunction]
#[pyo3(signature = (amplitude, epsilon, targets, half_width = None, seed = 0))]
fn c_epsilon_sweep(
    amplitude: f64,
    epsilon: f64,
    targets: Vec<i64>,
    half_width: Option<usize>,
    seed: u64,
) -> PyResult<Vec<(i64, f64, bool)>> {
    let sweep = minimizer::c_epsilon_sweep(
        params(amplitude)?,
        epsilon,
        &targets,
        half_width,
        &MinimizeOptions::default(),
        seed,
    )
    .map_err(to_py_err)?;
    Ok(sweep
        .entries
        .iter()
        .map(|e| (e.target_multiple, e.c_value, e.converged))
        .collect())
}

/// Iterate the original-coordinate map from (x0, v0).
#[pyfunction]
fn iterate_orbit(amplitude: f64, x0: f64, v0: f64, steps: usize) -> PyResult<PyOrbit> {
    let trace = portrait::iterate_orbit(params(amplitude)?, PhaseState::new(x0, v0), steps);
    Ok(PyOrbit {
        points: trace
            .points
            .iter()
            .map(|p| (p.position, p.velocity))
            .collect(),
        classification: trace.classification.as_str().to_string(),
        overflow: trace.overflow,
    })
}

#[pymodule]
fn dpend_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("GAMMA", dpend::GAMMA)?;
    m.add_class::<PyWindow>()?;
    m.add_class::<PySolveResult>()?;
    m.add_class::<PyOrbit>()?;
    m.add_function(wrap_pyfunction!(step, m)?)?;
    m.add_function(wrap_pyfunction!(step_back, m)?)?;
    m.add_function(wrap_pyfunction!(nearest_equilibrium, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(find_delta, m)?)?;
    m.add_function(wrap_pyfunction!(h_inner, m)?)?;
    m.add_function(wrap_pyfunction!(membership, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(c_epsilon_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(iterate_orbit, m)?)?;
    Ok(())
}
