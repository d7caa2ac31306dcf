//! Python bindings. Every call returns the same JSON report the `jdisc`
//! command line prints, as a string.

use jdisc_core::cli::{execute, Cli};
use jdisc_core::scenario::{canonical_text, BUILTIN_NAMES};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use clap::Parser;

fn run_args(py: Python<'_>, args: Vec<String>) -> PyResult<(i32, String)> {
    let cli = Cli::try_parse_from(std::iter::once("jdisc".to_string()).chain(args))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = py.detach(|| execute(&cli));
    Ok((out.code, out.render()))
}

fn report(py: Python<'_>, args: Vec<String>) -> PyResult<String> {
    run_args(py, args).map(|(_, text)| text)
}

/// Runs a command line (without the program name); returns (exit code, report).
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> PyResult<(i32, String)> {
    run_args(py, args)
}

#[pyfunction]
fn bracket_table(py: Python<'_>, scenario: String) -> PyResult<String> {
    report(
        py,
        vec!["bracket-table".into(), "--scenario".into(), scenario],
    )
}

#[pyfunction]
fn levi(py: Python<'_>, scenario: String) -> PyResult<String> {
    report(py, vec!["levi".into(), "--scenario".into(), scenario])
}

#[pyfunction]
#[pyo3(signature = (scenario, x, order = 6, solver = "both"))]
fn disc(py: Python<'_>, scenario: String, x: String, order: u32, solver: &str) -> PyResult<String> {
    report(
        py,
        vec![
            "disc".into(),
            "--scenario".into(),
            scenario,
            "--x".into(),
            x,
            "--order".into(),
            order.to_string(),
            "--solver".into(),
            solver.into(),
        ],
    )
}

#[pyfunction]
#[pyo3(signature = (scenario, x, mode = "liealg", span = None, k = 3, order = None, solver = "recursive"))]
#[allow(clippy::too_many_arguments)]
fn freeman(
    py: Python<'_>,
    scenario: String,
    x: String,
    mode: &str,
    span: Option<Vec<String>>,
    k: usize,
    order: Option<u32>,
    solver: &str,
) -> PyResult<String> {
    let mut args = vec![
        "freeman".into(),
        "--scenario".into(),
        scenario,
        "--x".into(),
        x,
        "--mode".into(),
        mode.into(),
        "--k".into(),
        k.to_string(),
        "--solver".into(),
        solver.into(),
    ];
    if let Some(span) = span.filter(|s| !s.is_empty()) {
        args.push("--span".into());
        args.push(span.join(","));
    }
    if let Some(n) = order {
        args.push("--order".into());
        args.push(n.to_string());
    }
    report(py, args)
}

#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn verify(py: Python<'_>, seed: u64) -> PyResult<String> {
    report(
        py,
        vec!["verify-paper".into(), "--seed".into(), seed.to_string()],
    )
}

#[pyfunction]
fn scenarios() -> Vec<&'static str> {
    BUILTIN_NAMES.to_vec()
}

/// Canonical JSON of a built-in scenario.
#[pyfunction]
fn scenario(name: &str) -> PyResult<&'static str> {
    canonical_text(name).ok_or_else(|| PyValueError::new_err(format!("unknown scenario {name}")))
}

#[pymodule]
fn jdisc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(bracket_table, m)?)?;
    m.add_function(wrap_pyfunction!(levi, m)?)?;
    m.add_function(wrap_pyfunction!(disc, m)?)?;
    m.add_function(wrap_pyfunction!(freeman, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(scenario, m)?)?;
    Ok(())
}
