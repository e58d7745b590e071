//! Python bindings for arbor-core. Structured results come back as plain
//! dicts and lists, exact rationals as `"p/q"` strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use arbor_core::catalog;
use arbor_core::dynamics::{analyze, critical_data, PolynomialDocument, DEFAULT_PCF_BOUND};
use arbor_core::fpp::{self, SampleSource};
use arbor_core::group::{GroupSource, WreathPresentation, DEFAULT_ELEMENT_BUDGET};
use arbor_core::numeric::format_rational;
use arbor_core::tree::TreeShape;
use arbor_core::Error;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn source(catalog_name: Option<&str>, presentation: Option<&str>) -> PyResult<Box<dyn GroupSource>> {
    match (catalog_name, presentation) {
        (Some(name), None) => Ok(catalog::get(name).map_err(err)?.source()),
        (None, Some(json)) => Ok(Box::new(WreathPresentation::parse_json(json).map_err(err)?)),
        _ => Err(PyValueError::new_err("pass exactly one of catalog= or presentation=")),
    }
}

/// Names of the built-in catalog entries.
#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog::list().iter().map(|e| e.name).collect()
}

/// Exact fixer proportions of Aut(T) for levels 0..=levels, as `"p/q"`
/// while exact and floats afterwards.
#[pyfunction]
#[pyo3(signature = (degree, levels))]
fn aut_tree_fpp(py: Python<'_>, degree: usize, levels: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &fpp::aut_tree_fpp(degree, levels).map_err(err)?)
}

/// Fixer proportion of the level-n dihedral quotient, as `"p/q"`.
#[pyfunction]
fn dihedral_fpp(degree: usize, level: usize) -> PyResult<String> {
    Ok(format_rational(&fpp::dihedral_fpp_closed_form(degree, level).map_err(err)?))
}

/// Exact fixed-point table of a catalog group or a presentation JSON string.
#[pyfunction]
#[pyo3(signature = (levels, catalog=None, presentation=None, budget=DEFAULT_ELEMENT_BUDGET))]
fn fixed_point_table<'py>(
    py: Python<'py>,
    levels: usize,
    catalog: Option<&str>,
    presentation: Option<&str>,
    budget: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let src = source(catalog, presentation)?;
    let t = py.detach(|| fpp::fixed_point_table(src.as_ref(), levels, budget)).map_err(err)?;
    to_py(py, &t)
}

/// Monte-Carlo fixer proportion for Haar measure on Aut(T).
#[pyfunction]
#[pyo3(signature = (degree, level, trials, seed=0))]
fn sample_aut_tree(py: Python<'_>, degree: usize, level: usize, trials: u64, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    let shape = TreeShape::new(degree).map_err(err)?;
    let e = py
        .detach(|| fpp::monte_carlo_fpp(&SampleSource::FullAut(shape), level, trials, seed))
        .map_err(err)?;
    to_py(py, &e)
}

/// Full dynamical analysis of a polynomial JSON document.
#[pyfunction]
#[pyo3(signature = (polynomial, pcf_bound=DEFAULT_PCF_BOUND))]
fn analyze_polynomial<'py>(py: Python<'py>, polynomial: &str, pcf_bound: usize) -> PyResult<Bound<'py, PyAny>> {
    let doc = PolynomialDocument::parse(polynomial).map_err(err)?;
    let f = doc.polynomial().map_err(err)?;
    let claimed = doc.claimed_critical_points(f.field()).map_err(err)?;
    let crit = critical_data(&f, claimed.as_deref()).map_err(err)?;
    to_py(py, &analyze(&f, &crit, pcf_bound).map_err(err)?)
}

#[pymodule]
fn arbor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(aut_tree_fpp, m)?)?;
    m.add_function(wrap_pyfunction!(dihedral_fpp, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_point_table, m)?)?;
    m.add_function(wrap_pyfunction!(sample_aut_tree, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_polynomial, m)?)?;
    Ok(())
}
