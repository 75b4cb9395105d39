//! Python bindings. Every report is returned as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use pdgcell::nilhecke::stosic::all_splitter_complexes;
use pdgcell::nilhecke::{expected_dimension, NHAlgebra};
use pdgcell::quantum::{build_tensor_rep, k0_comparison, verify_quantum_relations};
use pdgcell::schur::SchurAlgebra;
use pdgcell::webster::WebsterModel;

fn err(e: pdgcell::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py>(py: Python<'py>, x: impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// `C(l, n) (n!)^2`.
#[pyfunction]
fn nilhecke_dimension(n: usize, l: usize) -> usize {
    expected_dimension(n, l)
}

/// Dimension, faithfulness rank and p-DG report of `NH_n^l`.
#[pyfunction]
#[pyo3(signature = (n, l, p = 5))]
fn nilhecke<'py>(py: Python<'py>, n: usize, l: usize, p: u32) -> PyResult<Bound<'py, PyAny>> {
    let alg = NHAlgebra::build(n, l, p).map_err(err)?;
    let pdg = alg.pdg_report();
    report(
        py,
        serde_json::json!({ "dim": alg.dim(), "faithfulness_rank": alg.faithfulness_rank(), "pdg": pdg }),
    )
}

/// Decomposition data of `S_n^l`: shapes, `z`, `d` and the Cartan matrix as strings.
#[pyfunction]
#[pyo3(signature = (n, l, p = 5))]
fn schur_decomposition<'py>(py: Python<'py>, n: usize, l: usize, p: u32) -> PyResult<Bound<'py, PyAny>> {
    let s = SchurAlgebra::build(n, l, p).map_err(err)?;
    let dd = s.decomposition_matrix().map_err(err)?;
    let strings = |m: &[Vec<pdgcell::coeff::IntLaurent>]| -> Vec<Vec<String>> {
        m.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
    };
    let summands: Vec<Vec<String>> = (0..dd.shapes.len()).map(|i| dd.summand_shapes(i)).collect();
    report(
        py,
        serde_json::json!({
            "dim": s.dim(),
            "shapes": dd.shapes,
            "z": strings(&dd.z),
            "d": strings(&dd.d),
            "cartan": strings(&dd.cartan),
            "summands": summands,
            "unitriangular": dd.unitriangular(s.partitions()),
            "cartan_equals_dtd": dd.cartan_matches(),
        }),
    )
}

/// Stroppel-Webster basis census of the Webster model.
#[pyfunction]
#[pyo3(signature = (n, l, p = 5))]
fn webster_census<'py>(py: Python<'py>, n: usize, l: usize, p: u32) -> PyResult<Bound<'py, PyAny>> {
    let w = WebsterModel::build(n, l, p).map_err(err)?;
    report(py, w.census().map_err(err)?)
}

/// Splitting-complex reports for every decomposition and position.
#[pyfunction]
#[pyo3(signature = (n, l, p = 5))]
fn splitting_complexes<'py>(py: Python<'py>, n: usize, l: usize, p: u32) -> PyResult<Bound<'py, PyAny>> {
    let alg = NHAlgebra::build(n, l, p).map_err(err)?;
    report(py, all_splitter_complexes(&alg).map_err(err)?)
}

/// Quantum relation checks on `V_1^(x)l`.
#[pyfunction]
fn quantum_relations<'py>(py: Python<'py>, l: usize, p: u32) -> PyResult<Bound<'py, PyAny>> {
    let rep = build_tensor_rep(l, p).map_err(err)?;
    report(py, verify_quantum_relations(&rep))
}

/// Comparison of `[Z(lambda)]` with the tensor basis.
#[pyfunction]
#[pyo3(signature = (n, l, p = 5))]
fn k0<'py>(py: Python<'py>, n: usize, l: usize, p: u32) -> PyResult<Bound<'py, PyAny>> {
    let cmp = k0_comparison(n, l, p).map_err(err)?;
    let passed = cmp.passed();
    let mut v = serde_json::to_value(&cmp).map_err(|e| PyValueError::new_err(e.to_string()))?;
    v["passed"] = Value::Bool(passed);
    to_py(py, &v)
}

#[pymodule]
fn pdgcell_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(nilhecke_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(nilhecke, m)?)?;
    m.add_function(wrap_pyfunction!(schur_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(webster_census, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_complexes, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_relations, m)?)?;
    m.add_function(wrap_pyfunction!(k0, m)?)?;
    Ok(())
}
