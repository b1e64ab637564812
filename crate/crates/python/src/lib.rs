use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

use linarr_core::catalog::{catalog_family, catalog_get, catalog_list, catalog_selfcheck};
use linarr_core::freeness::{is_free_with, s_membership};
use linarr_core::io::{arrangement_to_json, parse_arrangement, parse_scalar};
use linarr_core::lattice::{compute_lattice, lattice_automorphisms};
use linarr_core::moduli::{self, ScanOptions};
use linarr_core::render::render_svg;
use linarr_core::search::{self, default_max_size};
use linarr_core::Error;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn param(p: Option<&str>) -> PyResult<Option<linarr_core::Scalar>> {
    p.map(parse_scalar).transpose().map_err(err)
}

/// A central arrangement of lines in the projective plane over an exact field.
#[pyclass(name = "Arrangement", frozen)]
struct PyArrangement {
    inner: linarr_core::Arrangement,
}

#[pymethods]
impl PyArrangement {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyArrangement {
            inner: parse_arrangement(text).map_err(err)?,
        })
    }

    /// Builds a named catalog entry; `param` is a scalar expression such
    /// as `"3"` or `"(1+sqrt(5))/2"`.
    #[staticmethod]
    #[pyo3(signature = (name, param=None))]
    fn catalog(name: &str, param: Option<&str>) -> PyResult<Self> {
        let p = self::param(param)?;
        Ok(PyArrangement {
            inner: catalog_get(name, p.as_ref()).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Arrangement({} lines over {})", self.inner.len(), self.inner.ctx())
    }

    fn to_json(&self) -> String {
        arrangement_to_json(&self.inner).to_string()
    }

    fn profile(&self) -> Vec<usize> {
        compute_lattice(&self.inner).profile
    }

    /// Characteristic polynomial coefficients, constant term first.
    fn charpoly(&self) -> [i64; 4] {
        compute_lattice(&self.inner).char_poly().coeffs
    }

    fn freeness(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let lat = compute_lattice(&self.inner);
        let r = is_free_with(&self.inner, &lat);
        let mut v = json!(r);
        v["s_membership"] = json!(s_membership(&lat, &r).ok());
        to_py(py, &v)
    }

    fn exponents(&self) -> Option<[u64; 3]> {
        linarr_core::freeness::is_free(&self.inner).exponents
    }

    fn is_inductively_free(&self) -> bool {
        search::is_inductively_free(&self.inner).is_some()
    }

    #[pyo3(signature = (max_size=None))]
    fn recursive(&self, py: Python<'_>, max_size: Option<usize>) -> PyResult<Py<PyAny>> {
        let bound = max_size.unwrap_or_else(|| default_max_size(&self.inner));
        let v = search::recursive_freeness_bounded(&self.inner, bound).map_err(err)?;
        to_py(py, &v.to_json())
    }

    fn free_additions(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &json!(search::free_additions(&self.inner).map_err(err)?))
    }

    fn free_deletions(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &json!(search::free_deletions(&self.inner).map_err(err)?))
    }

    fn automorphism_order(&self) -> u64 {
        lattice_automorphisms(&compute_lattice(&self.inner)).order
    }

    fn svg(&self) -> PyResult<String> {
        render_svg(&self.inner, None).map_err(err)
    }
}

#[pyfunction]
fn classify_profiles(py: Python<'_>, ell_max: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &json!(moduli::classify_profiles(ell_max)))
}

#[pyfunction(name = "catalog_list")]
fn list(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &json!(catalog_list()))
}

#[pyfunction]
#[pyo3(signature = (name, param=None))]
fn selfcheck(py: Python<'_>, name: &str, param: Option<&str>) -> PyResult<Py<PyAny>> {
    let p = self::param(param)?;
    to_py(py, &json!(catalog_selfcheck(name, p.as_ref()).map_err(err)?))
}

#[pyfunction]
fn exceptional_values(py: Python<'_>, family: &str) -> PyResult<Py<PyAny>> {
    let f = catalog_family(family).map_err(err)?;
    to_py(py, &moduli::exceptional_values(&f).map_err(err)?.to_json())
}

#[pyfunction]
#[pyo3(signature = (family, samples, symbolic=false, recursive=true))]
fn scan_family(
    py: Python<'_>,
    family: &str,
    samples: Vec<String>,
    symbolic: bool,
    recursive: bool,
) -> PyResult<Py<PyAny>> {
    let f = catalog_family(family).map_err(err)?;
    let xs = samples
        .iter()
        .map(|s| parse_scalar(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let opts = ScanOptions {
        recursive,
        symbolic,
        ..ScanOptions::default()
    };
    to_py(py, &moduli::scan_family(&f, &xs, &opts).map_err(err)?.to_json())
}

#[pymodule]
#[pyo3(name = "linarr")]
fn linarr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyArrangement>()?;
    m.add_function(wrap_pyfunction!(classify_profiles, m)?)?;
    m.add_function(wrap_pyfunction!(list, m)?)?;
    m.add_function(wrap_pyfunction!(selfcheck, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_values, m)?)?;
    m.add_function(wrap_pyfunction!(scan_family, m)?)?;
    Ok(())
}
