//! Python bindings.
//!
//! Structured results (spectra, certificates, reports) are returned as
//! plain dicts decoded from the same sorted-key JSON the CLI prints, so
//! exact integers arrive as Python ints.

use knot_entropy::arch::{self, CircleStatus};
use knot_entropy::{branched, cli, json, knotdata, padic, poly, Error, IntPoly};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::IdentityViolation(_) | Error::MethodDisagreement { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_dict<T: serde::Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = json::to_sorted_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(PyModule::import(py, "json")?.call_method1("loads", (text,))?.unbind())
}

/// An integer polynomial in Alexander normal form.
#[pyclass(name = "Poly", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyPoly {
    inner: IntPoly,
}

#[pymethods]
impl PyPoly {
    /// Normal form of `Σ coeffs[i] t^i` (ascending degree).
    #[new]
    fn new(coeffs: Vec<BigInt>) -> PyResult<Self> {
        Ok(PyPoly { inner: IntPoly::normalize(&coeffs, 0).map_err(to_py_err)? })
    }

    /// Built-in knot by name, e.g. `"5_2"`.
    #[staticmethod]
    fn knot(name: &str) -> PyResult<Self> {
        knotdata::lookup(name)
            .map(|k| PyPoly { inner: k.poly })
            .ok_or_else(|| PyValueError::new_err(format!("unknown knot {name:?}")))
    }

    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn content(&self) -> BigInt {
        self.inner.content()
    }

    fn is_knot_like(&self) -> bool {
        self.inner.is_knot_like()
    }

    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_dict(py, &poly::validate_alexander(&self.inner))
    }

    fn __mul__(&self, other: &PyPoly) -> PyPoly {
        PyPoly { inner: self.inner.mul(&other.inner) }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        let coeffs: Vec<String> = self.inner.coeffs().iter().map(|c| c.to_string()).collect();
        format!("Poly([{}])", coeffs.join(", "))
    }
}

/// `(name, Poly)` pairs of the built-in knot table.
#[pyfunction]
fn builtin_table() -> Vec<(String, PyPoly)> {
    knotdata::builtin_table().into_iter().map(|k| (k.name, PyPoly { inner: k.poly })).collect()
}

#[pyfunction]
fn load_csv(path: &str) -> PyResult<Vec<(String, PyPoly)>> {
    let table = knotdata::load_csv(path).map_err(to_py_err)?;
    Ok(table.into_iter().map(|k| (k.name, PyPoly { inner: k.poly })).collect())
}

#[pyfunction]
fn cyclotomic(d: u64) -> PyResult<PyPoly> {
    if d == 0 {
        return Err(PyValueError::new_err("cyclotomic index must be positive"));
    }
    Ok(PyPoly { inner: poly::cyclotomic(d) })
}

/// `Res(f, t^r - 1)`, sign included.
#[pyfunction]
fn resultant_with_cyclotomic_power(f: &PyPoly, r: usize) -> PyResult<BigInt> {
    poly::resultant_with_cyclotomic_power(&f.inner, r).map_err(to_py_err)
}

#[pyfunction]
fn newton_polygon(py: Python<'_>, f: &PyPoly, p: u64) -> PyResult<Py<PyAny>> {
    to_dict(py, &padic::newton_polygon(&f.inner, p).map_err(to_py_err)?)
}

#[pyfunction]
#[pyo3(signature = (f, precision = knot_entropy::DEFAULT_PRECISION))]
fn entropy_spectrum(py: Python<'_>, f: &PyPoly, precision: u32) -> PyResult<Py<PyAny>> {
    to_dict(py, &padic::entropy_spectrum(&f.inner, precision).map_err(to_py_err)?)
}

#[pyfunction]
fn leading_decomposition(py: Python<'_>, f: &PyPoly) -> PyResult<Py<PyAny>> {
    to_dict(py, &padic::leading_decomposition(&f.inner).map_err(to_py_err)?)
}

#[pyfunction]
fn finitely_generated_obstruction(py: Python<'_>, f: &PyPoly) -> PyResult<Py<PyAny>> {
    to_dict(py, &padic::finitely_generated_obstruction(&f.inner).map_err(to_py_err)?)
}

type RootTuple = ((f64, f64), f64, usize, &'static str);

/// Certified roots as `(center, radius, multiplicity, circle_status)`.
#[pyfunction]
#[pyo3(signature = (f, precision = knot_entropy::DEFAULT_PRECISION))]
fn roots_certified(f: &PyPoly, precision: u32) -> PyResult<Vec<RootTuple>> {
    let roots = arch::roots_certified(&f.inner, precision).map_err(to_py_err)?;
    Ok(roots
        .iter()
        .map(|r| {
            let status = match r.circle_status() {
                CircleStatus::On => "on",
                CircleStatus::Inside => "inside",
                CircleStatus::Outside => "outside",
                CircleStatus::Undecided => "undecided",
            };
            let c = r.center();
            ((c.re, c.im), r.radius(), r.multiplicity(), status)
        })
        .collect())
}

/// Certified enclosure `(lo, hi)` of the logarithmic Mahler measure.
#[pyfunction]
#[pyo3(signature = (f, precision = knot_entropy::DEFAULT_PRECISION))]
fn mahler_measure(f: &PyPoly, precision: u32) -> PyResult<(f64, f64)> {
    let m = arch::mahler_measure(&f.inner, precision).map_err(to_py_err)?;
    Ok((m.lo, m.hi))
}

#[pyfunction]
#[pyo3(signature = (f, precision = knot_entropy::DEFAULT_PRECISION))]
fn archimedean_entropy(f: &PyPoly, precision: u32) -> PyResult<(f64, f64)> {
    let h = arch::archimedean_entropy(&f.inner, precision).map_err(to_py_err)?;
    Ok((h.value.lo, h.value.hi))
}

#[pyfunction]
fn all_roots_of_unity(f: &PyPoly) -> bool {
    arch::all_roots_of_unity(&f.inner)
}

/// `|H₁(X_r)|`; 0 means infinite.
#[pyfunction]
fn homology_order(f: &PyPoly, r: usize) -> PyResult<BigInt> {
    branched::homology_order(&f.inner, r).map(BigInt::from).map_err(to_py_err)
}

#[pyfunction]
fn homology_sequence(py: Python<'_>, f: &PyPoly, r_max: usize) -> PyResult<Vec<BigInt>> {
    let seq = py.detach(|| branched::homology_sequence(&f.inner, r_max)).map_err(to_py_err)?;
    Ok(seq.orders.into_iter().map(BigInt::from).collect())
}

#[pyfunction]
#[pyo3(signature = (f, r_max, window = None))]
fn growth_estimate(py: Python<'_>, f: &PyPoly, r_max: usize, window: Option<(usize, usize)>) -> PyResult<Py<PyAny>> {
    let report = py
        .detach(|| {
            let seq = branched::homology_sequence(&f.inner, r_max)?;
            branched::growth_estimate(&seq, window.unwrap_or_else(|| branched::default_window(r_max)))
        })
        .map_err(to_py_err)?;
    to_dict(py, &report)
}

#[pyfunction]
fn periodicity_check(py: Python<'_>, f: &PyPoly, r_max: usize) -> PyResult<Py<PyAny>> {
    to_dict(py, &branched::periodicity_check(&f.inner, r_max).map_err(to_py_err)?)
}

#[pyfunction]
fn p_part_profile(py: Python<'_>, f: &PyPoly, r_max: usize, p: u64) -> PyResult<Py<PyAny>> {
    let seq = branched::homology_sequence(&f.inner, r_max).map_err(to_py_err)?;
    to_dict(py, &branched::p_part_profile(&seq, p).map_err(to_py_err)?)
}

/// The full analysis document printed by `knot-entropy analyze`.
#[pyfunction]
#[pyo3(signature = (f, precision = knot_entropy::DEFAULT_PRECISION))]
fn analyze(py: Python<'_>, f: &PyPoly, precision: u32) -> PyResult<Py<PyAny>> {
    to_dict(py, &cli::analyze(None, &f.inner, precision).map_err(to_py_err)?)
}

#[pymodule]
fn pyknotentropy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(builtin_table, m)?)?;
    m.add_function(wrap_pyfunction!(load_csv, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(resultant_with_cyclotomic_power, m)?)?;
    m.add_function(wrap_pyfunction!(newton_polygon, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(leading_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(finitely_generated_obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(roots_certified, m)?)?;
    m.add_function(wrap_pyfunction!(mahler_measure, m)?)?;
    m.add_function(wrap_pyfunction!(archimedean_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(all_roots_of_unity, m)?)?;
    m.add_function(wrap_pyfunction!(homology_order, m)?)?;
    m.add_function(wrap_pyfunction!(homology_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(growth_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(periodicity_check, m)?)?;
    m.add_function(wrap_pyfunction!(p_part_profile, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add("DEFAULT_PRECISION", knot_entropy::DEFAULT_PRECISION)?;
    Ok(())
}
