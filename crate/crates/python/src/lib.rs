//! Python bindings: `Matrix`, `Certificate` and the factoring, verification
//! and analysis operations, over rings named as on the command line.

use commprod::counterexample::unreachability_oracle;
use commprod::dynamic::{parse_ring_kind, AnyCertificate, AnyMatrix, RandomShape, Strategy, TextRows};
use commprod::format::{certificate_from_json, certificate_to_json, matrix_from_json, matrix_to_json, report_to_json};
use commprod::Error;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(
    pycommprod,
    CommprodError,
    PyException,
    "Raised with a stable `E_*` code prefix."
);

fn err(e: Error) -> PyErr {
    CommprodError::new_err(format!("{}: {e}", e.code()))
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

/// Entries may be `str`, `int` or anything whose `str()` is a scalar literal.
fn text_rows(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<TextRows> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| Ok(x.str()?.to_string())).collect())
        .collect()
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, report: &T) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (report_to_json(report),))
}

/// Square matrix over one of the supported rings.
#[pyclass(name = "Matrix", module = "pycommprod", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatrix(AnyMatrix);

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(ring: &str, rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let kind = parse_ring_kind(ring).map_err(err)?;
        Ok(Self(AnyMatrix::parse(kind, &text_rows(rows)?).map_err(err)?))
    }

    /// Seeded random matrix; `shape` is any, invertible, singular, upper or lower.
    #[staticmethod]
    #[pyo3(signature = (ring, n, shape = "any", seed = 0))]
    fn random(ring: &str, n: usize, shape: &str, seed: u64) -> PyResult<Self> {
        let kind = parse_ring_kind(ring).map_err(err)?;
        Ok(Self(
            AnyMatrix::random(kind, n, parse::<RandomShape>(shape)?, seed).map_err(err)?,
        ))
    }

    #[staticmethod]
    fn identity(ring: &str, n: usize) -> PyResult<Self> {
        Ok(Self(
            AnyMatrix::identity(parse_ring_kind(ring).map_err(err)?, n).map_err(err)?,
        ))
    }

    #[staticmethod]
    #[pyo3(signature = (text, ring = None))]
    fn from_json(text: &str, ring: Option<&str>) -> PyResult<Self> {
        let kind = ring.map(parse_ring_kind).transpose().map_err(err)?;
        Ok(Self(matrix_from_json(text, kind).map_err(err)?))
    }

    fn to_json(&self) -> String {
        matrix_to_json(&self.0)
    }

    #[getter]
    fn ring(&self) -> String {
        self.0.kind().to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// Entries in canonical text form.
    fn rows(&self) -> TextRows {
        self.0.rows()
    }

    #[pyo3(signature = (strategy = "auto"))]
    fn factor(&self, strategy: &str) -> PyResult<PyCertificate> {
        Ok(PyCertificate(self.0.factor(parse::<Strategy>(strategy)?).map_err(err)?))
    }

    /// Monic coefficients, constant term first.
    fn minimal_polynomial(&self) -> PyResult<Vec<String>> {
        self.0.minimal_polynomial().map_err(err)
    }

    /// Span of the products `[a, x]·[a, y]` as a dict.
    fn span_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &self.0.span_report().map_err(err)?)
    }

    /// Pairs `(p, q)` with `x = Σ [a, p]·[a, q]` for this `a`.
    fn decompose_fixed(&self, x: &PyMatrix) -> PyResult<Vec<(TextRows, TextRows)>> {
        self.0.decompose_fixed(&x.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?}, {:?})", self.ring(), self.0.rows())
    }
}

/// Claim `target = v⁻¹·Π[x_i, y_i]·v`, checkable by exact recomputation.
#[pyclass(name = "Certificate", module = "pycommprod", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCertificate(AnyCertificate);

#[pymethods]
impl PyCertificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self(certificate_from_json(text).map_err(err)?))
    }

    fn to_json(&self) -> String {
        certificate_to_json(&self.0)
    }

    fn verify(&self) -> bool {
        self.0.verify().passed()
    }

    /// `"pass"` or `"fail: E_CODE: ..."`.
    fn report(&self) -> String {
        self.0.verify().to_string()
    }

    #[getter]
    fn ring(&self) -> String {
        self.0.kind().to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn pair_count(&self) -> usize {
        self.0.pair_count()
    }

    #[getter]
    fn construction(&self) -> Option<&'static str> {
        self.0.construction().map(|c| c.tag())
    }

    #[getter]
    fn target(&self) -> PyMatrix {
        PyMatrix(self.0.target())
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(ring={:?}, n={}, pairs={})",
            self.ring(),
            self.n(),
            self.pair_count()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (matrix, strategy = "auto"))]
fn factor(matrix: &PyMatrix, strategy: &str) -> PyResult<PyCertificate> {
    matrix.factor(strategy)
}

#[pyfunction]
fn verify(certificate: &PyCertificate) -> bool {
    certificate.verify()
}

/// Exhaustive reachability search over the unitization of GF(2).
#[pyfunction]
#[pyo3(signature = (n_max = 5))]
fn counterexample_oracle(py: Python<'_>, n_max: usize) -> PyResult<Bound<'_, PyAny>> {
    to_dict(py, &unreachability_oracle(n_max).map_err(err)?)
}

#[pymodule]
fn pycommprod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CommprodError", m.py().get_type::<CommprodError>())?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample_oracle, m)?)?;
    Ok(())
}
