//! Python bindings. Structured results are the same JSON documents the CLI prints, decoded with `json.loads`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use qschubert::catalog::{catalog as build_entry, CatalogEntry};
use qschubert::hypothesis::{check_hypothesis_h, HReading};
use qschubert::io;
use qschubert::oracle::{budget_from_env, count, counting_polynomial, euler_from_report, verify_affine};
use qschubert::schubert::{enumerate_cells, generate_equations, Fibred};
use qschubert::{CellIndex, DimVector, Error, Quiver, Representation};
use serde_json::Value;

create_exception!(qschubert_py, QsError, PyException, "Base class of library errors.");
create_exception!(qschubert_py, BudgetExceeded, QsError, "The estimated enumeration size exceeds the budget.");

fn err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).expect("serialisable");
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn budget(b: Option<u128>) -> u128 {
    b.unwrap_or_else(budget_from_env)
}

#[pyclass(name = "Quiver", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyQuiver {
    inner: Quiver,
}

#[pymethods]
impl PyQuiver {
    /// `arrows` holds `(id, source, target)` triples.
    #[new]
    fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> PyResult<Self> {
        let refs: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
        Quiver::new(&vertices, &refs).map(|inner| PyQuiver { inner }).map_err(err)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn arrows(&self) -> Vec<(String, String, String)> {
        self.inner
            .arrows()
            .iter()
            .map(|a| (a.id.clone(), self.inner.vertex_id(a.src).into(), self.inner.vertex_id(a.tgt).into()))
            .collect()
    }

    fn to_json(&self) -> String {
        io::to_json_string(&io::quiver_to_json(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("Quiver({} vertices, {} arrows)", self.inner.vertex_count(), self.inner.arrow_count())
    }
}

#[pyclass(name = "Representation", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRepresentation {
    inner: Representation,
}

impl PyRepresentation {
    fn cell(&self, beta: &str) -> PyResult<CellIndex> {
        CellIndex::parse(self.inner.basis(), beta).map_err(err)
    }
}

#[pymethods]
impl PyRepresentation {
    /// Standard basis; `matrices[i]` is the matrix of arrow `i` as a list of rows.
    #[new]
    fn new(quiver: &PyQuiver, dims: Vec<usize>, matrices: Vec<Vec<Vec<i64>>>) -> PyResult<Self> {
        let q = &quiver.inner;
        if matrices.len() != q.arrow_count() {
            return Err(PyValueError::new_err(format!("expected {} matrices", q.arrow_count())));
        }
        let mut mats = Vec::new();
        for (rows, a) in matrices.iter().zip(q.arrows()) {
            let cols = dims.get(a.src).copied().unwrap_or(0);
            let m = qschubert::matrix::IntMatrix::from_rows(rows, cols)
                .ok_or_else(|| PyValueError::new_err(format!("matrix of {} is ragged", a.id)))?;
            mats.push(m);
        }
        Representation::with_standard_basis(q.clone(), &dims, mats).map(|inner| PyRepresentation { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v = io::parse_json(text).map_err(err)?;
        io::representation_from_json(&v).map(|inner| PyRepresentation { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        io::to_json_string(&io::representation_to_json(&self.inner))
    }

    #[getter]
    fn quiver(&self) -> PyQuiver {
        PyQuiver { inner: self.inner.quiver().clone() }
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.basis().ids().to_vec()
    }

    #[getter]
    fn rank_vector(&self) -> Vec<usize> {
        self.inner.rank_vector().0
    }

    /// Cell indices of type `e`, in canonical order.
    fn cells(&self, e: Vec<usize>) -> PyResult<Vec<String>> {
        let cells = enumerate_cells(self.inner.basis(), &DimVector(e)).map_err(err)?;
        Ok(cells.iter().map(|c| c.display(self.inner.basis())).collect())
    }

    /// Equations of one cell, e.g. `beta="{3,4}"`.
    fn equations(&self, py: Python<'_>, beta: &str) -> PyResult<Py<PyAny>> {
        let sys = generate_equations(&self.inner, &self.cell(beta)?, None).map_err(err)?;
        to_py(py, &io::equations_to_json(&sys))
    }

    #[pyo3(signature = (e, primes=vec![2, 3, 5], budget=None))]
    fn count(&self, py: Python<'_>, e: Vec<usize>, primes: Vec<u64>, budget: Option<u128>) -> PyResult<Py<PyAny>> {
        let reports = count(&self.inner, &DimVector(e), &primes, self::budget(budget)).map_err(err)?;
        let v: Vec<Value> = reports.iter().map(|r| io::count_report_json(r, self.inner.basis())).collect();
        to_py(py, &Value::Array(v))
    }

    #[pyo3(signature = (e, primes=None, budget=None))]
    fn counting_polynomial(
        &self,
        py: Python<'_>,
        e: Vec<usize>,
        primes: Option<Vec<u64>>,
        budget: Option<u128>,
    ) -> PyResult<Py<PyAny>> {
        let p = counting_polynomial(&self.inner, &DimVector(e), primes.as_deref(), self::budget(budget)).map_err(err)?;
        to_py(py, &io::polynomial_json(&p))
    }

    #[pyo3(signature = (e, primes=None, budget=None))]
    fn verify_affine(
        &self,
        py: Python<'_>,
        e: Vec<usize>,
        primes: Option<Vec<u64>>,
        budget: Option<u128>,
    ) -> PyResult<Py<PyAny>> {
        let r = verify_affine(&self.inner, &DimVector(e), primes.as_deref(), self::budget(budget)).map_err(err)?;
        to_py(py, &io::affine_report_json(&r, self.inner.basis()))
    }

    /// Euler characteristic; raises unless every cell is certified affine.
    #[pyo3(signature = (e, budget=None))]
    fn euler_characteristic(&self, e: Vec<usize>, budget: Option<u128>) -> PyResult<u64> {
        let r = verify_affine(&self.inner, &DimVector(e), None, self::budget(budget)).map_err(err)?;
        euler_from_report(&r).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Representation(rank {})", self.inner.rank_vector())
    }
}

#[pyclass(name = "CatalogEntry", frozen)]
struct PyCatalogEntry {
    inner: CatalogEntry,
}

#[pymethods]
impl PyCatalogEntry {
    #[getter]
    fn label(&self) -> String {
        self.inner.label()
    }

    #[getter]
    fn representation(&self) -> PyRepresentation {
        PyRepresentation { inner: self.inner.representation.clone() }
    }

    #[getter]
    fn dim_vector(&self) -> Option<Vec<usize>> {
        self.inner.dim_vector.as_ref().map(|e| e.0.clone())
    }

    #[getter]
    fn is_winding(&self) -> bool {
        self.inner.morphism.is_some()
    }

    /// `F_*M` for windings, `M` otherwise.
    fn target(&self) -> PyResult<PyRepresentation> {
        self.inner.target().map(|inner| PyRepresentation { inner }).map_err(err)
    }

    /// Equations of a cell of `F_*M` in the fibred block form.
    fn equations(&self, py: Python<'_>, beta: &str) -> PyResult<Py<PyAny>> {
        let n = self.inner.target().map_err(err)?;
        let cell = CellIndex::parse(n.basis(), beta).map_err(err)?;
        let fibred = self.inner.morphism.as_ref().map(|f| Fibred { morphism: f, source: &self.inner.representation });
        let sys = generate_equations(&n, &cell, fibred).map_err(err)?;
        to_py(py, &io::equations_to_json(&sys))
    }

    /// Verdict of Hypothesis (H) with the entry's subquiver and basis order.
    #[pyo3(signature = (literal=false))]
    fn hypothesis_h(&self, py: Python<'_>, literal: bool) -> PyResult<Py<PyAny>> {
        let (Some(s), Some(f)) = (&self.inner.subquiver, &self.inner.morphism) else {
            return Err(PyValueError::new_err(format!("{} is not a winding", self.inner.label())));
        };
        let reading = if literal { HReading::Literal } else { HReading::Symmetric };
        let v = check_hypothesis_h(&self.inner.representation, s, f, None, reading).map_err(err)?;
        to_py(py, &io::verdict_to_json(&v, f))
    }

    fn to_json(&self) -> String {
        io::to_json_string(&io::bundle_to_json(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("CatalogEntry({})", self.inner.label())
    }
}

/// Builds a catalog entry, e.g. `catalog("flag", [3, 1, 2])`.
#[pyfunction]
#[pyo3(signature = (name, params=vec![]))]
fn catalog(name: &str, params: Vec<i64>) -> PyResult<PyCatalogEntry> {
    build_entry(name, &params).map(|inner| PyCatalogEntry { inner }).map_err(err)
}

/// Runs the `qs` command line; returns `(exit code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = qschubert::cli::run(std::iter::once("qs".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
pub fn qschubert_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuiver>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_class::<PyCatalogEntry>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("QsError", m.py().get_type::<QsError>())?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    Ok(())
}
