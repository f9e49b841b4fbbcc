//! Python bindings. Reports come back as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use k3lat::hmdata::builtin_table;
use k3lat::k3class::{self, EmbeddingQuery};
use k3lat::rootsys::{named_elements, WEYL_CAP};
use k3lat::{prootpair, Error, Isometry, IsometryGroup};

fn err(e: Error) -> PyErr {
    match e {
        Error::ScopeExceeded(_) | Error::CapExceeded(_) | Error::RankTooLarge { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite quadratic form given by its Conway-Sloane symbol.
#[pyclass(name = "Fqf", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFqf(k3lat::Fqf);

#[pymethods]
impl PyFqf {
    #[new]
    fn new(symbol: &str) -> PyResult<Self> {
        k3lat::parse_symbol(symbol).map(PyFqf).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Fqf('{}')", self.0)
    }

    fn __add__(&self, other: PyRef<'_, PyFqf>) -> PyFqf {
        PyFqf(self.0.direct_sum(&other.0))
    }

    fn __neg__(&self) -> PyFqf {
        PyFqf(self.0.negate())
    }

    fn __eq__(&self, other: PyRef<'_, PyFqf>) -> bool {
        self.0.isomorphic(&other.0)
    }

    fn isomorphic(&self, other: PyRef<'_, PyFqf>) -> bool {
        self.0.isomorphic(&other.0)
    }

    #[getter]
    fn order(&self) -> String {
        self.0.order().to_string()
    }

    #[getter]
    fn length(&self) -> u32 {
        self.0.length()
    }

    fn length_at(&self, p: u64) -> u32 {
        self.0.length_at(p)
    }

    fn signature_mod8(&self) -> u8 {
        self.0.signature_mod8()
    }

    fn primes(&self) -> Vec<u64> {
        self.0.primes()
    }
}

/// An even lattice given by its Gram matrix.
#[pyclass(name = "Lattice", frozen, skip_from_py_object)]
struct PyLattice(k3lat::IntegralLattice);

#[pymethods]
impl PyLattice {
    #[new]
    fn new(gram: Vec<Vec<i64>>) -> PyResult<Self> {
        k3lat::IntegralLattice::from_i64(&gram).map(PyLattice).map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn det(&self) -> String {
        self.0.det().to_string()
    }

    fn signature(&self) -> (usize, usize, usize) {
        self.0.signature()
    }

    fn is_even(&self) -> bool {
        self.0.is_even()
    }

    /// Conway-Sloane symbol of the discriminant form.
    fn symbol(&self) -> PyResult<PyFqf> {
        self.0.check_even().map_err(err)?;
        k3lat::symbol_of(&self.0).map(PyFqf).map_err(err)
    }

    /// Invariant factors and `q` on the generators, as strings.
    fn discriminant(&self) -> PyResult<(Vec<String>, Vec<String>)> {
        let d = self.0.discriminant_group().map_err(err)?;
        Ok((
            d.invariants.iter().map(|x| x.to_string()).collect(),
            d.quadratic.iter().map(|x| x.to_string()).collect(),
        ))
    }

    fn roots(&self) -> PyResult<Vec<Vec<i64>>> {
        self.0.roots().map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Lattice(rank={}, det={})", self.0.rank(), self.0.det())
    }
}

/// A root lattice such as "D4" or "A2+A2".
#[pyclass(name = "RootDatum", frozen, skip_from_py_object)]
struct PyRootDatum(k3lat::RootDatum);

#[pymethods]
impl PyRootDatum {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        k3lat::RootDatum::parse(label).map(PyRootDatum).map_err(err)
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.0.cartan.clone()
    }

    fn roots(&self) -> Vec<Vec<i64>> {
        self.0.roots.clone()
    }

    fn highest_root(&self) -> Vec<i64> {
        self.0.highest_root()
    }

    fn lattice(&self) -> PyLattice {
        PyLattice(self.0.lattice())
    }

    #[pyo3(signature = (cap = WEYL_CAP))]
    fn weyl_order(&self, cap: usize) -> PyResult<usize> {
        let mut g = self.0.weyl_group(cap).map_err(err)?;
        g.order(cap).map_err(err)
    }

    /// Named isometries (D4 and E8 only) as row-major matrices.
    fn named_elements(&self) -> PyResult<Vec<(String, Vec<Vec<i64>>)>> {
        Ok(named_elements(&self.0).map_err(err)?.into_iter().map(|(k, g)| (k, g.rows())).collect())
    }

    /// Verdict for the subgroup generated by the given matrices.
    fn proot_verdict<'py>(&self, py: Python<'py>, p: u64, generators: Vec<Vec<Vec<i64>>>) -> PyResult<Bound<'py, PyAny>> {
        let gens = generators.iter().map(|m| Isometry::from_rows(m)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let h = IsometryGroup::new(self.0.rank(), gens);
        to_py(py, &prootpair::verdict(&self.0, &h, p).map_err(err)?)
    }

    fn classify<'py>(&self, py: Python<'py>, p: u64) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &prootpair::classify(&self.0, p).map_err(err)?)
    }
}

#[pyfunction]
fn nikulin_exists(t_plus: u32, t_minus: u32, q: PyRef<'_, PyFqf>) -> bool {
    k3lat::nikulin_exists(t_plus, t_minus, &q.0)
}

/// Discriminant form of the supersingular K3 lattice of Artin invariant sigma.
#[pyfunction]
fn n_form(p: u64, sigma: u32) -> PyResult<PyFqf> {
    k3class::n_form(p, sigma).map(|f| PyFqf(f.q)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (q_s, rank, p, sigma = 1))]
fn primitively_embeds<'py>(py: Python<'py>, q_s: PyRef<'_, PyFqf>, rank: u32, p: u64, sigma: u32) -> PyResult<Bound<'py, PyAny>> {
    let query = EmbeddingQuery::new(q_s.0.clone(), rank, p, sigma).map_err(err)?;
    to_py(py, &k3class::primitively_embeds(&query).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (primes_below = 200))]
fn reproduce_table<'py>(py: Python<'py>, primes_below: u64) -> PyResult<Bound<'py, PyAny>> {
    let rows = builtin_table();
    let report = py.detach(|| k3class::reproduce_table(&rows, primes_below));
    to_py(py, &report)
}

#[pyfunction]
fn wild_degree_bound<'py>(py: Python<'py>, p: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &k3class::wild_degree_bound(p, &builtin_table()).map_err(err)?)
}

#[pymodule]
fn pyk3lat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFqf>()?;
    m.add_class::<PyLattice>()?;
    m.add_class::<PyRootDatum>()?;
    m.add_function(wrap_pyfunction!(nikulin_exists, m)?)?;
    m.add_function(wrap_pyfunction!(n_form, m)?)?;
    m.add_function(wrap_pyfunction!(primitively_embeds, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_table, m)?)?;
    m.add_function(wrap_pyfunction!(wild_degree_bound, m)?)?;
    Ok(())
}
