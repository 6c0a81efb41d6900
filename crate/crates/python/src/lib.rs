//! Python module `pyfrucht`: graphs, groups, constructions, automorphism
//! groups, genus bounds and claim verification.
//!
//! Structured results (reports, provenance) come back as plain dicts built
//! from the library's JSON serialization.

use frucht::aut::{self, SearchLimits};
use frucht::construct::{self, Budget};
use frucht::genus;
use frucht::graph::{io, Graph};
use frucht::groups::{named_group, FiniteGroup};
use frucht::trees::{certify_family, CertifiedFamily, Family};
use frucht::verify::{self, VerifyConfig};
use frucht::Error;
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(pyfrucht, BudgetExceeded, PyRuntimeError, "A size or search budget was exceeded.");

fn to_py_err(e: Error) -> PyErr {
    if e.is_budget() {
        BudgetExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait IntoPy<T> {
    fn py_ok(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for frucht::Result<T> {
    fn py_ok(self) -> PyResult<T> {
        self.map_err(to_py_err)
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn parse_family(name: &str) -> PyResult<Family> {
    name.parse().py_ok()
}

fn limits(max_nodes: Option<u64>) -> SearchLimits {
    let mut l = SearchLimits::default();
    if let Some(n) = max_nodes {
        l.max_nodes = n;
    }
    l
}

fn verify_config(max_vertices: Option<usize>, max_nodes: Option<u64>) -> VerifyConfig {
    let mut cfg = VerifyConfig::default();
    if let Some(v) = max_vertices {
        cfg.budget = Budget { max_vertices: v };
    }
    cfg.limits = limits(max_nodes);
    cfg
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "pyfrucht", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges, colors=None))]
    fn new(n: usize, edges: Vec<(usize, usize)>, colors: Option<Vec<u32>>) -> PyResult<Self> {
        let mut g = Graph::new(n, edges).py_ok()?;
        if let Some(c) = colors {
            g = g.with_colors(c).py_ok()?;
        }
        Ok(PyGraph { inner: g })
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        Graph::cycle(n).into()
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Graph::path(n).into()
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Graph::complete(n).into()
    }

    #[staticmethod]
    fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::complete_bipartite(a, b).into()
    }

    #[staticmethod]
    fn petersen() -> Self {
        Graph::petersen().into()
    }

    #[staticmethod]
    fn hypercube(n: usize) -> PyResult<Self> {
        Ok(construct::hypercube(n, &Budget::default()).py_ok()?.graph.into())
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(io::read_graph6(text).py_ok()?.into())
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(io::read_edge_list(text).py_ok()?.into())
    }

    fn to_graph6(&self) -> PyResult<String> {
        io::write_graph6(&self.inner).py_ok()
    }

    fn to_edge_list(&self) -> String {
        io::write_edge_list(&self.inner)
    }

    fn to_dot(&self) -> String {
        io::write_dot(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.inner.degree(v).py_ok()?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn girth(&self) -> Option<usize> {
        self.inner.girth()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

impl From<Graph> for PyGraph {
    fn from(inner: Graph) -> Self {
        PyGraph { inner }
    }
}

/// Finite group given by a validated Cayley table.
#[pyclass(name = "Group", module = "pyfrucht", frozen)]
struct PyGroup {
    inner: FiniteGroup,
}

#[pymethods]
impl PyGroup {
    /// `trivial`, `cyclic:k`, `dihedral:k`, `klein4`, `sym:k` or `quat8`.
    #[staticmethod]
    fn named(spec: &str) -> PyResult<Self> {
        Ok(PyGroup { inner: named_group(spec).py_ok()? })
    }

    #[staticmethod]
    #[pyo3(signature = (name, text, trust_table=false))]
    fn from_csv(name: &str, text: &str, trust_table: bool) -> PyResult<Self> {
        Ok(PyGroup { inner: FiniteGroup::from_cayley_csv(name, text, trust_table).py_ok()? })
    }

    fn to_csv(&self) -> String {
        self.inner.to_cayley_csv()
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner.mul(a, b))
    }

    fn inverse(&self, a: usize) -> PyResult<usize> {
        self.check(a)?;
        Ok(self.inner.inverse(a))
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.name(), self.inner.order())
    }
}

impl PyGroup {
    fn check(&self, a: usize) -> PyResult<()> {
        if a < self.inner.order() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("element index {a} out of range")))
        }
    }
}

/// Automorphism group: dict with `order` (int), `generators` (image lists)
/// and `orbits`.
#[pyfunction]
#[pyo3(signature = (graph, colors=None, max_nodes=None))]
fn automorphism_group<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    colors: Option<Vec<u32>>,
    max_nodes: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let g = graph.inner.clone();
    let r = py
        .detach(move || aut::automorphism_group(&g, colors.as_deref(), &limits(max_nodes)))
        .py_ok()?;
    let d = PyDict::new(py);
    d.set_item("order", r.order.clone())?;
    let gens: Vec<Vec<usize>> = r.generators.iter().map(|p| p.images().to_vec()).collect();
    d.set_item("generators", gens)?;
    d.set_item("orbits", r.orbits.clone())?;
    d.set_item("nodes", r.stats.nodes)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (graph, max_nodes=None))]
fn is_asymmetric(graph: &PyGraph, max_nodes: Option<u64>) -> PyResult<bool> {
    aut::is_asymmetric(&graph.inner, &limits(max_nodes)).py_ok()
}

#[pyfunction]
#[pyo3(signature = (g1, g2, max_nodes=None))]
fn are_isomorphic(g1: &PyGraph, g2: &PyGraph, max_nodes: Option<u64>) -> PyResult<bool> {
    aut::are_isomorphic(&g1.inner, &g2.inner, &limits(max_nodes)).py_ok()
}

/// Runs the gadget-tree checks for `0 <= m <= max_m`; returns the report dict.
#[pyfunction]
fn certify_trees<'py>(py: Python<'py>, family: &str, max_m: usize) -> PyResult<Bound<'py, PyAny>> {
    let f = parse_family(family)?;
    let report = py.detach(move || certify_family(&f, max_m, &SearchLimits::default())).py_ok()?;
    json_to_py(py, &serde_json::to_value(&report).expect("serializable"))
}

fn construction_tuple<'py>(
    py: Python<'py>,
    cr: construct::ConstructionResult,
) -> PyResult<(PyGraph, Bound<'py, PyAny>)> {
    let prov = json_to_py(py, &cr.provenance_json())?;
    Ok((cr.graph.into(), prov))
}

/// Builds the asymmetric graph for the `n`-cube; returns `(graph, provenance)`.
#[pyfunction]
#[pyo3(signature = (n, family="unary", max_vertices=None))]
fn build_asym<'py>(
    py: Python<'py>,
    n: usize,
    family: &str,
    max_vertices: Option<usize>,
) -> PyResult<(PyGraph, Bound<'py, PyAny>)> {
    let f = parse_family(family)?;
    let budget = Budget { max_vertices: max_vertices.unwrap_or(construct::DEFAULT_VERTEX_BUDGET) };
    let cr = py
        .detach(move || {
            construct::check_gamma_1_budget(n, f, &budget)?;
            let fam = CertifiedFamily::certify(f, verify::gamma_1_max_index(n), &SearchLimits::default())?;
            construct::build_gamma_1(n, &fam, &budget)
        })
        .py_ok()?;
    construction_tuple(py, cr)
}

/// Builds the graph realizing `group`; returns `(graph, provenance)`.
#[pyfunction]
#[pyo3(signature = (n, group, family="unary", max_vertices=None))]
fn build_group<'py>(
    py: Python<'py>,
    n: usize,
    group: &PyGroup,
    family: &str,
    max_vertices: Option<usize>,
) -> PyResult<(PyGraph, Bound<'py, PyAny>)> {
    let f = parse_family(family)?;
    let budget = Budget { max_vertices: max_vertices.unwrap_or(construct::DEFAULT_VERTEX_BUDGET) };
    let g = group.inner.clone();
    let cr = py
        .detach(move || {
            construct::check_gamma_g_budget(n, g.order(), f, &budget)?;
            let top = n + g.order().saturating_sub(1);
            let fam = CertifiedFamily::certify(f, verify::gamma_1_max_index(top), &SearchLimits::default())?;
            construct::build_gamma_g(n, &g, &fam, &budget)
        })
        .py_ok()?;
    construction_tuple(py, cr)
}

#[pyfunction]
fn euler_girth_lower_bound(graph: &PyGraph) -> PyResult<u64> {
    genus::euler_girth_lower_bound(&graph.inner).py_ok()
}

#[pyfunction]
fn hypercube_genus(n: usize) -> PyResult<BigUint> {
    genus::hypercube_genus(n).py_ok()
}

/// Bound-only genus report as a dict.
#[pyfunction]
fn genus_bounds<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let r = genus::genus_bounds(&graph.inner).py_ok()?;
    json_to_py(py, &serde_json::to_value(&r).expect("serializable"))
}

#[pyfunction]
#[pyo3(signature = (graph, node_budget=genus::DEFAULT_EXACT_NODE_BUDGET))]
fn exact_genus<'py>(py: Python<'py>, graph: &PyGraph, node_budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let g = graph.inner.clone();
    let r = py.detach(move || genus::exact_genus(&g, node_budget)).py_ok()?;
    json_to_py(py, &serde_json::to_value(&r).expect("serializable"))
}

#[pyfunction]
#[pyo3(signature = (graph, iterations=100_000, seed=42))]
fn heuristic_genus_upper<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    iterations: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let g = graph.inner.clone();
    let r = py.detach(move || genus::heuristic_genus_upper(&g, iterations, seed)).py_ok()?;
    json_to_py(py, &serde_json::to_value(&r).expect("serializable"))
}

/// Asymmetry claim report for the `n`-cube construction.
#[pyfunction]
#[pyo3(signature = (n, family="unary", max_vertices=None, max_nodes=None))]
fn verify_lemma2<'py>(
    py: Python<'py>,
    n: usize,
    family: &str,
    max_vertices: Option<usize>,
    max_nodes: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let f = parse_family(family)?;
    let cfg = verify_config(max_vertices, max_nodes);
    let r = py.detach(move || verify::verify_lemma2(n, f, &cfg)).py_ok()?;
    json_to_py(py, &r.to_json_value())
}

/// Group-realization claim report for `group` on the `n`-cube construction.
#[pyfunction]
#[pyo3(signature = (n, group, family="unary", max_vertices=None, max_nodes=None))]
fn verify_theorem1<'py>(
    py: Python<'py>,
    n: usize,
    group: &PyGroup,
    family: &str,
    max_vertices: Option<usize>,
    max_nodes: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let f = parse_family(family)?;
    let cfg = verify_config(max_vertices, max_nodes);
    let g = group.inner.clone();
    let r = py.detach(move || verify::verify_theorem1(n, &g, f, &cfg)).py_ok()?;
    json_to_py(py, &r.to_json_value())
}

#[pymodule]
fn pyfrucht(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyGroup>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(automorphism_group, m)?)?;
    m.add_function(wrap_pyfunction!(is_asymmetric, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(certify_trees, m)?)?;
    m.add_function(wrap_pyfunction!(build_asym, m)?)?;
    m.add_function(wrap_pyfunction!(build_group, m)?)?;
    m.add_function(wrap_pyfunction!(euler_girth_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hypercube_genus, m)?)?;
    m.add_function(wrap_pyfunction!(genus_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(exact_genus, m)?)?;
    m.add_function(wrap_pyfunction!(heuristic_genus_upper, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma2, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem1, m)?)?;
    Ok(())
}
