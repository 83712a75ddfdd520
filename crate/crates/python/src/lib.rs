use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hypersparse::cutsparse::{sparsify_cut, CutPipelineConfig, WeightMode};
use hypersparse::harness::{verify_cut as core_verify_cut, verify_spectral as core_verify_spectral, CutCheckMode};
use hypersparse::hypercore::{edge_strengths as core_strengths, io};
use hypersparse::instances;
use hypersparse::pairsim::sparsify_cut_nbr2;
use hypersparse::spectral::{
    clique_expansion, effective_resistance as core_resistance, spectral_sample_edge, spectral_sample_nbr2,
    SpectralConfig,
};
use hypersparse::{Capabilities, EdgeRecord, QueryLedger, VertexSubset};

fn err(e: hypersparse::Error) -> PyErr {
    match e {
        hypersparse::Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn ledger_dict<'py>(py: Python<'py>, l: &QueryLedger) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", l.value)?;
    d.set_item("edge", l.edge)?;
    d.set_item("nbr1", l.nbr1)?;
    d.set_item("nbr2", l.nbr2)?;
    Ok(d)
}

fn edge_tuple(rec: EdgeRecord) -> (u64, Vec<usize>, f64) {
    (rec.id.0, rec.vertices, rec.weight)
}

/// A weighted hypergraph on vertices `0..n`.
#[pyclass(name = "Hypergraph", module = "pyhypersparse", frozen)]
struct PyHypergraph {
    inner: hypersparse::Hypergraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    #[pyo3(signature = (n, edges, weights=None))]
    fn new(n: usize, edges: Vec<Vec<usize>>, weights: Option<Vec<f64>>) -> PyResult<Self> {
        let weights = weights.unwrap_or_else(|| vec![1.0; edges.len()]);
        if weights.len() != edges.len() {
            return Err(PyValueError::new_err("one weight per edge"));
        }
        let inner = hypersparse::Hypergraph::new(n, edges.into_iter().zip(weights)).map_err(err)?;
        Ok(PyHypergraph { inner })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyHypergraph {
            inner: io::from_str(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        let file = std::fs::File::open(path).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok(PyHypergraph {
            inner: io::read_hypergraph(std::io::BufReader::new(file)).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        io::to_canonical_string(&self.inner)
    }

    fn write(&self, path: &str) -> PyResult<()> {
        std::fs::write(path, self.to_text()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn total_weight(&self) -> f64 {
        self.inner.total_weight()
    }

    /// `(id, vertices, weight)` for every edge.
    fn edges(&self) -> Vec<(u64, Vec<usize>, f64)> {
        self.inner
            .edges()
            .iter()
            .map(|e| (e.id().0, e.vertices().to_vec(), e.weight()))
            .collect()
    }

    fn cut_weight(&self, side: Vec<usize>) -> PyResult<f64> {
        let s = subset(self.inner.n(), &side)?;
        Ok(self.inner.cut_weight(&s))
    }

    fn laplacian_form(&self, x: Vec<f64>) -> PyResult<f64> {
        self.inner.laplacian_form(&x).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.m()
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

fn subset(n: usize, side: &[usize]) -> PyResult<VertexSubset> {
    if let Some(&v) = side.iter().find(|&&v| v >= n) {
        return Err(PyValueError::new_err(format!("vertex {v} out of range for n = {n}")));
    }
    Ok(VertexSubset::from_vertices(n, side.iter().copied()))
}

fn capabilities(name: &str) -> PyResult<Capabilities> {
    match name {
        "all" => Ok(Capabilities::ALL),
        "value-edge" => Ok(Capabilities::VALUE_EDGE),
        "value-nbr2" => Ok(Capabilities::VALUE_NBR2),
        "value-nbr1" => Ok(Capabilities::VALUE_NBR1),
        _ => Err(PyValueError::new_err(format!("unknown capability set {name:?}"))),
    }
}

/// Query access to a hidden hypergraph.
#[pyclass(name = "Oracle", module = "pyhypersparse", unsendable)]
struct PyOracle {
    inner: hypersparse::OracleHandle,
}

#[pymethods]
impl PyOracle {
    #[new]
    #[pyo3(signature = (graph, seed=0, capabilities="all"))]
    fn new(graph: &PyHypergraph, seed: u64, capabilities: &str) -> PyResult<Self> {
        let caps = self::capabilities(capabilities)?;
        Ok(PyOracle {
            inner: hypersparse::OracleHandle::with_capabilities(graph.inner.clone(), seed, caps),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn value(&mut self, side: Vec<usize>) -> PyResult<f64> {
        let s = subset(self.inner.n(), &side)?;
        self.inner.o_value(&s).map_err(err)
    }

    fn edge(&mut self, side: Vec<usize>) -> PyResult<(u64, Vec<usize>, f64)> {
        let s = subset(self.inner.n(), &side)?;
        self.inner.o_edge(&s).map(edge_tuple).map_err(err)
    }

    fn nbr1(&mut self, v: usize) -> PyResult<Option<(u64, Vec<usize>, f64)>> {
        Ok(self.inner.o_nbr1(v).map_err(err)?.map(edge_tuple))
    }

    fn nbr2(&mut self, u: usize, v: usize) -> PyResult<Option<(u64, Vec<usize>, f64)>> {
        Ok(self.inner.o_nbr2(u, v).map_err(err)?.map(edge_tuple))
    }

    fn ledger<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        ledger_dict(py, &self.inner.ledger())
    }
}

/// Runs one pipeline; returns the sparsifier and the queries it spent.
#[pyfunction]
#[pyo3(signature = (oracle, mode, eps, seed=0, beta=None, c=1.0, weighted=false))]
#[allow(clippy::too_many_arguments)]
fn sparsify<'py>(
    py: Python<'py>,
    oracle: &mut PyOracle,
    mode: &str,
    eps: f64,
    seed: u64,
    beta: Option<f64>,
    c: f64,
    weighted: bool,
) -> PyResult<(PyHypergraph, Bound<'py, PyDict>)> {
    let weights = if weighted {
        WeightMode::Weighted
    } else {
        WeightMode::Unit
    };
    let o = &mut oracle.inner;
    let (graph, ledger) = match mode {
        "cut-edge" | "cut-nbr2" => {
            let mut config = CutPipelineConfig::new(eps);
            config.beta = beta;
            config.weights = weights;
            let out = if mode == "cut-edge" {
                sparsify_cut(o, &config, seed)
            } else {
                sparsify_cut_nbr2(o, &config, seed)
            }
            .map_err(err)?;
            (out.sparsifier.graph, out.ledger)
        }
        "spectral-edge" | "spectral-nbr2" => {
            let mut config = SpectralConfig::new(eps);
            config.c = c;
            config.weights = weights;
            if mode == "spectral-edge" {
                let out = spectral_sample_edge(o, &config, seed).map_err(err)?;
                (out.sparsifier.graph, out.ledger)
            } else {
                let out = spectral_sample_nbr2(o, &config).map_err(err)?;
                (out.sparsifier.graph, out.ledger)
            }
        }
        _ => return Err(PyValueError::new_err(format!("unknown mode {mode:?}"))),
    };
    Ok((PyHypergraph { inner: graph }, ledger_dict(py, &ledger)?))
}

/// Cut check as a dict; exhaustive unless `random_cuts` is given.
#[pyfunction]
#[pyo3(signature = (truth, sparse, eps, random_cuts=None, seed=0))]
fn verify_cut<'py>(
    py: Python<'py>,
    truth: &PyHypergraph,
    sparse: &PyHypergraph,
    eps: f64,
    random_cuts: Option<u64>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = match random_cuts {
        Some(cuts) => CutCheckMode::Random { cuts, seed },
        None => CutCheckMode::Exhaustive,
    };
    let rep = core_verify_cut(&truth.inner, &sparse.inner, eps, mode).map_err(err)?;
    to_json(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (truth, sparse, eps, trials=1000, seed=0))]
fn verify_spectral<'py>(
    py: Python<'py>,
    truth: &PyHypergraph,
    sparse: &PyHypergraph,
    eps: f64,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = core_verify_spectral(&truth.inner, &sparse.inner, eps, trials, seed).map_err(err)?;
    to_json(py, &rep)
}

/// Exact strengths, aligned with `graph.edges()`.
#[pyfunction]
fn edge_strengths(graph: &PyHypergraph) -> PyResult<Vec<f64>> {
    let s = core_strengths(&graph.inner).map_err(err)?;
    Ok(graph.inner.edges().iter().map(|e| s[&e.id()]).collect())
}

#[pyfunction]
fn effective_resistance(graph: &PyHypergraph, u: usize, v: usize) -> PyResult<f64> {
    core_resistance(&clique_expansion(&graph.inner), u, v).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, m, r_min=2, r_max=5, weighted=false, seed=0))]
fn gen_random(n: usize, m: usize, r_min: usize, r_max: usize, weighted: bool, seed: u64) -> PyResult<PyHypergraph> {
    Ok(PyHypergraph {
        inner: instances::gen_random(n, r_min, r_max, m, weighted, seed).map_err(err)?,
    })
}

#[pymodule]
fn pyhypersparse(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_class::<PyOracle>()?;
    m.add_function(wrap_pyfunction!(sparsify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cut, m)?)?;
    m.add_function(wrap_pyfunction!(verify_spectral, m)?)?;
    m.add_function(wrap_pyfunction!(edge_strengths, m)?)?;
    m.add_function(wrap_pyfunction!(effective_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    Ok(())
}
