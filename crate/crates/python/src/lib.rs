//! Python bindings for `pareto-lab`.

use pyo3::exceptions::{PyArithmeticError, PyMemoryError, PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use pareto_lab::constructions;
use pareto_lab::enumeration::{self, Budget, FeasibleSet};
use pareto_lab::geometry::{self, Arithmetic, Rational};
use pareto_lab::harness::{self, ExperimentConfig};
use pareto_lab::{Domain, DominanceOrder, Error, MatrixDistribution, RandomStream, Sense, Solution};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NumericFailure(_) => PyArithmeticError::new_err(e.to_string()),
        Error::Capacity { .. } => PyMemoryError::new_err(e.to_string()),
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for pareto_lab::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn big_int<'py>(py: Python<'py>, digits: String) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "builtins")?.getattr("int")?.call1((digits,))
}

/// `"max"` / `"min"` per coordinate; all maximized when omitted.
fn order(senses: Option<Vec<String>>, d: usize) -> PyResult<DominanceOrder> {
    let Some(senses) = senses else {
        return Ok(DominanceOrder::maximize_all(d));
    };
    let parsed = senses
        .iter()
        .map(|s| match s.as_str() {
            "max" => Ok(Sense::Maximize),
            "min" => Ok(Sense::Minimize),
            other => Err(PyValueError::new_err(format!("sense must be 'max' or 'min', got {other:?}"))),
        })
        .collect::<PyResult<Vec<_>>>()?;
    Ok(DominanceOrder::new(parsed))
}

fn dim(points: &[Vec<f64>]) -> usize {
    points.first().map_or(0, Vec::len)
}

fn solution(bits: &[i64], domain: Domain) -> PyResult<Solution> {
    Solution::from_values(bits, domain).py()
}

/// A `d x n` objective matrix.
#[pyclass(module = "pareto_lab", frozen)]
struct ObjectiveMatrix {
    inner: pareto_lab::ObjectiveMatrix,
}

#[pymethods]
impl ObjectiveMatrix {
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(Self { inner: pareto_lab::ObjectiveMatrix::from_rows(&rows).py()? })
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.inner.rows().map(<[f64]>::to_vec).collect()
    }

    fn columns(&self) -> Vec<Vec<f64>> {
        self.inner.columns()
    }

    /// Objective vector of a 0/1 (or, with `signed=True`, -1/1) solution.
    #[pyo3(signature = (x, signed=false))]
    fn evaluate(&self, x: Vec<i64>, signed: bool) -> PyResult<Vec<f64>> {
        let domain = if signed { Domain::PlusMinusOne } else { Domain::ZeroOne };
        Ok(pareto_lab::evaluate(&self.inner, &solution(&x, domain)?).py()?.into_inner())
    }

    fn __repr__(&self) -> String {
        format!("ObjectiveMatrix(d={}, n={})", self.inner.d(), self.inner.n())
    }
}

/// Entry distribution: `uniform:<lo>:<hi>`, `symuniform:<h>` or `gaussian:<sigma>`.
#[pyclass(module = "pareto_lab", frozen)]
struct DistributionSpec {
    inner: pareto_lab::DistributionSpec,
}

#[pymethods]
impl DistributionSpec {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Self { inner: spec.parse().py()? })
    }

    /// Density bound; infinite for the Gaussian.
    #[getter]
    fn phi(&self) -> f64 {
        self.inner.phi()
    }

    #[getter]
    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }

    #[getter]
    fn symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    /// A `d x n` matrix drawn from the stream `(seed, path)`.
    #[pyo3(signature = (d, n, seed, path=Vec::new()))]
    fn sample_matrix(&self, d: usize, n: usize, seed: u64, path: Vec<u64>) -> PyResult<ObjectiveMatrix> {
        let md = MatrixDistribution::iid(d, n, self.inner).py()?;
        Ok(ObjectiveMatrix { inner: md.sample(&RandomStream::with_path(seed, path)) })
    }

    fn __repr__(&self) -> String {
        format!("DistributionSpec('{}')", self.inner)
    }
}

/// Accounting of the cloning-step construction.
#[pyclass(module = "pareto_lab", frozen, get_all)]
struct BRParameters {
    n: u64,
    d: u64,
    phi: f64,
    n_p: u64,
    n_q: u64,
    n_q_hat: f64,
    density_fits: bool,
    phi_hat: Option<f64>,
    phi_hat_residual: Option<f64>,
    objects_used: u64,
    objects_used_real: f64,
    bound_value: f64,
    ln_bound_value: f64,
}

#[pymethods]
impl BRParameters {
    fn __repr__(&self) -> String {
        format!(
            "BRParameters(n={}, d={}, phi={}, n_p={}, n_q={}, objects_used={}, bound_value={})",
            self.n, self.d, self.phi, self.n_p, self.n_q, self.objects_used, self.bound_value
        )
    }
}

#[pyfunction]
fn br_parameters(n: u64, d: u64, phi: f64) -> PyResult<BRParameters> {
    let p = constructions::br_parameters(n, d, phi).py()?;
    Ok(BRParameters {
        n: p.n,
        d: p.d,
        phi: p.phi,
        n_p: p.n_p,
        n_q: p.n_q,
        n_q_hat: p.n_q_hat,
        density_fits: p.density_fits,
        phi_hat: p.phi_hat,
        phi_hat_residual: p.phi_hat_residual,
        objects_used: p.objects_used,
        objects_used_real: p.objects_used_real,
        bound_value: p.bound_value,
        ln_bound_value: p.ln_bound_value,
    })
}

/// True iff `b` dominates `a`.
#[pyfunction]
#[pyo3(signature = (b, a, senses=None))]
fn dominates(b: Vec<f64>, a: Vec<f64>, senses: Option<Vec<String>>) -> PyResult<bool> {
    let ord = order(senses, b.len())?;
    let b = pareto_lab::ObjectiveVector::new(b).py()?;
    let a = pareto_lab::ObjectiveVector::new(a).py()?;
    pareto_lab::dominates(&b, &a, &ord).py()
}

/// Indices of the non-dominated points, ascending.
#[pyfunction]
#[pyo3(signature = (points, senses=None))]
fn pareto_filter(points: Vec<Vec<f64>>, senses: Option<Vec<String>>) -> PyResult<Vec<usize>> {
    let ord = order(senses, dim(&points))?;
    pareto_lab::pareto_filter(&points, &ord).py()
}

/// Same result as `pareto_filter`, by divide and conquer.
#[pyfunction]
#[pyo3(signature = (points, senses=None))]
fn pareto_maxima_dc(points: Vec<Vec<f64>>, senses: Option<Vec<String>>) -> PyResult<Vec<usize>> {
    let ord = order(senses, dim(&points))?;
    enumeration::pareto_maxima_dc(&points, &ord).py()
}

fn feasible_set(kind: &str, n: usize, k: Option<usize>) -> PyResult<FeasibleSet> {
    Ok(match kind {
        "cube" => FeasibleSet::FullCube(n),
        "sign-cube" => FeasibleSet::SignCube(n),
        "fixed-cardinality" => FeasibleSet::FixedCardinality {
            n,
            k: k.ok_or_else(|| PyValueError::new_err("fixed-cardinality needs k"))?,
        },
        "spanning-trees" | "gadget-trees" => {
            let m = k.ok_or_else(|| PyValueError::new_err(format!("{kind} needs k = vertex count")))?;
            if kind == "spanning-trees" {
                FeasibleSet::SpanningTreesComplete(m)
            } else {
                FeasibleSet::GadgetTrees(m)
            }
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown feasible set {other:?}; expected cube, sign-cube, fixed-cardinality, spanning-trees or gadget-trees"
            )))
        }
    })
}

type ParetoTriples = Vec<(Vec<i64>, Vec<f64>, u64)>;

/// Pareto-optimal solutions as `(x, value, multiplicity)` triples.
///
/// `feasible` is one of `cube`, `sign-cube`, `fixed-cardinality` (with
/// `k`), `spanning-trees` or `gadget-trees` (with `k` the vertex count).
#[pyfunction]
#[pyo3(signature = (matrix, feasible="cube", k=None, senses=None))]
fn pareto_set(
    matrix: &ObjectiveMatrix,
    feasible: &str,
    k: Option<usize>,
    senses: Option<Vec<String>>,
) -> PyResult<ParetoTriples> {
    let m = &matrix.inner;
    let fs = feasible_set(feasible, m.n(), k)?;
    let set = enumeration::pareto_set(m, &fs, &order(senses, m.d())?, &Budget::default()).py()?;
    Ok(set
        .solutions()
        .iter()
        .zip(set.values())
        .zip(set.multiplicities())
        .map(|((x, v), &mult)| (x.values().map(|t| t as i64).collect(), v.coords().to_vec(), mult))
        .collect())
}

/// Number of Pareto-optimal feasible solutions.
#[pyfunction]
#[pyo3(signature = (matrix, feasible="cube", k=None, senses=None))]
fn count_pareto(
    matrix: &ObjectiveMatrix,
    feasible: &str,
    k: Option<usize>,
    senses: Option<Vec<String>>,
) -> PyResult<u64> {
    let m = &matrix.inner;
    let fs = feasible_set(feasible, m.n(), k)?;
    enumeration::count_pareto(m, &fs, &order(senses, m.d())?, &Budget::default()).py()
}

#[pyfunction]
fn wendel_probability(py: Python<'_>, n: u64, d: u64) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &geometry::wendel_probability(n, d).py()?)
}

#[pyfunction]
fn zonotope_vertex_count(py: Python<'_>, n: u64, d: u64) -> PyResult<Bound<'_, PyAny>> {
    big_int(py, geometry::zonotope_vertex_count_generic(n, d).py()?.to_string())
}

#[pyfunction]
fn lower_bound_basic(py: Python<'_>, n: u64, d: u64) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &geometry::lower_bound_basic(n, d).py()?)
}

#[pyfunction]
fn lower_bound_simple(n: u64, d: u64) -> PyResult<f64> {
    geometry::lower_bound_simple(n, d).py()
}

#[pyfunction]
fn lower_bound_restricted<'py>(
    py: Python<'py>,
    n: u64,
    d: u64,
    s_card: Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let card = s_card
        .str()?
        .to_str()?
        .parse()
        .map_err(|_| PyValueError::new_err("s_card must be a non-negative integer"))?;
    fraction(py, &geometry::lower_bound_restricted(n, d, &card).py()?)
}

#[pyfunction]
fn origin_in_hull(points: Vec<Vec<f64>>) -> PyResult<bool> {
    geometry::origin_in_hull(&points).py()
}

/// Indices of the extreme points; `exact=True` runs every linear program
/// in rational arithmetic.
#[pyfunction]
#[pyo3(signature = (points, exact=false))]
fn hull_vertices(points: Vec<Vec<f64>>, exact: bool) -> PyResult<Vec<usize>> {
    let arith = if exact { Arithmetic::Exact } else { Arithmetic::Certified };
    geometry::hull_vertices_with(&points, arith).py()
}

#[pyfunction]
fn bentley_cover_check(points: Vec<Vec<f64>>) -> PyResult<bool> {
    geometry::bentley_cover_check(&points).py()
}

#[pyfunction]
fn cone_meets_negative_orthant(points: Vec<Vec<f64>>) -> PyResult<bool> {
    geometry::cone_meets_negative_orthant(&points).py()
}

/// Runs an experiment described by a JSON config and returns the JSON
/// export (`config`, `records`, `summary`) as a string.
#[pyfunction]
#[pyo3(signature = (config_json, threads=None))]
fn run_experiment(py: Python<'_>, config_json: &str, threads: Option<usize>) -> PyResult<String> {
    let cfg = ExperimentConfig::from_json(config_json).py()?;
    let out = py.detach(|| harness::run_experiment_with_threads(&cfg, threads)).py()?;
    if let Some(e) = &out.error {
        return Err(PyValueError::new_err(format!("trial {} failed: {}", e.trial, e.message)));
    }
    harness::to_json(&out).py()
}

#[pymodule]
#[pyo3(name = "pareto_lab")]
fn pareto_lab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<ObjectiveMatrix>()?;
    m.add_class::<DistributionSpec>()?;
    m.add_class::<BRParameters>()?;
    m.add_function(wrap_pyfunction!(dominates, m)?)?;
    m.add_function(wrap_pyfunction!(pareto_filter, m)?)?;
    m.add_function(wrap_pyfunction!(pareto_maxima_dc, m)?)?;
    m.add_function(wrap_pyfunction!(pareto_set, m)?)?;
    m.add_function(wrap_pyfunction!(count_pareto, m)?)?;
    m.add_function(wrap_pyfunction!(wendel_probability, m)?)?;
    m.add_function(wrap_pyfunction!(zonotope_vertex_count, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_basic, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_simple, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_restricted, m)?)?;
    m.add_function(wrap_pyfunction!(origin_in_hull, m)?)?;
    m.add_function(wrap_pyfunction!(hull_vertices, m)?)?;
    m.add_function(wrap_pyfunction!(bentley_cover_check, m)?)?;
    m.add_function(wrap_pyfunction!(cone_meets_negative_orthant, m)?)?;
    m.add_function(wrap_pyfunction!(br_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
