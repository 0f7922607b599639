//! Python bindings for the flat-affine toolkit.
//!
//! Rationals cross the boundary as strings such as `"-3/2"`; reports and
//! documents cross as plain dicts and lists decoded from their JSON form.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

use flat_affine::affine::AffineMap as CoreMap;
use flat_affine::cli::errata::ErrataRegistry;
use flat_affine::cli::suites::{self, SuiteOptions};
use flat_affine::devmap::{self, pairing, LeftInvariantConnection};
use flat_affine::lsa::{self as core_lsa, catalog_lsa};
use flat_affine::numerics::scalar::{parse_rational, Rational};
use flat_affine::numerics::Matrix;
use flat_affine::stabilizer::{self, DomainSpec};

fn err(e: flat_affine::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn alpha_of(alpha: Option<&str>) -> PyResult<Option<Rational>> {
    alpha
        .map(|a| parse_rational(a).ok_or_else(|| PyValueError::new_err(format!("cannot parse parameter `{a}`"))))
        .transpose()
}

fn from_json<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn options(tol: f64, fd_tol: f64, samples: usize, seed: u64) -> SuiteOptions {
    SuiteOptions {
        tol,
        fd_tol,
        samples,
        seed,
    }
}

/// An invertible affine map `x ↦ Ax + b` of ℝⁿ.
#[pyclass(name = "AffineMap", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAffineMap(CoreMap<f64>);

#[pymethods]
impl PyAffineMap {
    #[new]
    fn new(linear: Vec<Vec<f64>>, translation: Vec<f64>) -> PyResult<Self> {
        let a = Matrix::from_rows(linear).map_err(err)?;
        CoreMap::new(a, translation).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(CoreMap::identity(n))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn linear(&self) -> Vec<Vec<f64>> {
        let a = self.0.linear();
        (0..a.rows())
            .map(|r| (0..a.cols()).map(|c| a[(r, c)]).collect())
            .collect()
    }

    #[getter]
    fn translation(&self) -> Vec<f64> {
        self.0.translation().to_vec()
    }

    fn apply(&self, x: Vec<f64>) -> PyResult<Vec<f64>> {
        self.0.apply(&x).map_err(err)
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.invert().map(Self).map_err(err)
    }

    fn distance(&self, other: &Self) -> f64 {
        self.0.distance(&other.0)
    }

    /// Whether the map sends the named domain into itself on sampled points.
    #[pyo3(signature = (domain, n=None, samples=64, tol=1e-9, seed=42))]
    fn preserves(&self, domain: &str, n: Option<usize>, samples: usize, tol: f64, seed: u64) -> PyResult<bool> {
        let spec = DomainSpec::from_name(domain, n).map_err(err)?;
        Ok(stabilizer::preserves_open_set(&self.0, &spec, samples, tol, seed).passed())
    }

    fn __repr__(&self) -> String {
        format!(
            "AffineMap(linear={:?}, translation={:?})",
            self.linear(),
            self.translation()
        )
    }
}

/// A catalogued left-symmetric algebra with exact rational structure constants.
#[pyclass(name = "Lsa", frozen)]
struct PyLsa(core_lsa::Lsa);

#[pymethods]
impl PyLsa {
    #[new]
    #[pyo3(signature = (name, alpha=None))]
    fn new(name: &str, alpha: Option<&str>) -> PyResult<Self> {
        let alpha = alpha_of(alpha)?;
        catalog_lsa(name, alpha.as_ref()).map(Self).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    /// `c[i][j][k]`, the k-th coordinate of `e_i · e_j`, as rational strings.
    fn constants(&self) -> Vec<Vec<Vec<String>>> {
        let n = self.0.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.0.constant(i, j, k).to_string()).collect())
                    .collect()
            })
            .collect()
    }

    fn product(&self, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        let parse = |v: Vec<String>| -> PyResult<Vec<Rational>> {
            v.iter().map(|s| alpha_of(Some(s)).map(Option::unwrap)).collect()
        };
        let (x, y) = (parse(x)?, parse(y)?);
        if x.len() != self.0.dim() || y.len() != self.0.dim() {
            return Err(PyValueError::new_err(
                "vector length differs from the algebra dimension",
            ));
        }
        Ok(self.0.product(&x, &y).iter().map(ToString::to_string).collect())
    }

    fn is_left_symmetric(&self) -> bool {
        core_lsa::is_left_symmetric(&self.0).passed()
    }

    fn is_associative(&self) -> bool {
        core_lsa::is_associative(&self.0).passed()
    }

    /// Point reached at time 1 by the geodesic from `x0` with velocity `u`,
    /// in the chart of the catalogued developing map.
    #[pyo3(signature = (x0, u, alpha=None))]
    fn exp_map(&self, x0: Vec<f64>, u: Vec<f64>, alpha: Option<&str>) -> PyResult<Vec<f64>> {
        let alpha = alpha_of(alpha)?.or_else(|| self.0.alpha().cloned());
        let chart = pairing(self.0.name(), alpha.as_ref()).map_err(err)?.devmap.chart();
        let conn = LeftInvariantConnection::new(&self.0, chart);
        devmap::exp_map(&conn, &x0, &u).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Lsa({:?})", self.0.label())
    }
}

/// Catalogue names grouped by kind.
#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    let out = flat_affine::cli::run(["flat-affine", "catalog", "list"]);
    py.import("json")?.call_method1("loads", (out.stdout,))
}

/// Dimension of the stabilizer algebra of a named domain.
#[pyfunction]
#[pyo3(signature = (domain, n=None))]
fn stabilizer_dim(domain: &str, n: Option<usize>) -> PyResult<usize> {
    let spec = DomainSpec::from_name(domain, n).map_err(err)?;
    Ok(stabilizer::stabilizer_algebra(&spec).map_err(err)?.dim())
}

type FieldStrings = (Vec<Vec<String>>, Vec<String>);

/// Exact basis of the stabilizer algebra as `(M, b)` pairs of rational strings.
#[pyfunction]
#[pyo3(signature = (domain, n=None))]
fn stabilizer_basis(domain: &str, n: Option<usize>) -> PyResult<Vec<FieldStrings>> {
    let spec = DomainSpec::from_name(domain, n).map_err(err)?;
    let alg = stabilizer::stabilizer_algebra(&spec).map_err(err)?;
    Ok(alg
        .basis()
        .iter()
        .map(|f| {
            let m = (0..f.m.rows())
                .map(|r| (0..f.m.cols()).map(|c| f.m[(r, c)].to_string()).collect())
                .collect();
            (m, f.b.iter().map(ToString::to_string).collect())
        })
        .collect())
}

/// Runs one verification suite (`lsa`, `devmap`, `rep` or `stabilizer`) and
/// returns its reports, with known errata annotated.
#[pyfunction]
#[pyo3(signature = (kind, name, alpha=None, n=None, tol=1e-9, fd_tol=1e-5, samples=1000, seed=42))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    kind: &str,
    name: &str,
    alpha: Option<&str>,
    n: Option<usize>,
    tol: f64,
    fd_tol: f64,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let alpha = alpha_of(alpha)?;
    let opts = options(tol, fd_tol, samples, seed);
    let mut reports = match kind {
        "lsa" => suites::lsa_suite(name, alpha.as_ref()),
        "devmap" => suites::devmap_suite(name, alpha.as_ref(), &opts),
        "rep" => suites::rep_suite(name, alpha.as_ref(), &opts),
        "stabilizer" => suites::stabilizer_suite(name, n, &opts),
        _ => return Err(PyValueError::new_err(format!("unknown suite `{kind}`"))),
    }
    .map_err(err)?;
    ErrataRegistry::builtin().annotate(&mut reports);
    from_json(py, &reports)
}

/// The full verification document produced by `flat-affine report all`.
#[pyfunction]
#[pyo3(signature = (tol=1e-9, fd_tol=1e-5, samples=1000, seed=42))]
fn report_all(py: Python<'_>, tol: f64, fd_tol: f64, samples: usize, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    let doc = suites::report_all(&options(tol, fd_tol, samples, seed), &ErrataRegistry::builtin()).map_err(err)?;
    from_json(py, &doc)
}

/// Runs the command-line interface in-process; returns `(code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = flat_affine::cli::run(std::iter::once("flat-affine".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn flataffine(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAffineMap>()?;
    m.add_class::<PyLsa>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer_dim, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer_basis, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(report_all, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
