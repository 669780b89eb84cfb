//! Python bindings for `opmeans`.
//!
//! Matrices cross the boundary as nested lists (`re`, optional `im`) or as
//! matrix JSON; reports come back as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use opmeans::instances::{EigRange, InstanceSpec};
use opmeans::matrix::{self, HermitianMatrix, HpdMatrix};
use opmeans::scalar::{self, MeanDescriptor, SpectralBounds};
use opmeans::verify::{run_suite, DaykinPair, SuiteConfig, SuiteKind};

fn err(e: opmeans::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bounds(m: f64, big_m: f64) -> PyResult<SpectralBounds> {
    SpectralBounds::new(m, big_m).map_err(err)
}

/// A Hermitian matrix.
#[pyclass(name = "Matrix", module = "opmeans_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrix {
    inner: HermitianMatrix,
}

impl PyMatrix {
    fn hpd(&self) -> PyResult<HpdMatrix> {
        HpdMatrix::new(self.inner.clone()).map_err(err)
    }
}

#[pymethods]
impl PyMatrix {
    #[new]
    #[pyo3(signature = (re, im = None))]
    fn new(re: Vec<Vec<f64>>, im: Option<Vec<Vec<f64>>>) -> PyResult<Self> {
        let inner = HermitianMatrix::from_parts(&re, im.as_deref()).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self {
            inner: HermitianMatrix::identity(n),
        }
    }

    #[staticmethod]
    fn diagonal(d: Vec<f64>) -> Self {
        Self {
            inner: HermitianMatrix::from_diagonal(&d),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = matrix::matrix_from_json(text).map_err(err)?;
        Ok(Self { inner })
    }

    fn to_json(&self) -> String {
        matrix::matrix_to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn re(&self) -> Vec<Vec<f64>> {
        self.inner.real_rows()
    }

    #[getter]
    fn im(&self) -> Vec<Vec<f64>> {
        self.inner.imag_rows()
    }

    /// Ascending eigenvalues.
    fn eigenvalues(&self) -> Vec<f64> {
        self.inner.eigenvalues()
    }

    fn __add__(&self, other: &PyMatrix) -> PyResult<Self> {
        let inner = self.inner.add(&other.inner).map_err(err)?;
        Ok(Self { inner })
    }

    fn __sub__(&self, other: &PyMatrix) -> PyResult<Self> {
        let inner = self.inner.sub(&other.inner).map_err(err)?;
        Ok(Self { inner })
    }

    fn __mul__(&self, s: f64) -> Self {
        Self {
            inner: self.inner.scale(s),
        }
    }

    fn __rmul__(&self, s: f64) -> Self {
        self.__mul__(s)
    }

    fn __repr__(&self) -> String {
        format!("Matrix(n={})", self.inner.dim())
    }
}

/// An operator mean given by its representing function.
#[pyclass(name = "Mean", module = "opmeans_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyMean {
    inner: MeanDescriptor,
}

fn wrap_mean(d: opmeans::Result<MeanDescriptor>) -> PyResult<PyMean> {
    d.map(|inner| PyMean { inner }).map_err(err)
}

#[pymethods]
impl PyMean {
    #[staticmethod]
    #[pyo3(signature = (w = 0.5))]
    fn arithmetic(w: f64) -> PyResult<Self> {
        wrap_mean(MeanDescriptor::arithmetic(w))
    }

    #[staticmethod]
    #[pyo3(signature = (w = 0.5))]
    fn geometric(w: f64) -> PyResult<Self> {
        wrap_mean(MeanDescriptor::geometric(w))
    }

    #[staticmethod]
    #[pyo3(signature = (w = 0.5))]
    fn harmonic(w: f64) -> PyResult<Self> {
        wrap_mean(MeanDescriptor::harmonic(w))
    }

    #[staticmethod]
    fn power_path(r: f64, t: f64) -> PyResult<Self> {
        wrap_mean(MeanDescriptor::power_path(r, t))
    }

    /// The dual mean, with representing function `x / f(x)`.
    fn dual(&self) -> Self {
        Self {
            inner: scalar::dual_descriptor(&self.inner),
        }
    }

    /// `f(x)`.
    fn __call__(&self, x: f64) -> PyResult<f64> {
        scalar::representing_value(&self.inner, x).map_err(err)
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label()
    }

    fn __repr__(&self) -> String {
        format!("Mean({})", self.inner.label())
    }

    fn __eq__(&self, other: &PyMean) -> bool {
        self.inner == other.inner
    }
}

/// `A σ B`.
#[pyfunction]
fn mean(a: &PyMatrix, b: &PyMatrix, desc: &PyMean) -> PyResult<PyMatrix> {
    let out = matrix::mean(&a.hpd()?, &b.hpd()?, &desc.inner).map_err(err)?;
    Ok(PyMatrix {
        inner: out.into_hermitian(),
    })
}

#[pyfunction]
fn tensor_product(a: &PyMatrix, b: &PyMatrix) -> PyResult<PyMatrix> {
    let inner = matrix::tensor_product(&a.inner, &b.inner).map_err(err)?;
    Ok(PyMatrix { inner })
}

#[pyfunction]
fn hadamard_product(a: &PyMatrix, b: &PyMatrix) -> PyResult<PyMatrix> {
    let inner = matrix::hadamard_product(&a.inner, &b.inner).map_err(err)?;
    Ok(PyMatrix { inner })
}

/// `(holds, λ_min(B − A))` for `A ≤ B`.
#[pyfunction]
#[pyo3(signature = (a, b, rel_tol = matrix::DEFAULT_LOEWNER_TOL))]
fn loewner_leq(a: &PyMatrix, b: &PyMatrix, rel_tol: f64) -> PyResult<(bool, f64)> {
    let v = matrix::loewner_leq(&a.inner, &b.inner, rel_tol).map_err(err)?;
    Ok((v.holds, v.min_gap_eigenvalue))
}

#[pyfunction]
#[pyo3(name = "gamma_constant")]
fn gamma(desc: &PyMean, m: f64, big_m: f64) -> PyResult<f64> {
    scalar::gamma_constant(&desc.inner, bounds(m, big_m)?).map_err(err)
}

#[pyfunction]
#[pyo3(name = "zeta_constant")]
fn zeta(desc: &PyMean, m: f64, big_m: f64) -> PyResult<f64> {
    scalar::zeta_constant(&desc.inner, bounds(m, big_m)?).map_err(err)
}

/// `(mu, nu, gamma, zeta, sqrt_gamma_zeta)`.
#[pyfunction]
fn reverse_constants(desc: &PyMean, m: f64, big_m: f64) -> PyResult<(f64, f64, f64, f64, f64)> {
    let c = scalar::reverse_constants(&desc.inner, bounds(m, big_m)?).map_err(err)?;
    Ok((c.mu, c.nu, c.gamma, c.zeta, c.sqrt_gamma_zeta))
}

#[pyfunction]
fn lee_constant(m: f64, big_m: f64) -> PyResult<f64> {
    Ok(scalar::lee_constant(bounds(m, big_m)?))
}

#[pyfunction]
fn closed_form_weighted_constant(alpha: f64, m: f64, big_m: f64) -> PyResult<f64> {
    scalar::closed_form_weighted_constant(alpha, bounds(m, big_m)?).map_err(err)
}

/// Constants for the reflected power-path pairs; `(gamma, zeta, sqrt_gamma_zeta)`.
#[pyfunction]
fn path_pair_constants(r: f64, t: f64, s0: f64, m: f64, big_m: f64) -> PyResult<(f64, f64, f64)> {
    let c = scalar::theorem25_constants(r, t, s0, bounds(m, big_m)?).map_err(err)?;
    Ok((c.gamma, c.zeta, c.sqrt_gamma_zeta))
}

/// Seeded pairs with `m A ≤ B ≤ M A`.
#[pyfunction]
#[pyo3(signature = (dim, n_terms, m, big_m, seed, complex = false, commuting = false))]
fn instance(
    dim: usize,
    n_terms: usize,
    m: f64,
    big_m: f64,
    seed: u64,
    complex: bool,
    commuting: bool,
) -> PyResult<Vec<(PyMatrix, PyMatrix)>> {
    let mut spec = InstanceSpec::new(dim, n_terms, bounds(m, big_m)?, seed).map_err(err)?;
    spec.complex = complex;
    let pairs = if commuting {
        spec.commuting_family().map_err(err)?.pairs
    } else {
        spec.generate().map_err(err)?
    };
    Ok(pairs
        .into_iter()
        .map(|(a, b)| {
            (
                PyMatrix {
                    inner: a.into_hermitian(),
                },
                PyMatrix {
                    inner: b.into_hermitian(),
                },
            )
        })
        .collect())
}

/// Runs a verification suite and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (
    suite, *, reps = 200, seed = 42, dims = None, n_terms = None, m = 1.0, big_m = 4.0,
    complex = false, commuting = false, eig_range = None, mean = None, r = None, t = None,
    s = None, s0 = None, pair = None
))]
#[allow(clippy::too_many_arguments)]
fn verify(
    py: Python<'_>,
    suite: &str,
    reps: usize,
    seed: u64,
    dims: Option<Vec<usize>>,
    n_terms: Option<Vec<usize>>,
    m: f64,
    big_m: f64,
    complex: bool,
    commuting: bool,
    eig_range: Option<(f64, f64)>,
    mean: Option<PyMean>,
    r: Option<f64>,
    t: Option<f64>,
    s: Option<f64>,
    s0: Option<f64>,
    pair: Option<&str>,
) -> PyResult<String> {
    let kind: SuiteKind = suite.parse().map_err(err)?;
    let mut config = SuiteConfig::new(kind);
    config.reps = reps;
    config.seed = seed;
    if let Some(d) = dims {
        config.dims = d;
    }
    if let Some(n) = n_terms {
        config.n_terms = n;
    }
    config.bounds = bounds(m, big_m)?;
    config.complex = complex;
    config.commuting = commuting;
    if let Some((lo, hi)) = eig_range {
        config.eig_range = EigRange::new(lo, hi).map_err(err)?;
    }
    config.mean = mean.map(|d| d.inner);
    config.r = r;
    config.t = t;
    config.s = s;
    config.s0 = s0;
    config.pair = match pair {
        None => None,
        Some("milne") => Some(DaykinPair::Milne),
        Some("callebaut") => {
            let s = config.s.take().ok_or_else(|| PyValueError::new_err("the callebaut pair needs s"))?;
            Some(DaykinPair::Callebaut { s })
        }
        Some(other) => return Err(PyValueError::new_err(format!("unknown pair {other:?}"))),
    };
    let report = py.detach(|| run_suite(&config)).map_err(err)?;
    Ok(report.to_json())
}

#[pymodule]
fn opmeans_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyMean>()?;
    m.add_function(wrap_pyfunction!(mean, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_product, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard_product, m)?)?;
    m.add_function(wrap_pyfunction!(loewner_leq, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(reverse_constants, m)?)?;
    m.add_function(wrap_pyfunction!(lee_constant, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_weighted_constant, m)?)?;
    m.add_function(wrap_pyfunction!(path_pair_constants, m)?)?;
    m.add_function(wrap_pyfunction!(instance, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
