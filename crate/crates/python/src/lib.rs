//! Python module `ramanujan_pi`. Real values cross the boundary as decimal
//! strings so no precision is lost.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use pi_core::cli;
use pi_core::elliptic::{self, Modulus};
use pi_core::invariants::{self, SingularTable};
use pi_core::series::{self, FamilyTag};
use pi_core::{Error, Float, PrecisionContext, Rational};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Parse(_) | Error::Unsupported(_) => PyValueError::new_err(e.to_string()),
        Error::Evaluation(_) | Error::Consistency(_) | Error::Verification(_) => {
            PyArithmeticError::new_err(e.to_string())
        }
    }
}

fn ctx(digits: u32) -> PyResult<PrecisionContext> {
    PrecisionContext::new(digits).map_err(py_err)
}

fn decimal(x: &Float, digits: u32) -> String {
    x.to_string_radix(10, Some(digits as usize + 1))
}

fn parse_float(text: &str, c: &PrecisionContext) -> PyResult<Float> {
    let parsed = Float::parse(text).map_err(|e| PyValueError::new_err(format!("{text:?}: {e}")))?;
    Ok(Float::with_val(c.bits(), parsed))
}

/// One catalog series.
#[pyclass(frozen, name = "SeriesSpec")]
struct PySeriesSpec {
    inner: series::SeriesSpec,
}

#[pymethods]
impl PySeriesSpec {
    #[getter]
    fn key(&self) -> &str {
        &self.inner.key
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family.name()
    }

    #[getter]
    fn multiplier(&self) -> String {
        self.inner.multiplier.to_string()
    }

    #[getter(A)]
    fn a(&self) -> String {
        self.inner.a.to_string()
    }

    #[getter(B)]
    fn b(&self) -> String {
        self.inner.b.to_string()
    }

    #[getter]
    fn base(&self) -> String {
        self.inner.base.to_string()
    }

    #[getter]
    fn alternating(&self) -> bool {
        self.inner.alternating
    }

    #[getter]
    fn target(&self) -> &'static str {
        self.inner.target.label()
    }

    /// `None` for the elementary series.
    #[getter]
    fn digits_per_term(&self) -> Option<f64> {
        series::digits_per_term(&self.inner).ok()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Sum of the first `n_terms` terms at `digits` precision.
    fn partial_sum(&self, n_terms: u64, digits: u32) -> PyResult<String> {
        let c = ctx(digits)?;
        let r = if self.inner.is_rational() {
            series::evaluate_binary_splitting(&self.inner, n_terms, &c)
        } else {
            series::evaluate_terms(&self.inner, n_terms, &c)
        }
        .map_err(py_err)?;
        Ok(decimal(&r.value, digits))
    }

    /// Mean digits gained per term over `from..to`.
    fn measured_digits_per_term(&self, from: u64, to: u64, digits: u32) -> PyResult<f64> {
        series::measured_digits_per_term(&self.inner, from, to, &ctx(digits)?).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("SeriesSpec({:?})", self.inner.key)
    }
}

#[pyfunction]
fn catalog() -> Vec<PySeriesSpec> {
    series::catalog()
        .into_iter()
        .map(|inner| PySeriesSpec { inner })
        .collect()
}

#[pyfunction]
fn lookup(key: &str) -> PyResult<PySeriesSpec> {
    Ok(PySeriesSpec {
        inner: series::lookup(key).map_err(py_err)?,
    })
}

/// `"3.14159..."` to `digits` places, every digit checked.
#[pyfunction]
#[pyo3(signature = (method, digits))]
fn compute_pi(py: Python<'_>, method: &str, digits: u32) -> PyResult<String> {
    let method = method.to_string();
    let c = py
        .detach(move || cli::compute_pi(&method, digits))
        .map_err(py_err)?;
    Ok(format!("3.{}", c.fraction))
}

/// `K(k)` for `k` given as a decimal string.
#[pyfunction]
fn ellip_k(k: &str, digits: u32) -> PyResult<String> {
    let c = ctx(digits)?;
    let m = Modulus::from_k(&parse_float(k, &c)?, &c).map_err(py_err)?;
    Ok(decimal(&elliptic::ellip_k(&m, &c), digits))
}

#[pyfunction]
fn ellip_e(k: &str, digits: u32) -> PyResult<String> {
    let c = ctx(digits)?;
    let m = Modulus::from_k(&parse_float(k, &c)?, &c).map_err(py_err)?;
    Ok(decimal(&elliptic::ellip_e(&m, &c), digits))
}

/// The singular modulus `k_r` for a positive rational `r`, e.g. `"58"`.
#[pyfunction]
fn lambda_star(r: &str, digits: u32) -> PyResult<String> {
    let c = ctx(digits)?;
    let r: Rational = r
        .parse()
        .map_err(|e| PyValueError::new_err(format!("{r:?}: {e}")))?;
    let m = invariants::lambda_star(&r, &c).map_err(py_err)?;
    Ok(decimal(m.k(), digits))
}

/// `(G, g)` at the singular modulus for `N`.
#[pyfunction]
fn class_invariants(n: u32, digits: u32) -> PyResult<(String, String)> {
    let c = ctx(digits)?;
    let m = invariants::lambda_star(&Rational::from(n), &c).map_err(py_err)?;
    let inv = invariants::class_invariants(&m, &c);
    Ok((decimal(&inv.big_g, digits), decimal(&inv.small_g, digits)))
}

/// Fundamental unit of Q(sqrt d) as `(a, b)` strings for `a + b sqrt d`.
#[pyfunction]
fn fundamental_unit(d: u64) -> PyResult<(String, String)> {
    let u = invariants::fundamental_unit(d).map_err(py_err)?;
    Ok((u.a().to_string(), u.b().to_string()))
}

/// Integer `(A, B)` of the series built for `tag` and `N`, expressed in the
/// form of catalog entry `key`, with the rounding residual.
#[pyfunction]
fn recover_coefficients(tag: &str, n: u32, key: &str, digits: u32) -> PyResult<(String, String, f64)> {
    let c = ctx(digits)?;
    let tag: FamilyTag = tag.parse().map_err(py_err)?;
    let table = SingularTable::builtin();
    let raw = series::build_series(tag, table.get(n).map_err(py_err)?, &c).map_err(py_err)?;
    let got = series::normalize(&raw, &series::lookup(key).map_err(py_err)?, &c).map_err(py_err)?;
    Ok((got.a.to_string(), got.b.to_string(), got.residual.to_f64()))
}

/// Every verification suite: a list of `(name, passed, max_defect)`.
#[pyfunction]
#[pyo3(signature = (digits=100))]
fn verify(py: Python<'_>, digits: u32) -> PyResult<Vec<(String, bool, Option<String>)>> {
    let checks = py.detach(move || cli::run_checks(digits, None)).map_err(py_err)?;
    Ok(checks
        .into_iter()
        .map(|c| {
            let defect = c
                .max_defect
                .as_ref()
                .map(|d| format!("{:.3e}", Float::with_val(53, d)));
            (c.name, c.passed, defect)
        })
        .collect())
}

#[pymodule]
fn ramanujan_pi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeriesSpec>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(lookup, m)?)?;
    m.add_function(wrap_pyfunction!(compute_pi, m)?)?;
    m.add_function(wrap_pyfunction!(ellip_k, m)?)?;
    m.add_function(wrap_pyfunction!(ellip_e, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_star, m)?)?;
    m.add_function(wrap_pyfunction!(class_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(fundamental_unit, m)?)?;
    m.add_function(wrap_pyfunction!(recover_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("DIGIT_CAP", cli::DIGIT_CAP)?;
    Ok(())
}
