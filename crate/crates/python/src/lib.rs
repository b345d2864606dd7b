//! Python bindings for `lct-core`.
//!
//! Rationals cross the boundary as `fractions.Fraction`; inputs accept
//! anything whose `str()` is `p` or `p/q` (ints, Fractions, strings).

use num_bigint::BigUint;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lct_core::{self as core, Error, Rat, ThresholdValue};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceCap { .. } => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.to_fraction_string(),))
}

fn threshold<'py>(py: Python<'py>, v: &ThresholdValue) -> PyResult<Bound<'py, PyAny>> {
    match v {
        ThresholdValue::Zero => fraction(py, &Rat::zero()),
        ThresholdValue::Finite(r) => fraction(py, r),
        ThresholdValue::Infinite => Ok(f64::INFINITY.into_pyobject(py)?.into_any()),
    }
}

fn rat_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    let s = obj.str()?.to_string();
    s.parse()
        .map_err(|e| PyValueError::new_err(format!("`{s}` is not a rational: {e}")))
}

fn threshold_arg(obj: &Bound<'_, PyAny>) -> PyResult<ThresholdValue> {
    if let Ok(f) = obj.extract::<f64>() {
        if f.is_infinite() && f > 0.0 {
            return Ok(ThresholdValue::Infinite);
        }
    }
    obj.str()?.to_string().parse().map_err(to_py_err)
}

fn support_arg(points: Vec<Vec<u32>>) -> Vec<core::ExponentVector> {
    points.into_iter().map(core::ExponentVector::new).collect()
}

/// Sparse polynomial with rational coefficients.
#[pyclass(name = "Poly", module = "lctpy", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: core::Poly,
}

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text, dim=None, generic=true))]
    fn new(text: &str, dim: Option<usize>, generic: bool) -> PyResult<Self> {
        let inner = core::parse_poly(text, dim)
            .map_err(|e| PyValueError::new_err(e.to_string()))?
            .with_generic(generic);
        Ok(PyPoly { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn generic(&self) -> bool {
        self.inner.generic_coefficients()
    }

    fn support(&self) -> Vec<Vec<u32>> {
        self.inner
            .support()
            .into_iter()
            .map(|e| e.entries().to_vec())
            .collect()
    }

    /// Vanishing order at the origin, `None` for the zero polynomial.
    fn order(&self) -> Option<u64> {
        self.inner.order()
    }

    fn truncate(&self, m: u64) -> Self {
        PyPoly {
            inner: self.inner.truncate(m),
        }
    }

    fn direct_sum(&self, other: &PyPoly) -> Self {
        PyPoly {
            inner: self.inner.direct_sum(&other.inner),
        }
    }

    /// Restriction to the coordinate axes in `keep` (numbered from 0).
    fn restrict(&self, keep: Vec<usize>) -> PyResult<Self> {
        Ok(PyPoly {
            inner: self.inner.restrict_to_axes(&keep).map_err(to_py_err)?,
        })
    }

    fn lct<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        report(py, &core::lct_newton(&self.inner))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', dim={})", self.inner, self.inner.dim())
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.inner == other.inner
    }
}

fn report<'py>(py: Python<'py>, r: &core::ThresholdReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", threshold(py, &r.value)?)?;
    d.set_item("exact", r.is_exact())?;
    match &r.witness {
        core::Witness::Facet { facet, diagonal } => {
            d.set_item("t_star", fraction(py, diagonal)?)?;
            d.set_item("facet", (facet.normal.clone(), facet.offset))?;
        }
        core::Witness::DiagonalLp { diagonal } => d.set_item("t_star", fraction(py, diagonal)?)?,
        core::Witness::ZeroPolynomial | core::Witness::ConstantTerm => {}
    }
    match &r.bounds {
        Some((lo, hi)) => d.set_item("bounds", (fraction(py, lo)?, fraction(py, hi)?))?,
        None => d.set_item("bounds", py.None())?,
    }
    Ok(d)
}

/// Newton threshold report for a polynomial expression.
#[pyfunction]
#[pyo3(signature = (text, degenerate=false))]
fn lct<'py>(py: Python<'py>, text: &str, degenerate: bool) -> PyResult<Bound<'py, PyDict>> {
    let f = PyPoly::new(text, None, !degenerate)?;
    report(py, &core::lct_newton(&f.inner))
}

#[pyfunction]
fn diagonal_parameter<'py>(py: Python<'py>, support: Vec<Vec<u32>>) -> PyResult<Bound<'py, PyAny>> {
    let t = core::diagonal_parameter(&support_arg(support)).map_err(to_py_err)?;
    fraction(py, &t)
}

/// `[(normal, offset), ...]` for every facet `normal · x >= offset > 0`.
#[pyfunction]
fn facets(support: Vec<Vec<u32>>) -> PyResult<Vec<(Vec<u64>, u64)>> {
    let fs = core::facets(&support_arg(support)).map_err(to_py_err)?;
    Ok(fs.into_iter().map(|f| (f.normal, f.offset)).collect())
}

#[pyfunction]
fn contains_point(support: Vec<Vec<u32>>, point: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
    let p = point.iter().map(rat_arg).collect::<PyResult<Vec<_>>>()?;
    core::contains_point(&support_arg(support), &p).map_err(to_py_err)
}

#[pyfunction]
fn lct_diagonal<'py>(py: Python<'py>, exponents: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
    threshold(py, &core::lct_diagonal(&exponents).map_err(to_py_err)?)
}

#[pyfunction]
fn lct_direct_sum<'py>(
    py: Python<'py>,
    a: &Bound<'py, PyAny>,
    b: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    threshold(py, &core::lct_direct_sum(&threshold_arg(a)?, &threshold_arg(b)?))
}

#[pyfunction]
fn multiplicity_bounds<'py>(
    py: Python<'py>,
    text: &str,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let f = PyPoly::new(text, None, true)?;
    let (lo, hi) = core::multiplicity_bounds(&f.inner).map_err(to_py_err)?;
    Ok((fraction(py, &lo)?, fraction(py, &hi)?))
}

#[pyfunction]
fn truncation_bound<'py>(py: Python<'py>, n: u64, m: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &core::truncation_bound(n, m).map_err(to_py_err)?)
}

fn sample_list<'py>(py: Python<'py>, s: &core::ThresholdSetSample) -> PyResult<Vec<Bound<'py, PyAny>>> {
    s.values.iter().map(|v| fraction(py, v)).collect()
}

#[pyfunction]
fn ht1<'py>(py: Python<'py>, k: u64) -> PyResult<Vec<Bound<'py, PyAny>>> {
    sample_list(py, &core::ht1(k).map_err(to_py_err)?)
}

#[pyfunction]
fn ht2<'py>(py: Python<'py>, bound: u64) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let s = py.detach(|| core::ht2_enumerate(bound)).map_err(to_py_err)?;
    sample_list(py, &s)
}

#[pyfunction]
fn toric_sample<'py>(
    py: Python<'py>,
    n: usize,
    degree: u32,
    count: usize,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    sample_list(py, &core::toric_sample(n, degree, count, seed).map_err(to_py_err)?)
}

/// `[(lo, hi, count), ...]` dense windows of the given values.
#[pyfunction]
fn accumulation_scan<'py>(
    py: Python<'py>,
    values: Vec<Bound<'py, PyAny>>,
    delta: &Bound<'py, PyAny>,
    k: usize,
) -> PyResult<Vec<(Bound<'py, PyAny>, Bound<'py, PyAny>, usize)>> {
    let vals = values.iter().map(rat_arg).collect::<PyResult<Vec<_>>>()?;
    let sample = core::ThresholdSetSample::new(
        0,
        vals,
        core::sets::Provenance::External {
            source: "python".into(),
        },
    );
    let found = core::accumulation_scan(&sample, &rat_arg(delta)?, k).map_err(to_py_err)?;
    found
        .iter()
        .map(|w| Ok((fraction(py, &w.lo)?, fraction(py, &w.hi)?, w.count)))
        .collect()
}

#[pyfunction]
fn family_limit_check<'py>(
    py: Python<'py>,
    c: &Bound<'py, PyAny>,
    max_m: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = core::family_limit_check(&threshold_arg(c)?, max_m).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("passed", r.passed)?;
    d.set_item("empty", r.empty)?;
    d.set_item("first_m", r.first_m)?;
    let values = r.values.iter().map(|v| fraction(py, v)).collect::<PyResult<Vec<_>>>()?;
    d.set_item("values", values)?;
    Ok(d)
}

/// `(max, witness)`: largest sum of `n` unit fractions below 1.
#[pyfunction]
fn gap_search<'py>(py: Python<'py>, n: usize) -> PyResult<(Bound<'py, PyAny>, Vec<u64>)> {
    let r = core::gap_search(n).map_err(to_py_err)?;
    Ok((fraction(py, &r.max)?, r.witness))
}

#[pyfunction]
fn sylvester(k: usize) -> PyResult<Vec<BigUint>> {
    Ok(core::sylvester(k).map_err(to_py_err)?.terms)
}

#[pyfunction]
fn epsilon_candidate<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &core::epsilon_candidate(n).map_err(to_py_err)?)
}

#[pymodule]
fn lctpy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(lct, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_parameter, m)?)?;
    m.add_function(wrap_pyfunction!(facets, m)?)?;
    m.add_function(wrap_pyfunction!(contains_point, m)?)?;
    m.add_function(wrap_pyfunction!(lct_diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(lct_direct_sum, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(truncation_bound, m)?)?;
    m.add_function(wrap_pyfunction!(ht1, m)?)?;
    m.add_function(wrap_pyfunction!(ht2, m)?)?;
    m.add_function(wrap_pyfunction!(toric_sample, m)?)?;
    m.add_function(wrap_pyfunction!(accumulation_scan, m)?)?;
    m.add_function(wrap_pyfunction!(family_limit_check, m)?)?;
    m.add_function(wrap_pyfunction!(gap_search, m)?)?;
    m.add_function(wrap_pyfunction!(sylvester, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_candidate, m)?)?;
    Ok(())
}
