//! Python bindings. Rationals cross the boundary as `fractions.Fraction`,
//! reports as plain dicts.

use hochrr::cech::{cohomology_dims, euler_characteristic};
use hochrr::charclass::{
    verify_at_jacobi, verify_at_symmetry, verify_ch_ring, verify_l_adjoint, verify_td_annihilation,
    Geometry as CoreGeometry,
};
use hochrr::expr::{parse_sheaf, parse_variety};
use hochrr::scalar::{to_text, ExactScalar};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn err(e: hochrr::Error) -> PyErr {
    match e {
        hochrr::Error::Parse { .. } | hochrr::Error::DomainViolation(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, x: &ExactScalar) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((to_text(x),))
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or_default().into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(xs) => {
            let items = xs
                .iter()
                .map(|x| to_py(py, x))
                .collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

/// A product of projective spaces, written like `P2` or `P1xP1`.
#[pyclass(frozen)]
struct Variety {
    inner: hochrr::cech::Variety,
}

#[pymethods]
impl Variety {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_variety(name).map_err(err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// A locally free sheaf from an expression such as `"T(-1) + O(2)"`.
    fn sheaf(&self, expr: &str) -> PyResult<Sheaf> {
        let e = parse_sheaf(expr)
            .map_err(err)?
            .eval(&self.inner)
            .map_err(err)?;
        Ok(Sheaf { inner: e })
    }

    fn __repr__(&self) -> String {
        format!("Variety('{}')", self.inner)
    }
}

#[pyclass(frozen)]
struct Sheaf {
    inner: hochrr::cech::Sheaf,
}

#[pymethods]
impl Sheaf {
    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    /// `[h^0, h^1, ..]`.
    fn cohomology(&self) -> PyResult<Vec<usize>> {
        cohomology_dims(&self.inner).map_err(err)
    }

    fn euler_characteristic(&self) -> PyResult<i64> {
        euler_characteristic(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Sheaf('{}', rank={})",
            self.inner.label(),
            self.inner.rank()
        )
    }
}

/// Characteristic classes and identity checks on one variety.
#[pyclass(unsendable)]
struct Geometry {
    inner: CoreGeometry,
}

#[pymethods]
impl Geometry {
    #[new]
    fn new(v: &Variety) -> PyResult<Self> {
        Ok(Self {
            inner: CoreGeometry::new(&v.inner).map_err(err)?,
        })
    }

    /// `[(p, monomial, value)]` pairing `ch_p(E)` with hyperplane monomials.
    fn chern_character<'py>(
        &self,
        py: Python<'py>,
        e: &Sheaf,
    ) -> PyResult<Vec<(usize, Vec<usize>, Bound<'py, PyAny>)>> {
        let ch = self.inner.chern_character(&e.inner).map_err(err)?;
        self.numbers(py, &ch)
    }

    fn todd_class<'py>(
        &self,
        py: Python<'py>,
    ) -> PyResult<Vec<(usize, Vec<usize>, Bound<'py, PyAny>)>> {
        let td = self.inner.todd_class().map_err(err)?;
        self.numbers(py, &td)
    }

    fn todd_integral<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let td = self.inner.todd_class().map_err(err)?;
        fraction(py, &self.inner.integrate(&td).map_err(err)?)
    }

    /// Both sides of Riemann-Roch for `E`.
    fn hrr_verify<'py>(&self, py: Python<'py>, e: &Sheaf) -> PyResult<Bound<'py, PyDict>> {
        let r = self.inner.hrr_verify(&e.inner).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("chi_cohomology", fraction(py, &r.chi_cohomology)?)?;
        d.set_item("chi_rr", fraction(py, &r.chi_rr)?)?;
        d.set_item("equal", r.equal)?;
        Ok(d)
    }

    /// `(additive, multiplicative)` for the Chern character on `E`, `F`.
    fn ch_ring_check(&self, e: &Sheaf, f: &Sheaf) -> PyResult<(bool, bool)> {
        verify_ch_ring(&self.inner, &e.inner, &f.inner).map_err(err)
    }

    /// One of `at-symmetry`, `at-jacobi`, `todd-annihilation`,
    /// `l-adjoint`, `l-adjoint-trivial`; returns the report as a dict.
    fn verify<'py>(&self, py: Python<'py>, identity: &str) -> PyResult<Bound<'py, PyAny>> {
        let g = &self.inner;
        let r = match identity {
            "at-symmetry" => verify_at_symmetry(g),
            "at-jacobi" => verify_at_jacobi(g),
            "todd-annihilation" => verify_td_annihilation(g),
            "l-adjoint" => verify_l_adjoint(g, false),
            "l-adjoint-trivial" => verify_l_adjoint(g, true),
            other => return Err(PyValueError::new_err(format!("unknown identity '{other}'"))),
        }
        .map_err(err)?;
        let v = serde_json::to_value(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        let d = to_py(py, &v)?;
        d.set_item("passed", r.passed())?;
        Ok(d)
    }
}

impl Geometry {
    fn numbers<'py>(
        &self,
        py: Python<'py>,
        m: &hochrr::cech::MixedClass,
    ) -> PyResult<Vec<(usize, Vec<usize>, Bound<'py, PyAny>)>> {
        self.inner
            .intersection_numbers(m)
            .map_err(err)?
            .into_iter()
            .map(|(p, a, x)| Ok((p, a, fraction(py, &x)?)))
            .collect()
    }
}

/// `[l_0, .., l_order]`, the coefficients of `z/(e^z - 1)`.
#[pyfunction]
fn l_coefficients(py: Python<'_>, order: usize) -> PyResult<Vec<Bound<'_, PyAny>>> {
    hochrr::ratseries::l_coefficients(order)
        .iter()
        .map(|x| fraction(py, x))
        .collect()
}

/// `[t_1, .., t_order]`, the coefficients of `log(z/(e^z - 1))`.
#[pyfunction]
fn t_coefficients(py: Python<'_>, order: usize) -> PyResult<Vec<Bound<'_, PyAny>>> {
    hochrr::ratseries::t_coefficients(order)
        .iter()
        .map(|x| fraction(py, x))
        .collect()
}

/// `dim HH^i` of `k[x_1..x_n]` at a weight, from cochains with inputs of degree at most `cap`.
#[pyfunction]
fn hochschild_dim(nvars: usize, i: usize, cap: i64, weight: Vec<i64>) -> PyResult<usize> {
    if weight.len() != nvars {
        return Err(PyValueError::new_err("weight needs one entry per variable"));
    }
    Ok(hochrr::hochschild::cohomology_dim(nvars, i, cap, &weight))
}

/// `dim` of the degree-`i` polyvector fields at a weight.
#[pyfunction]
fn polyvector_dim(nvars: usize, i: usize, weight: Vec<i64>) -> PyResult<usize> {
    if weight.len() != nvars {
        return Err(PyValueError::new_err("weight needs one entry per variable"));
    }
    Ok(hochrr::hochschild::polyvector_dim(nvars, i, &weight))
}

#[pymodule]
fn hochrr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Variety>()?;
    m.add_class::<Sheaf>()?;
    m.add_class::<Geometry>()?;
    m.add_function(wrap_pyfunction!(l_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(t_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(hochschild_dim, m)?)?;
    m.add_function(wrap_pyfunction!(polyvector_dim, m)?)?;
    Ok(())
}
