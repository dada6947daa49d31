use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use regmap_core::classical::GroupSpec;
use regmap_core::classify::{self, Signature, Tier};
use regmap_core::error::Error;
use regmap_core::group::{ElemId, FiniteGroup};
use regmap_core::{euler, lie, primegraph};

create_exception!(regmap, CapExceededError, PyException);
create_exception!(regmap, ArithmeticError, PyValueError);

fn err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => CapExceededError::new_err(e.to_string()),
        Error::NonPositive(_)
        | Error::NotDivisor(..)
        | Error::OddOrder(_)
        | Error::NonIntegralChi { .. }
        | Error::FamilyExponent { .. }
        | Error::FamilyTooLarge(_) => ArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Serialized through JSON, so reports arrive as plain dicts and lists.
fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

/// A finite permutation group built from a spec such as `PSL2:7`,
/// `SU3:3`, `data:Sp6_2` or `SL2:8xD:10`.
#[pyclass(name = "Group", module = "regmap", frozen)]
struct PyGroup {
    inner: FiniteGroup,
}

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (spec, max_order = 2_000_000))]
    fn new(py: Python<'_>, spec: &str, max_order: u64) -> PyResult<Self> {
        let spec: GroupSpec = spec.parse().map_err(err)?;
        let inner = py.detach(|| spec.build(max_order)).map_err(err)?;
        Ok(PyGroup { inner })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn spectrum(&self) -> Vec<u64> {
        self.inner.spectrum().iter().copied().collect()
    }

    /// `(order, size, centralizer_order)` per class.
    fn classes(&self) -> Vec<(u64, u64, u64)> {
        let g = &self.inner;
        g.classes().iter().map(|c| (c.order, c.size, g.centralizer_order(c.rep))).collect()
    }

    fn element(&self, x: ElemId) -> PyResult<Vec<u32>> {
        if x as u64 >= self.inner.order() {
            return Err(err(Error::NotInGroup));
        }
        Ok(self.inner.elem(x).iter().map(|&p| p as u32).collect())
    }

    fn element_order(&self, x: ElemId) -> PyResult<u64> {
        self.element(x)?;
        Ok(self.inner.elem_order(x))
    }

    fn sylow_is_cyclic(&self, t: u64) -> PyResult<bool> {
        self.inner.sylow_is_cyclic(t).map_err(err)
    }

    fn structure_constant(&self, g_class: usize, h_class: usize, z: ElemId) -> PyResult<u64> {
        let k = self.inner.classes().len();
        if g_class >= k || h_class >= k || z as u64 >= self.inner.order() {
            return Err(PyValueError::new_err("class index or element out of range"));
        }
        Ok(classify::structure_constant(&self.inner, g_class, h_class, z))
    }

    /// Prime graph in adjacency-list text form (`*` marks non-cyclic Sylow).
    fn prime_graph(&self) -> String {
        primegraph::group_gk(&self.inner).to_adjacency_text()
    }

    fn f_value(&self) -> PyResult<usize> {
        primegraph::f_lower_bound(&self.inner).map_err(err)
    }

    #[pyo3(signature = (m, n, jobs = 1))]
    fn enumerate_pairs(&self, py: Python<'_>, m: u64, n: u64, jobs: usize) -> PyResult<Py<PyAny>> {
        let g = &self.inner;
        let rec = py.detach(|| classify::enumerate_triangle_pairs(g, m, n, jobs)).map_err(err)?;
        to_py(py, &rec)
    }

    #[pyo3(signature = (signature = "any", jobs = 1))]
    fn classify(&self, py: Python<'_>, signature: &str, jobs: usize) -> PyResult<Py<PyAny>> {
        let sig: Signature = signature.parse().map_err(err)?;
        let g = &self.inner;
        let recs = py.detach(|| classify::classify_signature(g, sig, jobs)).map_err(err)?;
        to_py(py, &recs)
    }

    fn validate_triple(&self, py: Python<'_>, g: ElemId, h: ElemId) -> PyResult<Py<PyAny>> {
        let order = self.inner.order();
        if g as u64 >= order || h as u64 >= order {
            return Err(err(Error::NotInGroup));
        }
        let t = euler::validate_triple(&self.inner, g, h).map_err(err)?;
        to_py(py, &(t.m, t.n, t.euler))
    }

    fn __repr__(&self) -> String {
        format!("Group('{}', order={})", self.inner.name(), self.inner.order())
    }
}

#[pyfunction]
fn euler_characteristic(py: Python<'_>, order: u64, m: u64, n: u64) -> PyResult<Py<PyAny>> {
    let e = euler::euler_characteristic(order, m, n).map_err(err)?;
    let mut v = serde_json::to_value(&e).map_err(|x| PyValueError::new_err(x.to_string()))?;
    v["factored"] = e.factored().into();
    to_py(py, &v)
}

#[pyfunction]
fn lcm_divisibility(py: Python<'_>, order: u64, m: u64, n: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &euler::lcm_divisibility(order, m, n).map_err(err)?)
}

#[pyfunction]
fn primitive_prime_divisors(py: Python<'_>, q: u64, a: u32) -> PyResult<Py<PyAny>> {
    if q < 2 || a < 1 {
        return Err(PyValueError::new_err("need q >= 2 and a >= 1"));
    }
    to_py(py, &lie::primitive_prime_divisors(q, a))
}

/// Order of a simple group of Lie type, e.g. `A1:7`, `2A2:3`, `E8:2`, as an int.
#[pyfunction]
fn order_formula(py: Python<'_>, spec: &str) -> PyResult<Py<PyAny>> {
    let spec: lie::LieSpec = spec.parse().map_err(err)?;
    let v = lie::order_formula(&spec).map_err(err)?.value();
    Ok(py.import("builtins")?.getattr("int")?.call1((v.to_string(),))?.unbind())
}

#[pyfunction]
fn f_bound_check(py: Python<'_>, spec: &str) -> PyResult<Py<PyAny>> {
    let spec: lie::LieSpec = spec.parse().map_err(err)?;
    to_py(py, &lie::f_bound_check(&spec).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (jobs = 1))]
fn verify_theorem_12(py: Python<'_>, jobs: usize) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| classify::verify_theorem_12(jobs)).map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (max_order = 2_000_000, tier = "default", jobs = 1))]
fn verify_table_rows(py: Python<'_>, max_order: u64, tier: &str, jobs: usize) -> PyResult<Py<PyAny>> {
    let tier: Tier = tier.parse().map_err(err)?;
    let r = py.detach(|| classify::verify_table_rows(max_order, tier, jobs)).map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
fn infinite_family(py: Python<'_>, a: u32) -> PyResult<Py<PyAny>> {
    let c = py.detach(|| classify::infinite_family(a)).map_err(err)?;
    to_py(py, &c)
}

#[pymodule]
fn regmap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyGroup>()?;
    m.add("CapExceededError", py.get_type::<CapExceededError>())?;
    m.add("ArithmeticError", py.get_type::<ArithmeticError>())?;
    m.add_function(wrap_pyfunction!(euler_characteristic, m)?)?;
    m.add_function(wrap_pyfunction!(lcm_divisibility, m)?)?;
    m.add_function(wrap_pyfunction!(primitive_prime_divisors, m)?)?;
    m.add_function(wrap_pyfunction!(order_formula, m)?)?;
    m.add_function(wrap_pyfunction!(f_bound_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem_12, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table_rows, m)?)?;
    m.add_function(wrap_pyfunction!(infinite_family, m)?)?;
    Ok(())
}
