//! Python bindings for the lspace core library.

use lspace_core::cfd::{build_cfd, cfd_twist_compare};
use lspace_core::coloring::surgery_is_lspace_oracle_window;
use lspace_core::gluing::{splice_is_lspace, SpliceProblem};
use lspace_core::interval::{is_lspace_slope, lspace_interval, stored_witness, IntervalKind};
use lspace_core::seifert::{sfs_fiber_interval, sfs_is_lspace};
use lspace_core::{abelian::fmt_rat, Error, GluingMatrix};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(
    lspace,
    LSpaceError,
    PyException,
    "Raised with the core error name as `args[0]`."
);

fn err(e: Error) -> PyErr {
    LSpaceError::new_err((e.name(), e.to_string()))
}

fn invalid(msg: impl Into<String>) -> PyErr {
    err(Error::InvalidInput(msg.into()))
}

/// A slope a·m + b·l, normalized so the first nonzero coordinate is positive.
#[pyclass(frozen, eq, hash, from_py_object, module = "lspace")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Slope(lspace_core::Slope);

#[pymethods]
impl Slope {
    #[new]
    fn new(a: i64, b: i64) -> PyResult<Self> {
        if a == 0 && b == 0 {
            return Err(invalid("slope (0, 0)"));
        }
        Ok(Slope(lspace_core::Slope::new(a, b)))
    }

    /// Parse "a/b".
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(Slope).map_err(err)
    }

    #[getter]
    fn a(&self) -> i64 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> i64 {
        self.0.b
    }

    /// Algebraic intersection with another slope.
    fn pairing(&self, other: &Slope) -> i64 {
        self.0.dot(other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Slope({}, {})", self.0.a, self.0.b)
    }
}

fn slope_arg(obj: &Bound<'_, PyAny>) -> PyResult<lspace_core::Slope> {
    if let Ok(s) = obj.extract::<Slope>() {
        return Ok(s.0);
    }
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(err);
    }
    let (a, b): (i64, i64) = obj.extract()?;
    Slope::new(a, b).map(|s| s.0)
}

/// Parse a JSON string or a dict through the json module.
fn document(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(s) = obj.extract::<String>() {
        return Ok(s);
    }
    let json = obj.py().import("json")?;
    json.call_method1("dumps", (obj,))?.extract()
}

fn from_json<T: serde::de::DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    serde_json::from_str(&document(obj)?).map_err(|e| invalid(e.to_string()))
}

/// A Floer simple manifold with torus boundary, given by its torsion record.
#[pyclass(frozen, skip_from_py_object, module = "lspace")]
#[derive(Clone)]
struct Manifold(lspace_core::FloerSimpleManifold);

#[pymethods]
impl Manifold {
    /// Build from a JSON string or an equivalent dict.
    #[new]
    fn new(record: &Bound<'_, PyAny>) -> PyResult<Self> {
        let r: lspace_core::ManifoldRecord = from_json(record)?;
        lspace_core::FloerSimpleManifold::try_from(r)
            .map(Manifold)
            .map_err(err)
    }

    #[getter]
    fn g(&self) -> i64 {
        self.0.g()
    }

    #[getter]
    fn k(&self) -> i64 {
        self.0.k()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("manifold serializes")
    }

    /// The L-space interval as (kind, lo, hi) with slopes as "a/b" strings.
    #[pyo3(signature = (witness=None))]
    fn interval(
        &self,
        witness: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<(String, Option<String>, Option<String>)> {
        let w = self.witness(witness)?;
        Ok(match lspace_interval(&self.0, w).map_err(err)?.kind {
            IntervalKind::ClosedInterval { lo, hi } => {
                ("closed".into(), Some(lo.to_string()), Some(hi.to_string()))
            }
            IntervalKind::AllButLongitude => ("all-but-longitude".into(), None, None),
            IntervalKind::ComplementOfPoint { at } => {
                ("complement-of-point".into(), Some(at.to_string()), None)
            }
        })
    }

    #[pyo3(signature = (slope, witness=None))]
    fn is_lspace(
        &self,
        slope: &Bound<'_, PyAny>,
        witness: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<bool> {
        let w = self.witness(witness)?;
        is_lspace_slope(&self.0, w, slope_arg(slope)?).map_err(err)
    }

    /// Coloring verdict for Y(nu), given that Y(mu) is an L-space.
    #[pyo3(signature = (mu, nu, window=1))]
    fn oracle(&self, mu: &Bound<'_, PyAny>, nu: &Bound<'_, PyAny>, window: i64) -> PyResult<bool> {
        surgery_is_lspace_oracle_window(&self.0, slope_arg(mu)?, slope_arg(nu)?, window)
            .map_err(err)
    }

    /// D^tau as a list of (delta, gamma) pairs.
    #[pyo3(signature = (positive=false))]
    fn dtau(&self, positive: bool) -> Vec<(i64, i64)> {
        let d = self.0.dtau();
        let v = if positive { d.positive } else { d.all };
        v.into_iter().map(|e| (e.delta, e.gamma)).collect()
    }

    fn cfd_dot(&self) -> PyResult<String> {
        build_cfd(&self.0).map(|g| g.to_dot()).map_err(err)
    }

    fn twist_compare(&self) -> PyResult<bool> {
        cfd_twist_compare(&self.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Manifold(g={}, k={}, |tauc|={})",
            self.0.g(),
            self.0.k(),
            self.0.tauc.len()
        )
    }
}

impl Manifold {
    fn witness(&self, w: Option<&Bound<'_, PyAny>>) -> PyResult<lspace_core::Slope> {
        match w {
            Some(w) => slope_arg(w),
            None => stored_witness(&self.0).map_err(err),
        }
    }
}

/// Seifert fibered space verdict as a dict with rationals as "n/d" strings.
#[pyfunction]
#[pyo3(signature = (e0, fibers, fiber=None))]
fn sfs<'py>(
    py: Python<'py>,
    e0: i64,
    fibers: Vec<(i64, i64)>,
    fiber: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let d = lspace_core::seifert::SeifertData::new(e0, &fibers);
    let v = sfs_is_lspace(&d).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("lspace", v.lspace)?;
    out.set_item("reason", v.reason)?;
    out.set_item("euler", fmt_rat(Some(v.euler)))?;
    out.set_item("fiber_form", v.fiber_form)?;
    out.set_item("orbifold_form", v.orbifold_form)?;
    if let Some(j) = fiber {
        let f = sfs_fiber_interval(&d, j).map_err(err)?;
        out.set_item(
            "fiber_interval",
            (fmt_rat(Some(f.lower)), fmt_rat(Some(f.upper))),
        )?;
    }
    Ok(out)
}

/// Is the union of y1 and y2 glued by phi an L-space.
#[pyfunction]
fn glue(y1: &Manifold, y2: &Manifold, phi: [[i64; 2]; 2]) -> PyResult<bool> {
    let prob = SpliceProblem {
        y1: y1.0.clone(),
        y2: y2.0.clone(),
        phi: GluingMatrix::new(phi).map_err(err)?,
    };
    splice_is_lspace(&prob).map(|v| v.lspace).map_err(err)
}

#[pymodule]
fn lspace(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LSpaceError", m.py().get_type::<LSpaceError>())?;
    m.add_class::<Slope>()?;
    m.add_class::<Manifold>()?;
    m.add_function(wrap_pyfunction!(sfs, m)?)?;
    m.add_function(wrap_pyfunction!(glue, m)?)?;
    Ok(())
}
