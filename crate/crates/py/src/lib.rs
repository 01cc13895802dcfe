//! Python bindings. Expressions cross the boundary as canonical strings;
//! structured results come back as plain dicts and lists.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use fcc_core::a0::{check_master, is_linear, A0Family, Coef};
use fcc_core::arith::parse::{parse_expr, Bindings};
use fcc_core::connection::{solve_connection, verify_connection};
use fcc_core::curvature::{check_3rc, is_flat, riemann};
use fcc_core::dual::dual_structure;
use fcc_core::fmanifold::{JordanSpec, Structure};
use fcc_core::hierarchy::generate;
use fcc_core::metric::metric_checks;
use fcc_core::report::{run_checks, CheckOptions};
use fcc_core::specfile::{linear_a0, SpecFile};
use fcc_core::{tables, Error, Polynomial};

fn err(e: Error) -> PyErr {
    match e {
        Error::Index(..) => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Round-trips through JSON so results arrive as ordinary Python objects.
fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn from_py<T: serde::de::DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let s: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&s).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Regular F-manifold with Euler field in canonical coordinates.
#[pyclass(name = "FManifold", module = "fcc")]
struct PyFManifold {
    spec: SpecFile,
    st: Structure,
}

impl PyFManifold {
    fn poly(&self, text: &str) -> PyResult<Polynomial> {
        let e = parse_expr(&self.st.space, &Bindings::new(), text).map_err(err)?;
        e.as_polynomial().cloned().ok_or_else(|| PyValueError::new_err(format!("'{text}' is not a polynomial")))
    }
}

#[pymethods]
impl PyFManifold {
    /// `functions` maps a name to the coordinate it depends on, e.g. {"F1": "u2"}.
    #[new]
    #[pyo3(signature = (blocks, constants = Vec::new(), functions = BTreeMap::new()))]
    fn new(blocks: Vec<usize>, constants: Vec<String>, functions: BTreeMap<String, String>) -> PyResult<Self> {
        let spec = SpecFile {
            blocks: JordanSpec::new(blocks).map_err(err)?,
            f: None,
            epsilon: None,
            a0: None,
            depth: None,
            constants,
            functions,
            metric: None,
        };
        let st = spec.structure().map_err(err)?;
        Ok(PyFManifold { spec, st })
    }

    #[getter]
    fn n(&self) -> usize {
        self.st.n()
    }

    #[getter]
    fn blocks(&self) -> Vec<usize> {
        self.st.spec.blocks().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("FManifold({:?})", self.st.spec.blocks())
    }

    /// Canonical form of an expression in this space.
    fn canonical(&self, expr: &str) -> PyResult<String> {
        let e = parse_expr(&self.st.space, &Bindings::new(), expr).map_err(err)?;
        Ok(self.st.space.fmt(&e))
    }

    /// a₀ from per-block coefficient lists [[F_{α,1}, ..], ..].
    fn a0_from_family(&self, family: &Bound<'_, PyAny>) -> PyResult<String> {
        let blocks: Vec<Vec<Vec<Coef>>> = from_py(family)?;
        let a = fcc_core::a0::build_a0(&self.st, &A0Family { blocks }).map_err(err)?;
        Ok(self.st.space.fmt_poly(&a.value))
    }

    fn a0_linear(&self, epsilon: &Bound<'_, PyAny>) -> PyResult<String> {
        let eps: Vec<Coef> = from_py(epsilon)?;
        let a = linear_a0(&self.spec.blocks, &self.st.space, &eps).map_err(err)?;
        Ok(self.st.space.fmt_poly(&a))
    }

    fn is_linear(&self, a0: &str) -> PyResult<bool> {
        Ok(is_linear(&self.st.space, &self.poly(a0)?))
    }

    /// Nonzero residuals of the master equation, keyed "i,j".
    fn check_master(&self, a0: &str) -> PyResult<BTreeMap<String, String>> {
        let f = self.poly(a0)?;
        Ok(check_master(&self.st, &f).iter().map(|((i, j), p)| (format!("{i},{j}"), self.st.space.fmt_poly(p))).collect())
    }

    /// Γ^i_{jk} keyed "i,j,k" with j ≤ k.
    fn connection(&self, a0: &str) -> PyResult<BTreeMap<String, String>> {
        let g = solve_connection(&self.st, &self.poly(a0)?).map_err(err)?;
        Ok(g.to_map(&self.st.space))
    }

    fn verify_connection<'py>(&self, py: Python<'py>, a0: &str) -> PyResult<Bound<'py, PyAny>> {
        let f = self.poly(a0)?;
        let g = solve_connection(&self.st, &f).map_err(err)?;
        to_py(py, &verify_connection(&self.st, &f, &g))
    }

    fn is_flat(&self, a0: &str) -> PyResult<bool> {
        let g = solve_connection(&self.st, &self.poly(a0)?).map_err(err)?;
        Ok(is_flat(&riemann(&g, &self.st.space)))
    }

    /// Index tuples (1-based) where the cyclic curvature condition fails.
    fn check_3rc(&self, a0: &str) -> PyResult<Vec<Vec<usize>>> {
        let g = solve_connection(&self.st, &self.poly(a0)?).map_err(err)?;
        let r = riemann(&g, &self.st.space);
        Ok(check_3rc(&r, &self.st.c).keys().map(|k| k.to_vec()).collect())
    }

    fn dual_connection(&self, a0: &str) -> PyResult<BTreeMap<String, String>> {
        let g = solve_connection(&self.st, &self.poly(a0)?).map_err(err)?;
        let d = dual_structure(&self.st, &g).map_err(err)?;
        Ok(d.gamma_star.to_map(&self.st.space))
    }

    fn dual_is_flat(&self, a0: &str) -> PyResult<bool> {
        let g = solve_connection(&self.st, &self.poly(a0)?).map_err(err)?;
        let d = dual_structure(&self.st, &g).map_err(err)?;
        Ok(is_flat(&riemann(&d.gamma_star, &self.st.space)))
    }

    /// {"a": [...], "V": [...], "X": [...]}.
    fn hierarchy<'py>(&self, py: Python<'py>, a0: &str, depth: usize) -> PyResult<Bound<'py, PyAny>> {
        let h = generate(&self.st, &self.poly(a0)?, depth).map_err(err)?;
        let sp = &self.st.space;
        let mut out = BTreeMap::new();
        out.insert("a", serde_json::json!(h.a.iter().map(|p| sp.fmt_poly(p)).collect::<Vec<_>>()));
        out.insert("V", serde_json::json!(h.v.iter().map(|m| m.to_strings(sp)).collect::<Vec<_>>()));
        out.insert("X", serde_json::json!(h.x.iter().map(|x| x.iter().map(|c| sp.fmt(c)).collect::<Vec<_>>()).collect::<Vec<_>>()));
        to_py(py, &out)
    }

    /// Invariance, Killing and bridge checks for a symmetric metric given as rows.
    fn metric_checks<'py>(&self, py: Python<'py>, a0: &str, metric: Vec<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
        let g = solve_connection(&self.st, &self.poly(a0)?).map_err(err)?;
        let sf = SpecFile { metric: Some(metric), ..self.spec.clone() };
        let m = sf.metric_matrix(&self.st).map_err(err)?.expect("metric was set");
        to_py(py, &metric_checks(&self.st, &m, &g))
    }
}

/// Runs the command-line checks on a spec given as a JSON string.
#[pyfunction]
#[pyo3(signature = (spec_json, master = false, connection = false, curvature = false, hierarchy = None, dual = false, metric = false))]
fn check<'py>(
    py: Python<'py>,
    spec_json: &str,
    master: bool,
    connection: bool,
    curvature: bool,
    hierarchy: Option<usize>,
    dual: bool,
    metric: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let sf = SpecFile::from_json(spec_json).map_err(err)?;
    let opts = CheckOptions { master, connection, curvature, hierarchy, dual, metric };
    let rep = run_checks(&sf, &opts).map_err(err)?;
    to_py(py, &rep)
}

#[pyfunction]
fn case_ids() -> Vec<&'static str> {
    tables::CASE_IDS.to_vec()
}

#[pyfunction]
fn verify_case<'py>(py: Python<'py>, id: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &tables::verify_case(id).map_err(err)?)
}

#[pymodule]
fn fcc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFManifold>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(case_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify_case, m)?)?;
    Ok(())
}
