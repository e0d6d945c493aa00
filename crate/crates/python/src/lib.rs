//! Python module `freedyn`.

use ::freedyn::dynamics::{detect_parabolic, growth_classify, iterate, omega_limit, omega_limit_backward};
use ::freedyn::report::{growth_report_json, limit_result_json, parabolic_report_json};
use ::freedyn::{autofile, build_graph, default_seeds, Alphabet, AutoFile, FamilySpec, IterationConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

fn value_error(e: ::freedyn::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_python<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "json")?.call_method1("loads", (v.to_string(),))
}

fn config(max_iter: Option<usize>, prefix: Option<usize>) -> PyResult<IterationConfig> {
    let mut cfg = IterationConfig::default();
    if let Some(m) = max_iter {
        cfg.max_iterations = m;
    }
    if let Some(p) = prefix {
        cfg.target_prefix = p;
    }
    cfg.validate().map_err(value_error)?;
    Ok(cfg)
}

/// A verified automorphism with optional fixed-subgroup generators and seeds.
#[pyclass(name = "Automorphism", frozen)]
struct PyAutomorphism {
    inner: AutoFile,
}

#[pymethods]
impl PyAutomorphism {
    /// Catalog family such as `phi_k:k=1` or `twist:n=3,k=1`.
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Self> {
        let fam = FamilySpec::parse(spec).and_then(|s| s.build()).map_err(value_error)?;
        Ok(PyAutomorphism { inner: fam.into() })
    }

    /// Automorphism file contents (`alphabet:`, `map`, `inv`, `fix:`, `seeds:`).
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyAutomorphism {
            inner: AutoFile::parse(text).map_err(value_error)?,
        })
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.inner.alphabet().names().to_vec()
    }

    #[getter]
    fn fix_gens(&self) -> Vec<String> {
        let a = self.inner.alphabet();
        self.inner.fix_gens.iter().map(|w| a.format(w)).collect()
    }

    #[getter]
    fn seeds(&self) -> Vec<String> {
        let a = self.inner.alphabet();
        self.inner.seeds.iter().map(|w| a.format(w)).collect()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[pyo3(signature = (word, p, max_len=None))]
    fn iterate(&self, word: &str, p: i64, max_len: Option<usize>) -> PyResult<String> {
        let a = self.inner.alphabet();
        let mut cfg = IterationConfig::default();
        if let Some(m) = max_len {
            cfg.max_word_length = m;
        }
        let g = a.parse(word).map_err(value_error)?;
        let w = iterate(&self.inner.pair, &g, p, &cfg).map_err(value_error)?;
        Ok(a.format(&w))
    }

    #[pyo3(signature = (word, backward=false, max_iter=None, prefix=None))]
    fn omega<'py>(
        &self,
        py: Python<'py>,
        word: &str,
        backward: bool,
        max_iter: Option<usize>,
        prefix: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let a = self.inner.alphabet();
        let cfg = config(max_iter, prefix)?;
        let g = a.parse(word).map_err(value_error)?;
        let r = if backward {
            omega_limit_backward(&self.inner.pair, &g, &cfg)
        } else {
            omega_limit(&self.inner.pair, &g, &cfg)
        }
        .map_err(value_error)?;
        to_python(py, &limit_result_json(&r, a))
    }

    #[pyo3(signature = (seed, max_iter=None, prefix=None))]
    fn parabolic<'py>(
        &self,
        py: Python<'py>,
        seed: &str,
        max_iter: Option<usize>,
        prefix: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let a = self.inner.alphabet();
        let cfg = config(max_iter, prefix)?;
        let g = a.parse(seed).map_err(value_error)?;
        let report = detect_parabolic(&self.inner.pair, &g, &cfg).map_err(value_error)?;
        to_python(py, &parabolic_report_json(&report, a))
    }

    #[pyo3(signature = (word, p_max=40))]
    fn growth<'py>(&self, py: Python<'py>, word: &str, p_max: usize) -> PyResult<Bound<'py, PyAny>> {
        let g = self.inner.alphabet().parse(word).map_err(value_error)?;
        let r = growth_classify(&self.inner.pair, &g, p_max, &IterationConfig::default()).map_err(value_error)?;
        to_python(py, &growth_report_json(&r))
    }

    #[pyo3(signature = (power=1))]
    fn abelianize(&self, power: i64) -> Vec<Vec<i64>> {
        self.inner.pair.power(power).abelianize().rows()
    }

    /// Returns `(dot, graph)` where `graph` is the JSON view as a dict.
    #[pyo3(signature = (seeds=None))]
    fn graph<'py>(&self, py: Python<'py>, seeds: Option<&str>) -> PyResult<(String, Bound<'py, PyAny>)> {
        let a = self.inner.alphabet();
        let seeds = match seeds {
            Some(list) => autofile::parse_list(a, list).map_err(value_error)?,
            None if !self.inner.seeds.is_empty() => self.inner.seeds.clone(),
            None => default_seeds(a.rank()),
        };
        let g = build_graph(&self.inner.pair, &self.inner.fix_gens, &seeds, &IterationConfig::default())
            .map_err(value_error)?;
        Ok((g.to_dot(), to_python(py, &g.to_json())?))
    }

    fn __repr__(&self) -> String {
        let lines = self.inner.pair.forward().describe();
        format!("Automorphism({})", lines.join(", "))
    }
}

/// Canonical text of a word over the standard alphabet of the given rank.
#[pyfunction]
fn reduce_word(word: &str, rank: usize) -> PyResult<String> {
    let a = Alphabet::standard(rank).map_err(value_error)?;
    Ok(a.format(&a.parse(word).map_err(value_error)?))
}

#[pyfunction]
fn classify_twist(n: i64, k: i64) -> PyResult<String> {
    Ok(::freedyn::classify_twist(n, k).map_err(value_error)?.to_string())
}

/// `(w, k)` with `w^-1 u delta^n(w) = a^k`, or `None` when no witness of
/// length at most `bound` exists.
#[pyfunction]
#[pyo3(signature = (u, n, bound=6))]
fn twist_reduce(u: &str, n: i64, bound: usize) -> PyResult<Option<(String, i64)>> {
    let a = Alphabet::standard(2).map_err(value_error)?;
    let found = ::freedyn::twist_reduce(&a.parse(u).map_err(value_error)?, n, bound).map_err(value_error)?;
    Ok(found.map(|(w, k)| (a.format(&w), k)))
}

#[pymodule]
#[pyo3(name = "freedyn")]
fn freedyn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAutomorphism>()?;
    m.add_function(wrap_pyfunction!(reduce_word, m)?)?;
    m.add_function(wrap_pyfunction!(classify_twist, m)?)?;
    m.add_function(wrap_pyfunction!(twist_reduce, m)?)?;
    Ok(())
}
