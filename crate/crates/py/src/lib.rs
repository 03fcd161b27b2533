use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ltlnorm_core as core;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An LTL formula with the compensation operator `(x)`.
#[pyclass(name = "Formula", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFormula(core::Formula);

#[pymethods]
impl PyFormula {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        core::parse_formula(text)
            .map(PyFormula)
            .map_err(value_error)
    }

    fn depth(&self) -> usize {
        self.0.depth()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn atoms(&self) -> Vec<String> {
        self.0.atoms().into_iter().collect()
    }

    /// Rewrites every `φ (x) ψ` as `G φ | F(!φ & F ψ)`.
    fn expand_otimes(&self) -> PyFormula {
        PyFormula(self.0.expand_otimes())
    }

    fn __str__(&self) -> String {
        core::print_formula(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", core::print_formula(&self.0))
    }
}

/// A lasso run: prefix states once, then loop states forever.
#[pyclass(name = "Trace", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTrace(core::LassoTrace);

#[pymethods]
impl PyTrace {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        core::parse_trace(text).map(PyTrace).map_err(value_error)
    }

    /// Builds a trace from lists of atom-name lists.
    #[staticmethod]
    fn from_states(prefix: Vec<Vec<String>>, lasso: Vec<Vec<String>>) -> PyResult<Self> {
        let conv = |v: Vec<Vec<String>>| v.into_iter().map(|s| s.into_iter().collect()).collect();
        core::LassoTrace::new(conv(prefix), conv(lasso))
            .map(PyTrace)
            .map_err(value_error)
    }

    #[getter]
    fn prefix(&self) -> Vec<Vec<String>> {
        self.0
            .prefix()
            .iter()
            .map(|s| s.iter().cloned().collect())
            .collect()
    }

    #[getter(r#loop)]
    fn lasso(&self) -> Vec<Vec<String>> {
        self.0
            .lasso()
            .iter()
            .map(|s| s.iter().cloned().collect())
            .collect()
    }

    fn canonical_position(&self, p: usize) -> usize {
        self.0.canonical_position(p)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        core::print_trace(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Trace({:?})", core::print_trace(&self.0))
    }
}

/// Truth of `formula` at position `pos` of `trace`.
#[pyfunction]
#[pyo3(signature = (formula, trace, pos = 0))]
fn eval(formula: &PyFormula, trace: &PyTrace, pos: usize) -> bool {
    core::eval_at(&formula.0, &trace.0, pos)
}

/// Same semantics via the bounded-horizon reference evaluator.
#[pyfunction]
#[pyo3(signature = (formula, trace, pos = 0))]
fn eval_oracle(formula: &PyFormula, trace: &PyTrace, pos: usize) -> bool {
    core::eval_oracle(&formula.0, &trace.0, pos)
}

fn classifiers(norms_json: &str) -> PyResult<core::ClassifierFormulas> {
    core::load_norm_document(norms_json)
        .map(|doc| doc.classifiers())
        .map_err(value_error)
}

/// Compiles a JSON norm document into `{"full", "weak", "violating"}`.
#[pyfunction]
fn compile_norms<'py>(py: Python<'py>, norms_json: &str) -> PyResult<Bound<'py, PyDict>> {
    let cf = classifiers(norms_json)?;
    let out = PyDict::new(py);
    out.set_item("full", PyFormula(cf.full))?;
    out.set_item("weak", PyFormula(cf.weak))?;
    out.set_item("violating", PyFormula(cf.violating))?;
    Ok(out)
}

/// Returns `FULLY_COMPLIANT`, `WEAKLY_COMPLIANT` or `VIOLATING`.
#[pyfunction]
fn classify(norms_json: &str, trace: &PyTrace) -> PyResult<&'static str> {
    let cf = classifiers(norms_json)?;
    core::classify(&cf, &trace.0)
        .map(|c| c.label())
        .map_err(value_error)
}

/// Counts per class over every lasso within the bounds.
#[pyfunction]
fn check_partition<'py>(
    py: Python<'py>,
    norms_json: &str,
    atoms: Vec<String>,
    max_prefix: usize,
    max_loop: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cf = classifiers(norms_json)?;
    let report = core::check_partition(&cf, &atoms, max_prefix, max_loop).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("total", report.total)?;
    for class in core::ComplianceClass::ALL {
        out.set_item(class.label(), report.per_class.get(class))?;
    }
    out.set_item("anomalies", report.anomaly_count())?;
    out.set_item(
        "anomaly_traces",
        report
            .anomalies
            .iter()
            .map(|a| (core::print_trace(&a.trace), a.mask.to_string()))
            .collect::<Vec<_>>(),
    )?;
    out.set_item("deterministic", report.deterministic)?;
    out.set_item("report", report.to_string())?;
    Ok(out)
}

/// Number of disagreements between definitional `(x)` and its expansion.
#[pyfunction]
#[pyo3(signature = (seed, cases = 10_000))]
fn check_otimes(seed: u64, cases: usize) -> usize {
    let cfg = core::OTimesCheck {
        cases,
        ..core::OTimesCheck::standard(seed)
    };
    core::check_otimes_equivalence(&cfg).len()
}

/// N1–N4 verdicts, classification and `F(!C & D)` on the counterexample run.
#[pyfunction]
fn reproduce_paradox(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let report = core::reproduce_paradox();
    let out = PyDict::new(py);
    out.set_item("trace", PyTrace(report.trace.clone()))?;
    for (name, v) in &report.n_results {
        out.set_item(name, *v)?;
    }
    out.set_item("classification", report.classification.map(|c| c.label()))?;
    out.set_item("violating_witness", report.violating_witness)?;
    out.set_item("reproduced", report.reproduced())?;
    Ok(out)
}

#[pymodule]
fn ltlnorm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFormula>()?;
    m.add_class::<PyTrace>()?;
    m.add_function(wrap_pyfunction!(eval, m)?)?;
    m.add_function(wrap_pyfunction!(eval_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(compile_norms, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(check_partition, m)?)?;
    m.add_function(wrap_pyfunction!(check_otimes, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_paradox, m)?)?;
    Ok(())
}
