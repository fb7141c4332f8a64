use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use rmi_core::omega::DEFAULT_BUDGET;
use rmi_core::report::parse_measures;
use rmi_core::{classic, corrected, omega, report};
use rmi_core::{Base, Error, Labeling, Margins, OmegaMethod, OmegaOptions, ReportOptions};

create_exception!(rmi, BudgetExceeded, PyRuntimeError);
create_exception!(rmi, UndefinedMeasure, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::UndefinedMeasure { .. } => UndefinedMeasure::new_err(e.to_string()),
        Error::Io(io) => io.into(),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn options(method: &str, budget: u64) -> PyResult<OmegaOptions> {
    let method: OmegaMethod = method.parse().map_err(PyValueError::new_err)?;
    Ok(OmegaOptions::new(method).with_budget(budget))
}

/// Group labels from any iterable; items are compared by `str()`.
fn labeling(items: &Bound<'_, PyAny>) -> PyResult<Labeling> {
    let mut tokens = Vec::new();
    for item in items.try_iter()? {
        tokens.push(item?.str()?.to_cow()?.into_owned());
    }
    Labeling::from_tokens(tokens).map_err(to_py)
}

#[pyclass(name = "ContingencyTable", module = "rmi", frozen)]
struct PyTable(rmi_core::ContingencyTable);

#[pymethods]
impl PyTable {
    /// Cross-tabulate two labelings of the same objects.
    #[new]
    fn new(first: &Bound<'_, PyAny>, second: &Bound<'_, PyAny>) -> PyResult<Self> {
        let r = labeling(first)?;
        let s = labeling(second)?;
        rmi_core::ContingencyTable::from_labelings(&r, &s)
            .map(PyTable)
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_counts(counts: Vec<Vec<u64>>) -> PyResult<Self> {
        rmi_core::ContingencyTable::from_counts(&counts)
            .map(PyTable)
            .map_err(to_py)
    }

    #[getter]
    fn n(&self) -> u64 {
        self.0.total()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.0.num_rows(), self.0.num_cols())
    }

    #[getter]
    fn row_sums(&self) -> Vec<u64> {
        self.0.row_sums().to_vec()
    }

    #[getter]
    fn col_sums(&self) -> Vec<u64> {
        self.0.col_sums().to_vec()
    }

    fn to_list(&self) -> Vec<Vec<u64>> {
        self.0.to_rows()
    }

    fn transpose(&self) -> Self {
        PyTable(self.0.transpose())
    }

    fn __repr__(&self) -> String {
        format!("ContingencyTable({:?})", self.0.to_rows())
    }
}

#[pyclass(name = "LogCount", module = "rmi", frozen)]
struct PyLogCount(rmi_core::LogCount);

#[pymethods]
impl PyLogCount {
    /// Natural log of the table count.
    #[getter]
    fn log_value(&self) -> f64 {
        self.0.log_value
    }

    #[getter]
    fn method(&self) -> &'static str {
        self.0.method.as_str()
    }

    /// The count itself when it was computed exactly.
    #[getter]
    fn exact(&self) -> Option<BigUint> {
        self.0.exact_value.clone()
    }

    fn __repr__(&self) -> String {
        match &self.0.exact_value {
            Some(v) => format!("LogCount(exact={v}, log_value={})", self.0.log_value),
            None => format!("LogCount(method='{}', log_value={})", self.0.method, self.0.log_value),
        }
    }
}

#[pyclass(name = "RmiResult", module = "rmi", frozen)]
struct PyRmiResult(rmi_core::RmiResult);

#[pymethods]
impl PyRmiResult {
    #[getter]
    fn m_exact(&self) -> f64 {
        self.0.m_exact
    }

    #[getter]
    fn m_stirling(&self) -> f64 {
        self.0.m_stirling
    }

    #[getter]
    fn first_term(&self) -> f64 {
        self.0.first_term
    }

    #[getter]
    fn log_omega(&self) -> PyLogCount {
        PyLogCount(self.0.log_omega.clone())
    }

    fn __repr__(&self) -> String {
        format!(
            "RmiResult(m_exact={}, m_stirling={}, first_term={}, method='{}')",
            self.0.m_exact, self.0.m_stirling, self.0.first_term, self.0.log_omega.method
        )
    }
}

/// Plug-in mutual information in nats per object.
#[pyfunction]
fn mutual_information(table: &PyTable) -> f64 {
    classic::mutual_information(&table.0)
}

#[pyfunction]
fn normalized_mi(table: &PyTable) -> PyResult<f64> {
    classic::normalized_mi(&table.0).map_err(to_py)
}

#[pyfunction]
fn variation_of_information(table: &PyTable) -> f64 {
    classic::variation_of_information(&table.0)
}

/// The four encoding lengths h1..h4 in nats per object.
#[pyfunction]
#[pyo3(signature = (table, method = "auto", budget = DEFAULT_BUDGET))]
fn encoding_lengths(table: &PyTable, method: &str, budget: u64) -> PyResult<(f64, f64, f64, f64)> {
    let e = classic::encoding_lengths(&table.0, options(method, budget)?).map_err(to_py)?;
    Ok((e.h1, e.h2, e.h3, e.h4))
}

#[pyfunction]
#[pyo3(signature = (table, method = "auto", budget = DEFAULT_BUDGET))]
fn reduced_mi(table: &PyTable, method: &str, budget: u64) -> PyResult<PyRmiResult> {
    corrected::reduced_mi(&table.0, options(method, budget)?)
        .map(PyRmiResult)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (table, method = "auto", budget = DEFAULT_BUDGET))]
fn normalized_rmi(table: &PyTable, method: &str, budget: u64) -> PyResult<f64> {
    corrected::normalized_rmi(&table.0, options(method, budget)?).map_err(to_py)
}

/// Returns (emi, ami) in nats per object.
#[pyfunction]
#[pyo3(signature = (table, budget = DEFAULT_BUDGET))]
fn adjusted_mi(table: &PyTable, budget: u64) -> (f64, f64) {
    let a = corrected::adjusted_mi(&table.0, budget);
    (a.emi, a.ami)
}

/// Count tables with the given row and column sums.
#[pyfunction]
#[pyo3(signature = (rows, cols, method = "auto", budget = DEFAULT_BUDGET))]
fn count_tables(rows: Vec<u64>, cols: Vec<u64>, method: &str, budget: u64) -> PyResult<PyLogCount> {
    let margins = Margins::new(rows, cols).map_err(to_py)?;
    omega::count(&margins, options(method, budget)?)
        .map(PyLogCount)
        .map_err(to_py)
}

/// Full measure report for two labelings, as a dict.
#[pyfunction]
#[pyo3(signature = (first, second, base = "bits", method = "auto", measures = "all", budget = DEFAULT_BUDGET))]
fn compare<'py>(
    py: Python<'py>,
    first: &Bound<'py, PyAny>,
    second: &Bound<'py, PyAny>,
    base: &str,
    method: &str,
    measures: &str,
    budget: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let options = ReportOptions {
        base: base.parse::<Base>().map_err(PyValueError::new_err)?,
        omega: options(method, budget)?,
        measures: parse_measures(measures).map_err(PyValueError::new_err)?,
    };
    let r = labeling(first)?;
    let s = labeling(second)?;
    let rep = report::compare(&r, &s, &options).map_err(to_py)?;

    let out = PyDict::new(py);
    out.set_item("n", rep.n)?;
    out.set_item("R", rep.r)?;
    out.set_item("S", rep.s)?;
    out.set_item("base", rep.base.as_str())?;
    let values = PyDict::new(py);
    for (name, value) in &rep.measures.0 {
        values.set_item(name.as_str(), value)?;
    }
    out.set_item("measures", values)?;
    match &rep.omega {
        Some(o) => {
            let d = PyDict::new(py);
            d.set_item("log_value", o.log_value)?;
            d.set_item("method", o.method.as_str())?;
            d.set_item("exact", o.exact.as_ref().map(|e| e.parse::<BigUint>().expect("decimal digits")))?;
            out.set_item("omega", d)?;
        }
        None => out.set_item("omega", py.None())?,
    }
    out.set_item("warnings", PyList::new(py, &rep.warnings)?)?;
    Ok(out)
}

#[pymodule]
fn rmi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("UndefinedMeasure", m.py().get_type::<UndefinedMeasure>())?;
    m.add_class::<PyTable>()?;
    m.add_class::<PyLogCount>()?;
    m.add_class::<PyRmiResult>()?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_mi, m)?)?;
    m.add_function(wrap_pyfunction!(variation_of_information, m)?)?;
    m.add_function(wrap_pyfunction!(encoding_lengths, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_mi, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_rmi, m)?)?;
    m.add_function(wrap_pyfunction!(adjusted_mi, m)?)?;
    m.add_function(wrap_pyfunction!(count_tables, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    Ok(())
}
