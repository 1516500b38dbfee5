//! Python bindings. Words travel as `Word` objects or strings, specs and
//! solutions as their JSON documents.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quadword::doc::{implied_spec, solution_from_json, solution_to_json, spec_from_json, spec_to_json};
use quadword::{equation, oracle, solvers, EquationSpec, IndexValue};

struct PyErrWrap(quadword::Error);

impl From<quadword::Error> for PyErrWrap {
    fn from(e: quadword::Error) -> Self {
        PyErrWrap(e)
    }
}

impl From<PyErrWrap> for PyErr {
    fn from(e: PyErrWrap) -> Self {
        PyValueError::new_err(e.0.to_string())
    }
}

type PyRes<T> = Result<T, PyErrWrap>;

#[pyclass(name = "Word", frozen, eq, hash, str, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWord(quadword::Word);

impl std::fmt::Display for PyWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl PyWord {
    /// Parses `text`; rank defaults to the largest subscript.
    #[new]
    #[pyo3(signature = (text, rank=None))]
    fn new(text: &str, rank: Option<u32>) -> PyRes<Self> {
        Ok(PyWord(match rank {
            Some(r) => quadword::Word::parse(text, r)?,
            None => quadword::Word::parse_auto(text)?,
        }))
    }

    #[staticmethod]
    fn basic_commutator(g: u32) -> PyRes<Self> {
        Ok(PyWord(quadword::basic_commutator(g)?))
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.0.rank()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}', rank={})", self.0, self.0.rank())
    }

    fn __mul__(&self, other: &PyWord) -> PyRes<Self> {
        Ok(PyWord(self.0.try_mul(&other.0)?))
    }

    fn __pow__(&self, n: i64, _modulo: Option<i64>) -> Self {
        PyWord(self.0.pow(n))
    }

    fn inverse(&self) -> Self {
        PyWord(self.0.inverse())
    }

    /// `by * self * by^-1`.
    fn conjugate(&self, by: &PyWord) -> PyRes<Self> {
        Ok(PyWord(self.0.try_conjugate(&by.0)?))
    }

    fn commutator(&self, other: &PyWord) -> PyRes<Self> {
        Ok(PyWord(self.0.try_commutator(&other.0)?))
    }

    fn abelianize(&self) -> Vec<i64> {
        quadword::abelianize(&self.0).coords
    }
}

fn index_to_py(py: Python<'_>, index: &IndexValue) -> PyResult<Py<PyAny>> {
    Ok(match index.as_u64() {
        Some(n) => n.into_pyobject(py)?.into_any().unbind(),
        None => index.to_string().into_pyobject(py)?.into_any().unbind(),
    })
}

fn spec_or_implied(sol: &quadword::Solution, spec: Option<&str>) -> PyRes<EquationSpec> {
    Ok(match spec {
        Some(s) => spec_from_json(s)?,
        None => implied_spec(sol)?,
    })
}

/// Solution JSON for a named family.
#[pyfunction]
#[pyo3(signature = (family, l=None, c=None, k=None, n=None, g=1))]
fn solve(
    family: &str,
    l: Option<u32>,
    c: Option<u32>,
    k: Option<u32>,
    n: Option<u32>,
    g: u32,
) -> PyResult<String> {
    let need = |v: Option<u32>, name: &str| {
        v.ok_or_else(|| PyValueError::new_err(format!("{family} needs {name}")))
    };
    let sol = match family {
        "power-lift" => {
            let base = solvers::BaseSolution::torus(g, need(l, "l")?).map_err(PyErrWrap)?;
            solvers::solve_power_lift(&base, need(c, "c")?)
        }
        "torus-min" | "torus-min-index" => solvers::solve_torus_min_index(need(l, "l")?, need(c, "c")?),
        "torus-primitive" => solvers::solve_torus_primitive(need(l, "l")?, need(c, "c")?),
        "asymmetric" => solvers::solve_asymmetric(need(k, "k")?, need(l, "l")?),
        "commutator-power" => solvers::express_commutator_power(need(n, "n")?),
        _ => return Err(PyValueError::new_err(format!("unknown family {family:?}"))),
    }
    .map_err(PyErrWrap)?;
    Ok(solution_to_json(&sol))
}

#[pyfunction]
#[pyo3(signature = (solution, spec=None))]
fn verify(solution: &str, spec: Option<&str>) -> PyRes<bool> {
    let sol = solution_from_json(solution)?;
    let spec = spec_or_implied(&sol, spec)?;
    Ok(equation::verify(&sol, &spec)?)
}

/// Index of the abelianized image: an int, or "infinite".
#[pyfunction]
fn classify(py: Python<'_>, solution: &str) -> PyResult<Py<PyAny>> {
    let sol = solution_from_json(solution).map_err(PyErrWrap)?;
    index_to_py(py, &equation::classify(&sol))
}

#[pyfunction]
#[pyo3(signature = (solution, spec=None))]
fn root_report(solution: &str, spec: Option<&str>) -> PyRes<String> {
    let sol = solution_from_json(solution)?;
    let spec = spec_or_implied(&sol, spec)?;
    let r = equation::root_report(&sol, &spec)?;
    Ok(serde_json::to_string(&r).expect("plain data"))
}

#[pyfunction]
fn build_rhs(spec: &str) -> PyRes<PyWord> {
    Ok(PyWord(equation::build_rhs(&spec_from_json(spec)?)))
}

#[pyfunction]
fn torus_spec(l: u32, c: i64) -> PyRes<String> {
    Ok(spec_to_json(&EquationSpec::torus(l, c)?))
}

/// `(u, v)` with `[u, v] == w`, or None.
#[pyfunction]
fn wicks_is_commutator(w: &PyWord) -> Option<(PyWord, PyWord)> {
    oracle::wicks_is_commutator(&w.0).map(|wit| {
        let (u, v) = oracle::witness_pair(&w.0, &wit);
        (PyWord(u), PyWord(v))
    })
}

/// Solution JSON of the first find, or None within the bound.
#[pyfunction]
fn brute_force_solve(spec: &str, h: usize, max_len: usize) -> PyRes<Option<String>> {
    let res = oracle::brute_force_solve(&spec_from_json(spec)?, h, max_len)?;
    Ok(res.found.as_ref().map(solution_to_json))
}

#[pymodule]
#[pyo3(name = "quadword")]
fn quadword_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(root_report, m)?)?;
    m.add_function(wrap_pyfunction!(build_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(torus_spec, m)?)?;
    m.add_function(wrap_pyfunction!(wicks_is_commutator, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_solve, m)?)?;
    Ok(())
}
