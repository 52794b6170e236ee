//! Python bindings: `import palquot_py`.

use std::time::Duration;

use palquot::analysis::{self, Verdict};
use palquot::heuristic::{self, HeuristicOutcome};
use palquot::search::{self, SolutionClass, WITNESS_LIMIT};
use palquot::{numerals, Base, Budget, Error, Natural, Representation, Shape, Target};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(palquot_py, BudgetExhausted, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExhausted { .. } => BudgetExhausted::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn shape_of(s: &str) -> PyResult<Shape> {
    s.parse().map_err(to_py)
}

fn budget(max_states: Option<u64>, max_seconds: Option<f64>) -> Budget {
    let b = match max_states {
        Some(n) => Budget::states(n),
        None => Budget::default(),
    };
    match max_seconds {
        Some(s) => b.with_time(Duration::from_secs_f64(s)),
        None => b,
    }
}

/// A quotient `p/q` to be written as `A/B`.
#[pyclass(name = "Target", frozen, from_py_object)]
#[derive(Clone)]
struct PyTarget(Target);

#[pymethods]
impl PyTarget {
    /// `value` is `"N"`, `"p/q"` or an int.
    #[new]
    #[pyo3(signature = (value, base = 2, shape = "pal"))]
    fn new(value: &Bound<'_, PyAny>, base: u32, shape: &str) -> PyResult<Self> {
        let base = Base::new(base).map_err(to_py)?;
        let shape = shape_of(shape)?;
        let text = match value.extract::<u64>() {
            Ok(n) => n.to_string(),
            Err(_) => value.extract::<String>()?,
        };
        Target::parse(&text, base, shape)
            .map(PyTarget)
            .map_err(to_py)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.as_requested().0
    }

    #[getter]
    fn q(&self) -> u64 {
        self.0.as_requested().1
    }

    #[getter]
    fn base(&self) -> u32 {
        self.0.base().get()
    }

    #[getter]
    fn shape(&self) -> &'static str {
        self.0.shape().name()
    }

    fn __repr__(&self) -> String {
        format!(
            "Target('{}', base={}, shape='{}')",
            self.0,
            self.base(),
            self.shape()
        )
    }
}

#[pyclass(name = "Representation", frozen, from_py_object)]
#[derive(Clone)]
struct PyRepresentation(Representation);

#[pymethods]
impl PyRepresentation {
    #[getter]
    fn numerator(&self) -> Natural {
        self.0.numerator.clone()
    }

    #[getter]
    fn denominator(&self) -> Natural {
        self.0.denominator.clone()
    }

    /// Digits of `A` in the target base.
    #[getter]
    fn numerator_digits(&self) -> String {
        self.0.numerator_digits().to_string()
    }

    #[getter]
    fn denominator_digits(&self) -> String {
        self.0.denominator_digits().to_string()
    }

    fn verify(&self, target: &PyTarget) -> bool {
        self.0.verify(&target.0)
    }

    fn __repr__(&self) -> String {
        format!("Representation({})", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

fn wrap(rep: Representation) -> PyRepresentation {
    PyRepresentation(rep)
}

/// `(representable, witness, states_visited)`.
#[pyfunction]
#[pyo3(signature = (target, max_states = None, max_seconds = None))]
fn decide(
    py: Python<'_>,
    target: &PyTarget,
    max_states: Option<u64>,
    max_seconds: Option<f64>,
) -> PyResult<(bool, Option<PyRepresentation>, u64)> {
    let t = target.0;
    let d = py
        .detach(|| search::decide(&t, budget(max_states, max_seconds)))
        .map_err(to_py)?;
    Ok((d.representable, d.witness.map(wrap), d.stats.states_visited))
}

#[pyfunction]
#[pyo3(signature = (target, max_states = None, max_seconds = None))]
fn smallest(
    py: Python<'_>,
    target: &PyTarget,
    max_states: Option<u64>,
    max_seconds: Option<f64>,
) -> PyResult<Option<PyRepresentation>> {
    let t = target.0;
    py.detach(|| search::smallest(&t, budget(max_states, max_seconds)))
        .map(|r| r.map(wrap))
        .map_err(to_py)
}

/// `("none" | "finite" | "infinite", count or None, smallest witnesses)`.
#[pyfunction]
#[pyo3(signature = (target, max_states = None, max_seconds = None))]
fn classify(
    py: Python<'_>,
    target: &PyTarget,
    max_states: Option<u64>,
    max_seconds: Option<f64>,
) -> PyResult<(&'static str, Option<Natural>, Vec<PyRepresentation>)> {
    let t = target.0;
    let class = py
        .detach(|| {
            let mut s = search::Search::new(t, budget(max_states, max_seconds));
            s.classify(WITNESS_LIMIT)
        })
        .map_err(to_py)?;
    let count = class.count();
    Ok(match class {
        SolutionClass::None => ("none", count, Vec::new()),
        SolutionClass::Finite { witnesses, .. } => {
            ("finite", count, witnesses.into_iter().map(wrap).collect())
        }
        SolutionClass::Infinite { witness, .. } => ("infinite", count, vec![wrap(witness)]),
    })
}

/// Number of representations, `None` when infinite.
#[pyfunction]
#[pyo3(signature = (target, max_states = None))]
fn count(py: Python<'_>, target: &PyTarget, max_states: Option<u64>) -> PyResult<Option<Natural>> {
    let t = target.0;
    py.detach(|| search::count(&t, budget(max_states, None)))
        .map_err(to_py)
}

/// Up to `limit` representations in increasing order.
#[pyfunction]
#[pyo3(signature = (target, limit, max_states = None))]
fn enumerate(
    py: Python<'_>,
    target: &PyTarget,
    limit: usize,
    max_states: Option<u64>,
) -> PyResult<Vec<PyRepresentation>> {
    let t = target.0;
    py.detach(|| search::enumerate(&t, budget(max_states, None), limit))
        .map(|v| v.into_iter().map(wrap).collect())
        .map_err(to_py)
}

/// Every solution whose `B` has at most `max_digits` digits, by exhaustive
/// search.
#[pyfunction]
fn brute_force(py: Python<'_>, target: &PyTarget, max_digits: usize) -> Vec<PyRepresentation> {
    let t = target.0;
    py.detach(|| analysis::brute_force_solutions(&t, max_digits))
        .into_iter()
        .map(wrap)
        .collect()
}

/// `("found", Representation)`, `("refuted", depth)` or
/// `("inconclusive", depth)`.
#[pyfunction]
#[pyo3(signature = (n, max_depth = heuristic::DEFAULT_MAX_DEPTH))]
fn heuristic_decide<'py>(
    py: Python<'py>,
    n: u64,
    max_depth: u32,
) -> PyResult<(&'static str, Bound<'py, PyAny>)> {
    let outcome = py
        .detach(|| heuristic::heuristic_decide(n, max_depth))
        .map_err(to_py)?;
    Ok(match outcome {
        HeuristicOutcome::Found(rep) => ("found", Bound::new(py, wrap(rep))?.into_any()),
        HeuristicOutcome::RefutedAtDepth(k) => ("refuted", k.into_pyobject(py)?.into_any()),
        HeuristicOutcome::Inconclusive(k) => ("inconclusive", k.into_pyobject(py)?.into_any()),
    })
}

/// Representable counts per bit length, `[(bits, count, undecided), ...]`.
#[pyfunction]
#[pyo3(signature = (shape, max_bits, max_states = None))]
fn census(
    py: Python<'_>,
    shape: &str,
    max_bits: u32,
    max_states: Option<u64>,
) -> PyResult<Vec<(u32, u64, Vec<u64>)>> {
    let shape = shape_of(shape)?;
    let rows = py
        .detach(|| analysis::census(shape, max_bits, budget(max_states, None)))
        .map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.bits, r.count, r.undecided))
        .collect())
}

/// `[(n, verdict), ...]` for `lo <= n <= hi`; verdicts are
/// "representable", "unrepresentable" or "undecided".
#[pyfunction]
#[pyo3(signature = (lo, hi, base = 2, shape = "pal", max_states = None))]
fn sweep(
    py: Python<'_>,
    lo: u64,
    hi: u64,
    base: u32,
    shape: &str,
    max_states: Option<u64>,
) -> PyResult<Vec<(u64, &'static str)>> {
    let shape = shape_of(shape)?;
    let base = Base::new(base).map_err(to_py)?;
    let verdicts = py
        .detach(|| analysis::sweep(shape, base, lo..=hi, budget(max_states, None)))
        .map_err(to_py)?;
    Ok(verdicts
        .into_iter()
        .map(|(n, v): (u64, Verdict)| (n, v.as_str()))
        .collect())
}

/// Pair of the shape approximating `alpha` (a decimal or fraction string):
/// `(A, B, error as "num/den")`.
#[pyfunction]
#[pyo3(signature = (alpha, n, shape = "pal"))]
fn approx(alpha: &str, n: u32, shape: &str) -> PyResult<(Natural, Natural, String)> {
    let value = analysis::parse_rational(alpha).map_err(to_py)?;
    let ap = match shape_of(shape)? {
        Shape::Palindrome => analysis::approx_palindrome_quotient(&value, n),
        Shape::Antipalindrome => analysis::approx_antipalindrome_quotient(&value, n),
    }
    .map_err(to_py)?;
    Ok((ap.numerator, ap.denominator, ap.error.to_string()))
}

#[pyfunction]
#[pyo3(signature = (n, base = 2))]
fn is_palindrome(n: Natural, base: u32) -> PyResult<bool> {
    let base = Base::new(base).map_err(to_py)?;
    Ok(numerals::to_digits(&n, base).is_ok_and(|w| numerals::is_palindrome(&w)))
}

#[pyfunction]
#[pyo3(signature = (n, base = 2))]
fn is_antipalindrome(n: Natural, base: u32) -> PyResult<bool> {
    let base = Base::new(base).map_err(to_py)?;
    Ok(numerals::to_digits(&n, base).is_ok_and(|w| numerals::is_antipalindrome(&w)))
}

#[pymodule]
fn palquot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTarget>()?;
    m.add_class::<PyRepresentation>()?;
    m.add("BudgetExhausted", m.py().get_type::<BudgetExhausted>())?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(smallest, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(heuristic_decide, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(approx, m)?)?;
    m.add_function(wrap_pyfunction!(is_palindrome, m)?)?;
    m.add_function(wrap_pyfunction!(is_antipalindrome, m)?)?;
    Ok(())
}
