//! Python bindings: problems, rules, graphs, morphism search and rule comparison.
//!
//! Strings are passed as lists of tokens, agents are numbered from 1 in
//! everything Python sees, and graph nodes are addressed by index.

use std::sync::Arc;

use fusionmorph::format::{
    observation_problem_to_json, parse_control_problem, parse_observation_problem, parse_rule, rule_to_json,
};
use fusionmorph::graph::{to_dot, DotOptions};
use fusionmorph::morphism::DEFAULT_ENUMERATION_BUDGET;
use fusionmorph::{
    compare::compare_with, compare::relation_matrix_with, decision_graph, decision_graph_to_observation,
    extract_solution, find_morphism_with, observation_graph, solvable_by_enumeration, verify_d2o, verify_solution,
    ColoredGraph, ControlProblem, DecisionTuple, Encoding, Error, FusionRule, Morphism, Observation,
    ObservationProblem, Observer, SearchOptions, Token, Word,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyString, PyTuple};

create_exception!(
    pyfusionmorph,
    BudgetExceeded,
    PyRuntimeError,
    "The search or enumeration budget ran out."
);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::SearchLimitExceeded(_) | Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn token(text: String) -> PyResult<Token> {
    Token::try_new(text).map_err(PyValueError::new_err)
}

fn to_word(tokens: Vec<String>) -> PyResult<Word> {
    tokens
        .into_iter()
        .map(token)
        .collect::<PyResult<Vec<_>>>()
        .map(Word::new)
}

fn from_word(word: &Word) -> Vec<String> {
    word.tokens().iter().map(|t| t.as_str().to_owned()).collect()
}

fn observation_object(py: Python<'_>, o: &Observation) -> PyResult<Py<PyAny>> {
    Ok(match o {
        Observation::Word(w) => PyTuple::new(py, from_word(w))?.into_any().unbind(),
        Observation::Label(l) => PyString::new(py, l).into_any().unbind(),
    })
}

/// One agent's decision table as `(observation, decision)` pairs.
type Table = Vec<(Py<PyAny>, String)>;

fn options(budget: Option<u64>) -> SearchOptions {
    SearchOptions { budget }
}

/// A fusion rule: a partial boolean function on decision tuples.
#[pyclass(name = "FusionRule", module = "pyfusionmorph", frozen, from_py_object)]
#[derive(Clone)]
struct PyFusionRule {
    inner: FusionRule,
}

#[pymethods]
impl PyFusionRule {
    /// Build a rule from its domain and the output for each tuple.
    #[new]
    fn new(agents: usize, decisions: Vec<String>, domain: Vec<Vec<String>>, outputs: Vec<bool>) -> PyResult<Self> {
        if domain.len() != outputs.len() {
            return Err(PyValueError::new_err("domain and outputs differ in length"));
        }
        let decisions = decisions.into_iter().map(token).collect::<PyResult<Vec<_>>>()?;
        let entries = domain
            .into_iter()
            .zip(outputs)
            .map(|(t, out)| Ok((DecisionTuple::new(to_word(t)?.tokens().to_vec()), out)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self {
            inner: FusionRule::new(agents, decisions, entries).map_err(py_err)?,
        })
    }

    /// One of conjunctive, disjunctive, cpda, conjunctive_cd, const0, const1.
    #[staticmethod]
    fn builtin(name: &str, agents: usize) -> PyResult<Self> {
        Ok(Self {
            inner: FusionRule::builtin(name, agents).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_rule(text).map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        rule_to_json(&self.inner)
    }

    #[getter]
    fn agents(&self) -> usize {
        self.inner.agents()
    }

    #[getter]
    fn decisions(&self) -> Vec<String> {
        self.inner.decisions().iter().map(|d| d.as_str().to_owned()).collect()
    }

    #[getter]
    fn domain(&self) -> Vec<Vec<String>> {
        self.inner
            .entries()
            .map(|(t, _)| t.decisions().iter().map(|d| d.as_str().to_owned()).collect())
            .collect()
    }

    /// The fused output for a decision tuple, or None outside the domain.
    fn apply(&self, decisions: Vec<String>) -> PyResult<Option<bool>> {
        Ok(self
            .inner
            .apply(&DecisionTuple::new(to_word(decisions)?.tokens().to_vec())))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "FusionRule(agents={}, decisions={:?}, tuples={})",
            self.inner.agents(),
            self.decisions(),
            self.inner.len()
        )
    }
}

/// `Obs(L, K, P_i)` with natural-projection observers.
#[pyclass(name = "ObservationProblem", module = "pyfusionmorph", frozen)]
struct PyObservationProblem {
    inner: ObservationProblem,
}

#[pymethods]
impl PyObservationProblem {
    /// `observable[i]` lists the tokens agent `i + 1` sees.
    #[new]
    fn new(
        alphabet: Vec<String>,
        language: Vec<Vec<String>>,
        legal: Vec<Vec<String>>,
        observable: Vec<Vec<String>>,
    ) -> PyResult<Self> {
        let alphabet = alphabet.into_iter().map(token).collect::<PyResult<_>>()?;
        let language = language.into_iter().map(to_word).collect::<PyResult<_>>()?;
        let legal = legal.into_iter().map(to_word).collect::<PyResult<_>>()?;
        let observers = observable.into_iter().map(Observer::projection).collect();
        Ok(Self {
            inner: ObservationProblem::new(alphabet, language, legal, observers),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_observation_problem(text).map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        observation_problem_to_json(&self.inner)
    }

    /// Violations as messages; empty when the problem is well-formed.
    fn validate(&self) -> Vec<String> {
        self.inner.validate().violations.iter().map(|v| v.to_string()).collect()
    }

    #[getter]
    fn agents(&self) -> usize {
        self.inner.agents
    }

    #[getter]
    fn language(&self) -> Vec<Vec<String>> {
        self.inner.language.iter().map(from_word).collect()
    }

    #[getter]
    fn legal(&self) -> Vec<Vec<String>> {
        self.inner.legal.iter().map(from_word).collect()
    }

    fn is_legal(&self, word: Vec<String>) -> PyResult<bool> {
        Ok(self.inner.is_legal(&to_word(word)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "ObservationProblem(agents={}, |L|={}, |K|={})",
            self.inner.agents,
            self.inner.language.len(),
            self.inner.legal.len()
        )
    }
}

/// `Con(L, K, P_i, Σ_c,i)`; loaded from JSON.
#[pyclass(name = "ControlProblem", module = "pyfusionmorph", frozen)]
struct PyControlProblem {
    inner: ControlProblem,
}

#[pymethods]
impl PyControlProblem {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_control_problem(text).map_err(py_err)?,
        })
    }

    fn is_controllable(&self) -> bool {
        self.inner.is_controllable()
    }

    /// `(s, u)` with `s ∈ K`, `u` uncontrollable and `su ∈ L \ K`, if any.
    fn controllability_witness(&self) -> Option<(Vec<String>, String)> {
        self.inner
            .controllability_witness()
            .map(|(s, u)| (from_word(&s), u.as_str().to_owned()))
    }

    /// `(event, controlling agents, problem)` per controllable event.
    #[pyo3(signature = (allow_uncontrollable=false))]
    fn reduce(&self, allow_uncontrollable: bool) -> PyResult<Vec<(String, Vec<usize>, PyObservationProblem)>> {
        let family = self.inner.reduce(allow_uncontrollable).map_err(py_err)?;
        Ok(family
            .entries
            .into_iter()
            .map(|e| {
                (
                    e.event.as_str().to_owned(),
                    e.agents.iter().map(|a| a + 1).collect(),
                    PyObservationProblem { inner: e.problem },
                )
            })
            .collect())
    }
}

/// An observation or decision graph.
#[pyclass(name = "Graph", module = "pyfusionmorph", frozen)]
struct PyGraph {
    inner: Arc<ColoredGraph>,
}

#[pymethods]
impl PyGraph {
    #[getter]
    fn agents(&self) -> usize {
        self.inner.agents()
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    /// Node names: joined string text, or decision tuples as `(0,1)`.
    #[getter]
    fn nodes(&self) -> Vec<String> {
        self.inner.keys().iter().map(|k| k.to_string()).collect()
    }

    #[getter]
    fn colours(&self) -> Vec<bool> {
        self.inner.colours().to_vec()
    }

    /// Agents (from 1) that tell nodes `u` and `v` apart.
    fn edge(&self, u: usize, v: usize) -> PyResult<Vec<usize>> {
        let n = self.inner.node_count();
        if u >= n || v >= n {
            return Err(PyValueError::new_err(format!(
                "node index out of range (graph has {n} nodes)"
            )));
        }
        Ok(self.inner.edge(u, v).iter().map(|a| a + 1).collect())
    }

    #[pyo3(signature = (show_empty_edges=true))]
    fn to_dot(&self, show_empty_edges: bool) -> String {
        to_dot(
            &self.inner,
            &DotOptions {
                show_empty_edges,
                ..Default::default()
            },
        )
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(agents={}, nodes={})",
            self.inner.agents(),
            self.inner.node_count()
        )
    }
}

#[pyfunction]
#[pyo3(name = "observation_graph")]
fn observation_graph_of(problem: &PyObservationProblem) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: Arc::new(observation_graph(&problem.inner).map_err(py_err)?),
    })
}

#[pyfunction]
#[pyo3(name = "decision_graph")]
fn decision_graph_of(rule: &PyFusionRule) -> PyGraph {
    PyGraph {
        inner: Arc::new(decision_graph(&rule.inner)),
    }
}

/// Node map (target index per source node) of the first morphism found, or None.
#[pyfunction]
#[pyo3(signature = (source, target, budget=None))]
fn find_morphism(source: &PyGraph, target: &PyGraph, budget: Option<u64>) -> PyResult<Option<Vec<usize>>> {
    Ok(find_morphism_with(&source.inner, &target.inner, &options(budget))
        .map_err(py_err)?
        .map(|m| m.map().to_vec()))
}

/// Whether `map` is a morphism from `source` to `target`.
#[pyfunction]
fn is_morphism(source: &PyGraph, target: &PyGraph, map: Vec<usize>) -> bool {
    Morphism::new(source.inner.clone(), target.inner.clone(), map).is_ok_and(|m| m.is_valid())
}

/// Whether the problem is solvable under the rule.
#[pyfunction]
#[pyo3(signature = (problem, rule, budget=None))]
fn check(problem: &PyObservationProblem, rule: &PyFusionRule, budget: Option<u64>) -> PyResult<bool> {
    let source = Arc::new(observation_graph(&problem.inner).map_err(py_err)?);
    let target = Arc::new(decision_graph(&rule.inner));
    Ok(find_morphism_with(&source, &target, &options(budget))
        .map_err(py_err)?
        .is_some())
}

/// Local decision tables, one list of `(observation, decision)` per agent, or
/// None when unsolvable. Observations are token tuples.
#[pyfunction]
#[pyo3(signature = (problem, rule, budget=None))]
fn solve(
    py: Python<'_>,
    problem: &PyObservationProblem,
    rule: &PyFusionRule,
    budget: Option<u64>,
) -> PyResult<Option<Vec<Table>>> {
    let (p, r) = (&problem.inner, &rule.inner);
    let source = Arc::new(observation_graph(p).map_err(py_err)?);
    let target = Arc::new(decision_graph(r));
    let Some(m) = find_morphism_with(&source, &target, &options(budget)).map_err(py_err)? else {
        return Ok(None);
    };
    let solution = extract_solution(&m, p, r).map_err(py_err)?;
    debug_assert!(verify_solution(p, &solution, r));
    solution
        .tables
        .iter()
        .map(|table| {
            table
                .iter()
                .map(|(o, d)| Ok((observation_object(py, o)?, d.as_str().to_owned())))
                .collect()
        })
        .collect::<PyResult<_>>()
        .map(Some)
}

/// Solvability by trying every assignment of decision tables.
#[pyfunction]
#[pyo3(name = "solvable_by_enumeration", signature = (problem, rule, budget=DEFAULT_ENUMERATION_BUDGET))]
fn solvable_by_enumeration_of(problem: &PyObservationProblem, rule: &PyFusionRule, budget: u128) -> PyResult<bool> {
    solvable_by_enumeration(&problem.inner, &rule.inner, budget).map_err(py_err)
}

/// Relation of `first` to `second`: one of equivalent, first_strictly_less,
/// first_strictly_more, incomparable.
#[pyfunction]
#[pyo3(signature = (first, second, budget=None))]
fn compare(first: &PyFusionRule, second: &PyFusionRule, budget: Option<u64>) -> PyResult<String> {
    Ok(compare_with(&first.inner, &second.inner, &options(budget))
        .map_err(py_err)?
        .relation
        .as_str()
        .to_owned())
}

/// `(relations, classes, hasse)` over a list of rules; classes and Hasse
/// edges refer to rule indices.
#[pyfunction]
#[pyo3(signature = (rules, budget=None))]
#[allow(clippy::type_complexity)]
fn relation_matrix(
    rules: Vec<PyFusionRule>,
    budget: Option<u64>,
) -> PyResult<(Vec<Vec<String>>, Vec<Vec<usize>>, Vec<(usize, usize)>)> {
    if rules.is_empty() {
        return Ok((Vec::new(), Vec::new(), Vec::new()));
    }
    let rules: Vec<FusionRule> = rules.into_iter().map(|r| r.inner).collect();
    let matrix = relation_matrix_with(&rules, &options(budget)).map_err(py_err)?;
    let relations = matrix
        .relations
        .iter()
        .map(|row| row.iter().map(|r| r.as_str().to_owned()).collect())
        .collect();
    let rep = |c: usize| matrix.classes[c][0];
    let hasse = matrix.hasse.iter().map(|&(a, b)| (rep(a), rep(b))).collect();
    Ok((relations, matrix.classes.clone(), hasse))
}

/// The observation problem whose graph is the rule's decision graph, and the
/// tuple-to-string bijection.
#[pyfunction]
#[pyo3(signature = (rule, encoding="unary"))]
#[allow(clippy::type_complexity)]
fn d2o(rule: &PyFusionRule, encoding: &str) -> PyResult<(PyObservationProblem, Vec<(Vec<String>, Vec<String>)>)> {
    let encoding: Encoding = encoding.parse().map_err(py_err)?;
    let result = decision_graph_to_observation(&rule.inner, encoding);
    if !verify_d2o(&result, &rule.inner) {
        return Err(PyRuntimeError::new_err(
            "constructed problem does not reproduce the decision graph",
        ));
    }
    let bijection = result
        .bijection
        .iter()
        .map(|(t, w)| {
            (
                t.decisions().iter().map(|d| d.as_str().to_owned()).collect(),
                from_word(w),
            )
        })
        .collect();
    Ok((PyObservationProblem { inner: result.problem }, bijection))
}

#[pymodule]
fn pyfusionmorph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_class::<PyFusionRule>()?;
    m.add_class::<PyObservationProblem>()?;
    m.add_class::<PyControlProblem>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(observation_graph_of, m)?)?;
    m.add_function(wrap_pyfunction!(decision_graph_of, m)?)?;
    m.add_function(wrap_pyfunction!(find_morphism, m)?)?;
    m.add_function(wrap_pyfunction!(is_morphism, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solvable_by_enumeration_of, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(relation_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(d2o, m)?)?;
    Ok(())
}
