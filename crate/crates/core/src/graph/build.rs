use std::collections::HashMap;

use super::{AgentSet, ColoredGraph, NodeKey};
use crate::error::{Error, Result};
use crate::model::{FusionRule, Observation, ObservationProblem};

/// One node per `s ∈ L` (in declared order), coloured by `s ∈ K`; the pair
/// `{s, t}` is coloured by the agents that observe `s` and `t` differently.
pub fn observation_graph(problem: &ObservationProblem) -> Result<ColoredGraph> {
    if problem.agents != problem.observers.len() {
        return Err(Error::InvalidProblem(format!(
            "agent count {} does not match {} observation functions",
            problem.agents,
            problem.observers.len()
        )));
    }
    // Intern observations per agent so edge colours compare integers.
    let mut interned: Vec<HashMap<Observation, usize>> = vec![HashMap::new(); problem.agents];
    let mut signatures = Vec::with_capacity(problem.language.len());
    for word in &problem.language {
        let tuple = problem.observation_tuple(word)?;
        let signature: Vec<usize> = tuple
            .entries()
            .iter()
            .zip(interned.iter_mut())
            .map(|(obs, ids)| {
                let next = ids.len();
                *ids.entry(obs.clone()).or_insert(next)
            })
            .collect();
        signatures.push(signature);
    }
    let keys = problem.language.iter().cloned().map(NodeKey::Word).collect();
    let colours = problem.language.iter().map(|s| problem.is_legal(s)).collect();
    ColoredGraph::from_fn(problem.agents, keys, colours, |u, v| {
        differing(&signatures[u], &signatures[v])
    })
}

/// One node per tuple of `𝒟` (in declared order), coloured by the fused
/// output; the pair `{d, d'}` is coloured by the components where they differ.
pub fn decision_graph(rule: &FusionRule) -> ColoredGraph {
    let index: HashMap<_, _> = rule.decisions().iter().enumerate().map(|(i, d)| (d, i)).collect();
    let signatures: Vec<Vec<usize>> = rule
        .domain()
        .iter()
        .map(|t| t.decisions().iter().map(|d| index[d]).collect())
        .collect();
    let keys = rule.domain().iter().cloned().map(NodeKey::Tuple).collect();
    ColoredGraph::from_fn(rule.agents(), keys, rule.outputs().to_vec(), |u, v| {
        differing(&signatures[u], &signatures[v])
    })
    .expect("fusion rules never exceed the agent limit")
}

fn differing(a: &[usize], b: &[usize]) -> AgentSet {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(i, _)| i)
        .collect()
}
