use std::sync::Arc;

use indexmap::IndexMap;

use super::Morphism;
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, NodeKey};
use crate::model::{DecisionTuple, FusionRule, Observation, ObservationProblem, Token};

/// Local decision functions `f_i`, one table per agent from observations to decisions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Solution {
    pub tables: Vec<IndexMap<Observation, Token>>,
}

impl Solution {
    /// `(f_1 P_1(s), …, f_n P_n(s))`, or `None` if some table has no entry.
    pub fn decide(&self, problem: &ObservationProblem, word: &crate::model::Word) -> Option<DecisionTuple> {
        if self.tables.len() != problem.observers.len() {
            return None;
        }
        problem
            .observers
            .iter()
            .zip(&self.tables)
            .map(|(p, table)| p.observe(word).ok().and_then(|o| table.get(&o).cloned()))
            .collect::<Option<Vec<_>>>()
            .map(DecisionTuple::new)
    }

    /// The node map `s ↦ (f_i P_i(s))` from the observation graph into the
    /// decision graph. Both graphs must have been built from `problem` and `rule`.
    pub fn to_morphism(
        &self,
        problem: &ObservationProblem,
        rule: &FusionRule,
        observation: Arc<ColoredGraph>,
        decision: Arc<ColoredGraph>,
    ) -> Result<Morphism> {
        let map = problem
            .language
            .iter()
            .map(|s| {
                self.decide(problem, s)
                    .and_then(|t| rule.position(&t))
                    .ok_or_else(|| Error::InvalidMorphism(format!("{s} is decided outside the rule's domain")))
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(observation, decision, map)
    }
}

/// Reads local decision tables off a morphism from the observation graph of
/// `problem` into the decision graph of `rule`: `f_i(P_i(s)) = m(s)_i`.
///
/// Fails with [`Error::InconsistentMorphism`] if two strings that agent `i`
/// cannot tell apart are sent to tuples differing at `i`; a morphism that
/// verifies never does this.
pub fn extract_solution(morphism: &Morphism, problem: &ObservationProblem, rule: &FusionRule) -> Result<Solution> {
    let mut tables: Vec<IndexMap<Observation, Token>> = vec![IndexMap::new(); problem.agents];
    let source = morphism.source();
    let target = morphism.target();
    for word in &problem.language {
        let node = source
            .position(&NodeKey::Word(word.clone()))
            .ok_or_else(|| Error::InvalidMorphism(format!("{word} is not a source node")))?;
        let NodeKey::Tuple(tuple) = target.key(morphism.image(node)) else {
            return Err(Error::InvalidMorphism("target nodes are not decision tuples".into()));
        };
        if rule.position(tuple).is_none() {
            return Err(Error::InvalidMorphism(format!("{tuple} is outside the rule's domain")));
        }
        let observed = problem.observation_tuple(word)?;
        for (agent, table) in tables.iter_mut().enumerate() {
            let decision = tuple.get(agent);
            match table.get(observed.get(agent)) {
                Some(existing) if existing != decision => {
                    return Err(Error::InconsistentMorphism {
                        agent: agent + 1,
                        first: existing.clone(),
                        second: decision.clone(),
                    })
                }
                Some(_) => {}
                None => {
                    table.insert(observed.get(agent).clone(), decision.clone());
                }
            }
        }
    }
    Ok(Solution { tables })
}

/// For every `s ∈ L`, the decided tuple lies in `𝒟` and fuses to `[s ∈ K]`.
pub fn verify_solution(problem: &ObservationProblem, solution: &Solution, rule: &FusionRule) -> bool {
    problem.language.iter().all(|s| {
        solution
            .decide(problem, s)
            .and_then(|t| rule.apply(&t))
            .is_some_and(|out| out == problem.is_legal(s))
    })
}
