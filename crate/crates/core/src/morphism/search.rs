use std::sync::Arc;

use super::Morphism;
use crate::error::{Error, Result};
use crate::graph::{quotient_by_indistinguishability, ColoredGraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of node assignments tried; `None` is unlimited.
    pub budget: Option<u64>,
}

/// Finds a morphism `source → target`, or proves none exists.
pub fn find_morphism(source: &Arc<ColoredGraph>, target: &Arc<ColoredGraph>) -> Result<Option<Morphism>> {
    find_morphism_with(source, target, &SearchOptions::default())
}

/// Backtracking search with forward checking.
///
/// Candidates for a source node are the target nodes of its colour. After each
/// assignment `u ↦ x`, every unassigned `v` keeps only the `y` with
/// `edge(x, y) ⊆ edge(u, v)`. The next node is the one with fewest remaining
/// candidates (lowest index on ties) and candidates are tried in target order,
/// so the result is deterministic.
///
/// When the target separates its nodes (no `∅` edges, as in decision graphs),
/// the source is first quotiented by `∅`; a colour clash inside a class
/// settles the answer as `None` without searching.
pub fn find_morphism_with(
    source: &Arc<ColoredGraph>,
    target: &Arc<ColoredGraph>,
    options: &SearchOptions,
) -> Result<Option<Morphism>> {
    if source.agents() != target.agents() {
        return Err(Error::ArityMismatch {
            left: source.agents(),
            right: target.agents(),
        });
    }
    let map = if target.separates_nodes() {
        let quotient = quotient_by_indistinguishability(source);
        if quotient.conflict.is_some() {
            return Ok(None);
        }
        search(&quotient.graph, target, options.budget)?
            .map(|classes| quotient.class_of.iter().map(|&c| classes[c]).collect())
    } else {
        search(source, target, options.budget)?
    };
    Ok(map.map(|map| Morphism::new(source.clone(), target.clone(), map).expect("search yields total maps")))
}

struct Search<'a> {
    source: &'a ColoredGraph,
    target: &'a ColoredGraph,
    assigned: Vec<Option<usize>>,
    expansions: u64,
    budget: Option<u64>,
}

fn search(source: &ColoredGraph, target: &ColoredGraph, budget: Option<u64>) -> Result<Option<Vec<usize>>> {
    let domains: Vec<Vec<usize>> = (0..source.node_count())
        .map(|v| {
            (0..target.node_count())
                .filter(|&x| target.colour(x) == source.colour(v))
                .collect()
        })
        .collect();
    if domains.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut state = Search {
        source,
        target,
        assigned: vec![None; source.node_count()],
        expansions: 0,
        budget,
    };
    if state.extend(domains)? {
        Ok(Some(
            state
                .assigned
                .into_iter()
                .map(|x| x.expect("complete assignment"))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

impl Search<'_> {
    fn extend(&mut self, domains: Vec<Vec<usize>>) -> Result<bool> {
        let next = (0..self.assigned.len())
            .filter(|&v| self.assigned[v].is_none())
            .min_by_key(|&v| (domains[v].len(), v));
        let Some(u) = next else {
            return Ok(true);
        };
        for &x in &domains[u] {
            self.expansions += 1;
            if self.budget.is_some_and(|b| self.expansions > b) {
                return Err(Error::SearchLimitExceeded(self.expansions - 1));
            }
            self.assigned[u] = Some(x);
            if let Some(pruned) = self.prune(&domains, u, x) {
                if self.extend(pruned)? {
                    return Ok(true);
                }
            }
            self.assigned[u] = None;
        }
        Ok(false)
    }

    /// Domains after `u ↦ x`, or `None` if some unassigned node runs dry.
    fn prune(&self, domains: &[Vec<usize>], u: usize, x: usize) -> Option<Vec<Vec<usize>>> {
        let mut pruned = Vec::with_capacity(domains.len());
        for (v, domain) in domains.iter().enumerate() {
            if v == u || self.assigned[v].is_some() {
                pruned.push(Vec::new());
                continue;
            }
            let allowed = self.source.edge(u, v);
            let kept: Vec<usize> = domain
                .iter()
                .copied()
                .filter(|&y| self.target.edge(x, y).is_subset(allowed))
                .collect();
            if kept.is_empty() {
                return None;
            }
            pruned.push(kept);
        }
        Some(pruned)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{decision_graph, observation_graph, AgentSet, NodeKey};
    use crate::model::test_support::two_agent_problem;
    use crate::model::{FusionRule, Observer};

    fn rule_graph(name: &str, n: usize) -> Arc<ColoredGraph> {
        Arc::new(decision_graph(&FusionRule::builtin(name, n).unwrap()))
    }

    #[test]
    fn two_agent_problem_into_conjunctive() {
        let src = Arc::new(observation_graph(&two_agent_problem()).unwrap());
        let m = find_morphism(&src, &rule_graph("conjunctive", 2)).unwrap().unwrap();
        assert!(m.verify().unwrap().is_morphism());
    }

    #[test]
    fn conjunctive_into_disjunctive_none() {
        let r = find_morphism(&rule_graph("conjunctive", 2), &rule_graph("disjunctive", 2)).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn self_morphism_exists() {
        for name in ["conjunctive", "disjunctive", "cpda", "conjunctive_cd", "const0"] {
            let g = rule_graph(name, 2);
            let m = find_morphism(&g, &g).unwrap().unwrap();
            assert!(m.is_valid(), "{name}");
        }
    }

    #[test]
    fn deterministic() {
        let src = rule_graph("cpda", 2);
        let dst = rule_graph("conjunctive", 2);
        let a = find_morphism(&src, &dst).unwrap().unwrap();
        let b = find_morphism(&src, &dst).unwrap().unwrap();
        assert_eq!(a.map(), b.map());
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(
            find_morphism(&rule_graph("conjunctive", 2), &rule_graph("conjunctive", 3)),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_is_distinct_from_none() {
        let src = rule_graph("conjunctive", 2);
        let dst = rule_graph("disjunctive", 2);
        let opts = SearchOptions { budget: Some(1) };
        assert!(matches!(
            find_morphism_with(&src, &dst, &opts),
            Err(Error::SearchLimitExceeded(1))
        ));
        let opts = SearchOptions { budget: Some(10_000) };
        assert!(find_morphism_with(&src, &dst, &opts).unwrap().is_none());
    }

    #[test]
    fn colour_conflict_short_circuits() {
        let mut p = two_agent_problem();
        p.observers = vec![Observer::projection(Vec::<String>::new()); 2];
        let src = Arc::new(observation_graph(&p).unwrap());
        let opts = SearchOptions { budget: Some(0) };
        // no expansion needed: the quotient already has a colour clash
        assert!(find_morphism_with(&src, &rule_graph("conjunctive", 2), &opts)
            .unwrap()
            .is_none());
    }

    #[test]
    fn empty_source() {
        let src = Arc::new(ColoredGraph::empty(2).unwrap());
        let m = find_morphism(&src, &rule_graph("conjunctive", 2)).unwrap().unwrap();
        assert!(m.map().is_empty());
    }

    #[test]
    fn target_with_empty_edges_is_searched_directly() {
        // Two red nodes joined by {1} map onto one red node of a target whose
        // nodes are joined by ∅.
        let label = |i: usize| NodeKey::Label(i.to_string());
        let src = Arc::new(
            ColoredGraph::from_fn(1, vec![label(0), label(1)], vec![false, false], |_, _| {
                AgentSet::singleton(0)
            })
            .unwrap(),
        );
        let dst = Arc::new(
            ColoredGraph::from_fn(1, vec![label(0), label(1)], vec![true, false], |_, _| AgentSet::EMPTY).unwrap(),
        );
        let m = find_morphism(&src, &dst).unwrap().unwrap();
        assert_eq!(m.map(), &[1, 1]);
    }
}
