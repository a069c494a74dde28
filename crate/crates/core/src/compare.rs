//! Permissiveness of fusion rules, decided by morphisms between decision graphs.
//!
//! `g` is at least as permissive as `f` (every problem solvable under `f` is
//! solvable under `g`) exactly when the decision graph of `f` maps into the
//! decision graph of `g`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{decision_graph, decision_graph_to_observation, D2oResult, Encoding};
use crate::model::FusionRule;
use crate::morphism::{find_morphism_with, Morphism, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Equivalent,
    /// The second rule is strictly more permissive.
    FirstStrictlyLess,
    /// The first rule is strictly more permissive.
    FirstStrictlyMore,
    Incomparable,
}

impl Relation {
    fn from_witnesses(forward: bool, backward: bool) -> Self {
        match (forward, backward) {
            (true, true) => Relation::Equivalent,
            (true, false) => Relation::FirstStrictlyLess,
            (false, true) => Relation::FirstStrictlyMore,
            (false, false) => Relation::Incomparable,
        }
    }

    /// The relation with the two rules swapped.
    pub fn mirror(self) -> Self {
        match self {
            Relation::FirstStrictlyLess => Relation::FirstStrictlyMore,
            Relation::FirstStrictlyMore => Relation::FirstStrictlyLess,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Equivalent => "equivalent",
            Relation::FirstStrictlyLess => "first_strictly_less",
            Relation::FirstStrictlyMore => "first_strictly_more",
            Relation::Incomparable => "incomparable",
        }
    }

    /// Human wording, e.g. "second strictly more permissive".
    pub fn describe(self) -> &'static str {
        match self {
            Relation::Equivalent => "equivalent",
            Relation::FirstStrictlyLess => "second strictly more permissive",
            Relation::FirstStrictlyMore => "first strictly more permissive",
            Relation::Incomparable => "incomparable",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Relation::Equivalent,
            Relation::FirstStrictlyLess,
            Relation::FirstStrictlyMore,
            Relation::Incomparable,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
        .ok_or_else(|| Error::Format(format!("unknown relation `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermissivenessVerdict {
    pub relation: Relation,
    /// Decision graph of the first rule into that of the second.
    pub forward: Option<Morphism>,
    /// Decision graph of the second rule into that of the first.
    pub backward: Option<Morphism>,
}

pub fn compare(first: &FusionRule, second: &FusionRule) -> Result<PermissivenessVerdict> {
    compare_with(first, second, &SearchOptions::default())
}

pub fn compare_with(first: &FusionRule, second: &FusionRule, options: &SearchOptions) -> Result<PermissivenessVerdict> {
    if first.agents() != second.agents() {
        return Err(Error::ArityMismatch {
            left: first.agents(),
            right: second.agents(),
        });
    }
    let a = Arc::new(decision_graph(first));
    let b = Arc::new(decision_graph(second));
    let forward = find_morphism_with(&a, &b, options)?;
    let backward = find_morphism_with(&b, &a, options)?;
    Ok(PermissivenessVerdict {
        relation: Relation::from_witnesses(forward.is_some(), backward.is_some()),
        forward,
        backward,
    })
}

/// A problem solvable under `first` but not under `second`, when one exists:
/// the decision graph of `first` recast as an observation problem.
pub fn separating_problem(first: &FusionRule, second: &FusionRule, encoding: Encoding) -> Result<Option<D2oResult>> {
    separating_problem_with(first, second, encoding, &SearchOptions::default())
}

pub fn separating_problem_with(
    first: &FusionRule,
    second: &FusionRule,
    encoding: Encoding,
    options: &SearchOptions,
) -> Result<Option<D2oResult>> {
    if first.agents() != second.agents() {
        return Err(Error::ArityMismatch {
            left: first.agents(),
            right: second.agents(),
        });
    }
    let a = Arc::new(decision_graph(first));
    let b = Arc::new(decision_graph(second));
    Ok(match find_morphism_with(&a, &b, options)? {
        Some(_) => None,
        None => Some(decision_graph_to_observation(first, encoding)),
    })
}

/// Pairwise relations over a list of rules and the Hasse diagram of the
/// induced preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    /// `relations[i][j]` compares rule `i` (first) with rule `j` (second).
    pub relations: Vec<Vec<Relation>>,
    /// Equivalence classes of rule indices, ordered by first member.
    pub classes: Vec<Vec<usize>>,
    /// Covering pairs `(lower, upper)` of class indices: `upper` is strictly
    /// more permissive than `lower` with no class strictly in between.
    pub hasse: Vec<(usize, usize)>,
}

pub fn relation_matrix(rules: &[FusionRule]) -> Result<RelationMatrix> {
    relation_matrix_with(rules, &SearchOptions::default())
}

pub fn relation_matrix_with(rules: &[FusionRule], options: &SearchOptions) -> Result<RelationMatrix> {
    if let Some(r) = rules.iter().find(|r| r.agents() != rules[0].agents()) {
        return Err(Error::ArityMismatch {
            left: rules[0].agents(),
            right: r.agents(),
        });
    }
    let graphs: Vec<_> = rules.iter().map(|r| Arc::new(decision_graph(r))).collect();
    let count = rules.len();
    // below[i][j]: rule j is at least as permissive as rule i
    let mut below = vec![vec![false; count]; count];
    for i in 0..count {
        for j in 0..count {
            below[i][j] = i == j || find_morphism_with(&graphs[i], &graphs[j], options)?.is_some();
        }
    }
    let relations = (0..count)
        .map(|i| {
            (0..count)
                .map(|j| Relation::from_witnesses(below[i][j], below[j][i]))
                .collect()
        })
        .collect();

    let mut class_of = vec![usize::MAX; count];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..count {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..count).filter(|&j| below[i][j] && below[j][i]).collect();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    let rep = |c: usize| classes[c][0];
    let strictly_below = |a: usize, b: usize| a != b && below[rep(a)][rep(b)] && !below[rep(b)][rep(a)];
    let k = classes.len();
    let mut hasse = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if strictly_below(a, b) && !(0..k).any(|c| strictly_below(a, c) && strictly_below(c, b)) {
                hasse.push((a, b));
            }
        }
    }
    Ok(RelationMatrix {
        relations,
        classes,
        hasse,
    })
}
