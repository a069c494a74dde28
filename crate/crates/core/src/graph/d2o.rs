use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexSet;

use super::{decision_graph, observation_graph};
use crate::error::Error;
use crate::model::{DecisionTuple, FusionRule, ObservationProblem, Observer, Token, Word};

/// How decision tuples are spelled as strings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Encoding {
    /// One symbol `d^i` per decision and agent: `s_v = d_1^1 ⋯ d_n^n`.
    Tagged,
    /// Symbols `0_i`, `1_i` per agent: `d_i` at position `j` of `D` becomes `0_i^j 1_i`.
    #[default]
    Unary,
}

impl Encoding {
    pub fn name(self) -> &'static str {
        match self {
            Encoding::Tagged => "tagged",
            Encoding::Unary => "unary",
        }
    }
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "tagged" => Ok(Encoding::Tagged),
            "unary" => Ok(Encoding::Unary),
            other => Err(Error::Format(format!("unknown encoding `{other}`"))),
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An observation problem whose observation graph is isomorphic to a rule's
/// decision graph, with the isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2oResult {
    pub problem: ObservationProblem,
    /// `(v, s_v)` for each `v ∈ 𝒟`, in domain order.
    pub bijection: Vec<(DecisionTuple, Word)>,
    pub encoding: Encoding,
}

impl D2oResult {
    pub fn word_for(&self, tuple: &DecisionTuple) -> Option<&Word> {
        self.bijection.iter().find(|(t, _)| t == tuple).map(|(_, w)| w)
    }
}

fn tagged(decision: &Token, agent: usize) -> Token {
    Token::new(format!("{decision}^{}", agent + 1))
}

fn zero(agent: usize) -> Token {
    Token::new(format!("0_{}", agent + 1))
}

fn one(agent: usize) -> Token {
    Token::new(format!("1_{}", agent + 1))
}

/// Views a rule's decision graph as an observation problem.
///
/// `L` lists `s_v` in domain order and `K = {s_v : f(v) = 1}`. Agent `i`
/// observes exactly its own symbols, so `P_i(s_v)` encodes `d_i` alone.
pub fn decision_graph_to_observation(rule: &FusionRule, encoding: Encoding) -> D2oResult {
    let agents = rule.agents();
    let (alphabet, observers): (IndexSet<Token>, Vec<Observer>) = match encoding {
        Encoding::Tagged => {
            let alphabet = (0..agents)
                .flat_map(|i| rule.decisions().iter().map(move |d| tagged(d, i)))
                .collect();
            let observers = (0..agents)
                .map(|i| Observer::Projection {
                    observable: rule.decisions().iter().map(|d| tagged(d, i)).collect(),
                })
                .collect();
            (alphabet, observers)
        }
        Encoding::Unary => {
            let alphabet = (0..agents).flat_map(|i| [zero(i), one(i)]).collect();
            let observers = (0..agents)
                .map(|i| Observer::Projection {
                    observable: [zero(i), one(i)].into_iter().collect(),
                })
                .collect();
            (alphabet, observers)
        }
    };
    let bijection: Vec<(DecisionTuple, Word)> = rule
        .domain()
        .iter()
        .map(|tuple| {
            let word = match encoding {
                Encoding::Tagged => tuple
                    .decisions()
                    .iter()
                    .enumerate()
                    .map(|(i, d)| tagged(d, i))
                    .collect(),
                Encoding::Unary => tuple
                    .decisions()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, d)| {
                        let rank = rule.decisions().iter().position(|x| x == d).expect("tuple over D");
                        std::iter::repeat_n(zero(i), rank).chain(std::iter::once(one(i)))
                    })
                    .collect(),
            };
            (tuple.clone(), word)
        })
        .collect();
    let language = bijection.iter().map(|(_, w)| w.clone()).collect();
    let legal = bijection
        .iter()
        .zip(rule.outputs())
        .filter(|(_, &out)| out)
        .map(|((_, w), _)| w.clone())
        .collect();
    D2oResult {
        problem: ObservationProblem::new(alphabet, language, legal, observers),
        bijection,
        encoding,
    }
}

/// True when the bijection is one-to-one between `𝒟` and `L` and carries the
/// decision graph's node and edge colours onto the problem's observation graph.
pub fn verify_d2o(result: &D2oResult, rule: &FusionRule) -> bool {
    let problem = &result.problem;
    if !problem.validate().is_valid() || problem.agents != rule.agents() {
        return false;
    }
    if result.bijection.len() != rule.len() || problem.language.len() != rule.len() {
        return false;
    }
    let tuples: HashSet<_> = result.bijection.iter().map(|(t, _)| t).collect();
    let words: HashSet<_> = result.bijection.iter().map(|(_, w)| w).collect();
    if tuples.len() != rule.len() || words.len() != rule.len() {
        return false;
    }
    let Ok(observed) = observation_graph(problem) else {
        return false;
    };
    let decided = decision_graph(rule);
    // node of the observation graph for each node of the decision graph
    let mut image = Vec::with_capacity(rule.len());
    for (tuple, word) in &result.bijection {
        match (rule.position(tuple), problem.language.get_index_of(word)) {
            (Some(d), Some(s)) => image.push((d, s)),
            _ => return false,
        }
    }
    image.sort_unstable();
    let image: Vec<usize> = image.into_iter().map(|(_, s)| s).collect();
    (0..rule.len()).all(|v| decided.colour(v) == observed.colour(image[v]))
        && decided
            .pairs()
            .all(|(v, w, colour)| observed.edge(image[v], image[w]) == colour)
}
