//! Edge-coloured complete graphs shared by observation and decision graphs.
//!
//! Every unordered pair of distinct nodes carries an [`AgentSet`]; nodes carry
//! a binary colour (`true` = in K, or fused decision 1).

mod build;
mod d2o;
mod dot;
mod quotient;

use std::fmt;

pub use build::{decision_graph, observation_graph};
pub use d2o::{decision_graph_to_observation, verify_d2o, D2oResult, Encoding};
pub use dot::{to_dot, DotOptions};
pub use quotient::{quotient_by_indistinguishability, Quotient};

use crate::error::{Error, Result};
use crate::model::{DecisionTuple, Word, MAX_AGENTS};

/// A subset of the agents, stored as a bitmask over 0-based indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentSet(u64);

impl AgentSet {
    pub const EMPTY: AgentSet = AgentSet(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All agents `0..agents`.
    pub fn full(agents: usize) -> Self {
        if agents >= 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << agents) - 1)
        }
    }

    pub fn singleton(agent: usize) -> Self {
        Self(1 << agent)
    }

    pub fn insert(&mut self, agent: usize) {
        self.0 |= 1 << agent;
    }

    pub fn contains(self, agent: usize) -> bool {
        agent < 64 && self.0 & (1 << agent) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: AgentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: AgentSet) -> Self {
        Self(self.0 & other.0)
    }

    pub fn union(self, other: AgentSet) -> Self {
        Self(self.0 | other.0)
    }

    /// 0-based agent indices, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self.0 & (1 << i) != 0)
    }
}

impl FromIterator<usize> for AgentSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = AgentSet::EMPTY;
        for agent in iter {
            set.insert(agent);
        }
        set
    }
}

/// Displays 1-based, e.g. `{1,2}`; the empty set is `∅`.
impl fmt::Display for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// What a node stands for.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NodeKey {
    Word(Word),
    Tuple(DecisionTuple),
    Label(String),
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKey::Word(w) => w.fmt(f),
            NodeKey::Tuple(t) => t.fmt(f),
            NodeKey::Label(l) => f.write_str(l),
        }
    }
}

/// A complete graph with node colours in `{0, 1}` and edge colours in `2^{1..n}`.
///
/// Edge colours are materialized as a dense symmetric matrix; the diagonal is `∅`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredGraph {
    agents: usize,
    keys: Vec<NodeKey>,
    colours: Vec<bool>,
    edges: Vec<AgentSet>,
}

impl ColoredGraph {
    /// Builds a graph, calling `edge(u, v)` once per pair `u < v`.
    ///
    /// Colours outside `0..agents` are masked off.
    pub fn from_fn(
        agents: usize,
        keys: Vec<NodeKey>,
        colours: Vec<bool>,
        mut edge: impl FnMut(usize, usize) -> AgentSet,
    ) -> Result<Self> {
        if agents > MAX_AGENTS {
            return Err(Error::TooManyAgents {
                got: agents,
                max: MAX_AGENTS,
            });
        }
        assert_eq!(keys.len(), colours.len(), "one colour per node");
        let size = keys.len();
        let mask = AgentSet::full(agents);
        let mut edges = vec![AgentSet::EMPTY; size * size];
        for u in 0..size {
            for v in u + 1..size {
                let colour = edge(u, v).intersection(mask);
                edges[u * size + v] = colour;
                edges[v * size + u] = colour;
            }
        }
        Ok(Self {
            agents,
            keys,
            colours,
            edges,
        })
    }

    pub fn empty(agents: usize) -> Result<Self> {
        Self::from_fn(agents, Vec::new(), Vec::new(), |_, _| AgentSet::EMPTY)
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn node_count(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[NodeKey] {
        &self.keys
    }

    pub fn key(&self, node: usize) -> &NodeKey {
        &self.keys[node]
    }

    pub fn colour(&self, node: usize) -> bool {
        self.colours[node]
    }

    pub fn colours(&self) -> &[bool] {
        &self.colours
    }

    /// Colour of the pair `{u, v}`; `∅` when `u == v`.
    pub fn edge(&self, u: usize, v: usize) -> AgentSet {
        self.edges[u * self.keys.len() + v]
    }

    /// First node with the given key.
    pub fn position(&self, key: &NodeKey) -> Option<usize> {
        self.keys.iter().position(|k| k == key)
    }

    /// Unordered pairs `u < v` with their colours, row by row.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, AgentSet)> + '_ {
        let size = self.keys.len();
        (0..size).flat_map(move |u| (u + 1..size).map(move |v| (u, v, self.edge(u, v))))
    }

    /// True when no two distinct nodes are joined by an `∅` edge, as in every
    /// decision graph.
    pub fn separates_nodes(&self) -> bool {
        self.pairs().all(|(_, _, c)| !c.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agent_set_basics() {
        let a: AgentSet = [0, 1].into_iter().collect();
        let b = AgentSet::singleton(1);
        assert!(b.is_subset(a));
        assert!(!a.is_subset(b));
        assert!(AgentSet::EMPTY.is_subset(b));
        assert_eq!(a.to_string(), "{1,2}");
        assert_eq!(AgentSet::EMPTY.to_string(), "∅");
        assert_eq!(a.len(), 2);
        assert_eq!(AgentSet::full(64).len(), 64);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn from_fn_is_symmetric_with_empty_diagonal() {
        let keys = (0..3).map(|i| NodeKey::Label(format!("v{i}"))).collect();
        let g = ColoredGraph::from_fn(2, keys, vec![true, false, true], |u, _| {
            if u == 0 {
                AgentSet::EMPTY
            } else {
                AgentSet::from_bits(7)
            }
        })
        .unwrap();
        for u in 0..3 {
            assert!(g.edge(u, u).is_empty());
            for v in 0..3 {
                assert_eq!(g.edge(u, v), g.edge(v, u));
            }
        }
        // bit 2 is outside two agents and is masked away
        assert_eq!(g.edge(1, 2), AgentSet::from_bits(3));
        assert!(!g.separates_nodes());
    }

    #[test]
    fn too_many_agents() {
        assert!(matches!(ColoredGraph::empty(65), Err(Error::TooManyAgents { .. })));
    }
}
