//! Node maps between coloured graphs and the two morphism conditions:
//! node colours are preserved, and the image of a pair never carries an agent
//! its source pair does not.

mod enumerate;
mod search;
mod solution;

use std::fmt;
use std::sync::Arc;

pub use enumerate::{find_solution_by_enumeration, solvable_by_enumeration, DEFAULT_ENUMERATION_BUDGET};
pub use search::{find_morphism, find_morphism_with, SearchOptions};
pub use solution::{extract_solution, verify_solution, Solution};

use crate::error::{Error, Result};
use crate::graph::{AgentSet, ColoredGraph};

/// A total map from the nodes of `source` to the nodes of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<ColoredGraph>,
    target: Arc<ColoredGraph>,
    map: Vec<usize>,
}

impl Morphism {
    /// Checks totality and range only; use [`Morphism::verify`] for the
    /// colour conditions.
    pub fn new(source: Arc<ColoredGraph>, target: Arc<ColoredGraph>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.node_count() {
            return Err(Error::InvalidMorphism(format!(
                "map covers {} of {} source nodes",
                map.len(),
                source.node_count()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= target.node_count()) {
            return Err(Error::InvalidMorphism(format!(
                "target node {bad} out of range (target has {} nodes)",
                target.node_count()
            )));
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(graph: Arc<ColoredGraph>) -> Self {
        let map = (0..graph.node_count()).collect();
        Self {
            source: graph.clone(),
            target: graph,
            map,
        }
    }

    pub fn source(&self) -> &Arc<ColoredGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ColoredGraph> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, node: usize) -> usize {
        self.map[node]
    }

    /// Lists every broken condition; an empty report means the map is a morphism.
    pub fn verify(&self) -> Result<GmReport> {
        let (s, t) = (&*self.source, &*self.target);
        if s.agents() != t.agents() {
            return Err(Error::ArityMismatch {
                left: s.agents(),
                right: t.agents(),
            });
        }
        let mut violations = Vec::new();
        for (v, &x) in self.map.iter().enumerate() {
            if s.colour(v) != t.colour(x) {
                violations.push(GmViolation::NodeColour { node: v, image: x });
            }
        }
        for (u, v, colour) in s.pairs() {
            let image = t.edge(self.map[u], self.map[v]);
            if !image.is_subset(colour) {
                violations.push(GmViolation::EdgeColour {
                    u,
                    v,
                    source: colour,
                    image,
                });
            }
        }
        Ok(GmReport { violations })
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok_and(|r| r.is_morphism())
    }

    /// `second ∘ self`. The middle graphs must be equal.
    pub fn then(&self, second: &Morphism) -> Result<Morphism> {
        compose(self, second)
    }
}

/// `second ∘ first`; fails with [`Error::GraphMismatch`] unless
/// `first.target == second.source`.
pub fn compose(first: &Morphism, second: &Morphism) -> Result<Morphism> {
    if !Arc::ptr_eq(&first.target, &second.source) && first.target != second.source {
        return Err(Error::GraphMismatch);
    }
    Ok(Morphism {
        source: first.source.clone(),
        target: second.target.clone(),
        map: first.map.iter().map(|&x| second.map[x]).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GmViolation {
    /// `node` and its image have different colours.
    NodeColour { node: usize, image: usize },
    /// The image pair carries agents outside the source pair's colour.
    EdgeColour {
        u: usize,
        v: usize,
        source: AgentSet,
        image: AgentSet,
    },
}

impl fmt::Display for GmViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GmViolation::NodeColour { node, image } => {
                write!(f, "node colour not preserved: {node} ↦ {image}")
            }
            GmViolation::EdgeColour { u, v, source, image } => {
                write!(f, "edge colour added on ({u}, {v}): {image} ⊄ {source}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GmReport {
    pub violations: Vec<GmViolation>,
}

impl GmReport {
    pub fn is_morphism(&self) -> bool {
        self.violations.is_empty()
    }
}
