//! Decide solvability of decentralized observation and control problems, and
//! compare fusion rules by permissiveness, through colour-constrained graph
//! morphisms between observation graphs and decision graphs.
//!
//! A problem `Obs(L, K, P_i)` becomes an observation graph on `L`; a fusion
//! rule becomes a decision graph on its domain. The problem is solvable under
//! the rule exactly when a node-colour preserving, edge-colour non-increasing
//! map exists from the first graph to the second, and one rule is at least as
//! permissive as another exactly when such a map exists between their
//! decision graphs.

pub mod compare;
pub mod error;
pub mod format;
pub mod graph;
pub mod model;
pub mod morphism;

pub use compare::{compare, relation_matrix, separating_problem, PermissivenessVerdict, Relation, RelationMatrix};
pub use error::{Error, Result};
pub use graph::{
    decision_graph, decision_graph_to_observation, observation_graph, quotient_by_indistinguishability, verify_d2o,
    AgentSet, ColoredGraph, D2oResult, Encoding, NodeKey,
};
pub use model::{
    BuiltinRule, ControlProblem, DecisionTuple, FusionRule, Observation, ObservationProblem, Observer, Token, Word,
};
pub use morphism::{
    compose, extract_solution, find_morphism, find_morphism_with, solvable_by_enumeration, verify_solution, Morphism,
    SearchOptions, Solution,
};
