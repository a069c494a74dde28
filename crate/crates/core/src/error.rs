use thiserror::Error;

use crate::model::{Token, Word};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("string {0} is not in L; table observers are only defined on L")]
    UnknownString(Word),

    #[error("controllability violated: {word}{event} is in L but not in K")]
    ControllabilityViolation { word: Word, event: Token },

    #[error("unknown builtin fusion rule `{0}`")]
    UnknownRuleName(String),

    #[error("agent count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("at most {max} agents are supported, got {got}")]
    TooManyAgents { got: usize, max: usize },

    #[error("morphism search gave up after {0} node expansions")]
    SearchLimitExceeded(u64),

    #[error("morphisms do not compose: the first target differs from the second source")]
    GraphMismatch,

    #[error("inconsistent morphism: agent {agent} would decide both `{first}` and `{second}` on one observation")]
    InconsistentMorphism { agent: usize, first: Token, second: Token },

    #[error("enumeration needs {needed} assignments, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("invalid fusion rule: {0}")]
    InvalidRule(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
