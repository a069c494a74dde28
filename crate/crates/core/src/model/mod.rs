//! Alphabets, strings, finite languages, observation functions, fusion rules
//! and the two problem classes.

mod control;
mod problem;
mod rule;
mod word;

pub use control::{ControlProblem, ReducedEntry, ReducedFamily};
pub use problem::{ObservationProblem, ObservationTuple, Observer, ValidationReport, Violation, MAX_AGENTS};
pub use rule::{BuiltinRule, DecisionTuple, FusionRule};
pub use word::{Observation, Token, Word};

#[cfg(test)]
pub(crate) mod test_support {
    use indexmap::IndexSet;

    use super::*;

    fn words(items: &[&str]) -> IndexSet<Word> {
        items.iter().map(|s| Word::from_symbols(s)).collect()
    }

    /// L = {a, b, ab, bb}, K = {b}, Σ_o,1 = {a}, Σ_o,2 = {b}.
    pub fn two_agent_problem() -> ObservationProblem {
        ObservationProblem::new(
            ["a", "b"].into_iter().map(Token::new).collect(),
            words(&["a", "b", "ab", "bb"]),
            words(&["b"]),
            vec![Observer::projection(["a"]), Observer::projection(["b"])],
        )
    }

    /// Σ_u = {a, b}, Σ_c = {γ} for both agents, L = {ε, a, b, aγ, bγ}, K = {ε, a, b, aγ}.
    pub fn gamma_problem() -> ControlProblem {
        let gamma: IndexSet<Token> = [Token::new("γ")].into_iter().collect();
        ControlProblem {
            agents: 2,
            alphabet: ["a", "b", "γ"].into_iter().map(Token::new).collect(),
            controllable: vec![gamma.clone(), gamma],
            language: words(&["", "a", "b", "aγ", "bγ"]),
            legal: words(&["", "a", "b", "aγ"]),
            observers: vec![Observer::projection(["a"]), Observer::projection(["b"])],
        }
    }
}
