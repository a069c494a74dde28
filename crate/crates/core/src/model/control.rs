use indexmap::IndexSet;

use super::problem::check_observation_part;
use super::{ObservationProblem, Observer, Token, ValidationReport, Violation, Word};
use crate::error::{Error, Result};

/// `Con(L, K, P_i, Σ_c,i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlProblem {
    pub agents: usize,
    pub alphabet: IndexSet<Token>,
    /// `Σ_c,i` for each agent.
    pub controllable: Vec<IndexSet<Token>>,
    pub language: IndexSet<Word>,
    pub legal: IndexSet<Word>,
    pub observers: Vec<Observer>,
}

impl ControlProblem {
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        check_observation_part(
            &mut report,
            self.agents,
            &self.alphabet,
            &self.language,
            &self.legal,
            &self.observers,
        );
        if self.controllable.len() != self.agents {
            report.add(Violation::ControllableCount {
                declared: self.agents,
                lists: self.controllable.len(),
            });
        }
        for (i, events) in self.controllable.iter().enumerate() {
            for token in events {
                if !self.alphabet.contains(token) {
                    report.add(Violation::ControllableOutsideAlphabet {
                        agent: i + 1,
                        token: token.clone(),
                    });
                }
            }
        }
        report
    }

    /// `Σ_c = ∪ Σ_c,i`, in alphabet order.
    pub fn controllable_events(&self) -> Vec<Token> {
        self.alphabet
            .iter()
            .filter(|t| self.controllable.iter().any(|c| c.contains(*t)))
            .cloned()
            .collect()
    }

    /// `Σ_u = Σ − Σ_c`, in alphabet order.
    pub fn uncontrollable_events(&self) -> Vec<Token> {
        self.alphabet
            .iter()
            .filter(|t| !self.controllable.iter().any(|c| c.contains(*t)))
            .cloned()
            .collect()
    }

    /// `N_σ`: 0-based indices of the agents that control `event`.
    pub fn controllers(&self, event: &Token) -> Vec<usize> {
        self.controllable
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(event))
            .map(|(i, _)| i)
            .collect()
    }

    /// First `(s, u)` with `s ∈ K`, `u ∈ Σ_u` and `su ∈ L − K`.
    pub fn controllability_witness(&self) -> Option<(Word, Token)> {
        let uncontrollable = self.uncontrollable_events();
        self.legal.iter().find_map(|s| {
            uncontrollable.iter().find_map(|u| {
                let su = s.then(u);
                (self.language.contains(&su) && !self.legal.contains(&su)).then(|| (s.clone(), u.clone()))
            })
        })
    }

    /// `KΣ_u ∩ L ⊆ K`
    pub fn is_controllable(&self) -> bool {
        self.controllability_witness().is_none()
    }

    /// Splits the problem into one observation problem per controllable event.
    ///
    /// Fails with [`Error::ControllabilityViolation`] unless `allow_uncontrollable`
    /// is set; the languages themselves are well-defined either way.
    pub fn reduce(&self, allow_uncontrollable: bool) -> Result<ReducedFamily> {
        if !allow_uncontrollable {
            if let Some((word, event)) = self.controllability_witness() {
                return Err(Error::ControllabilityViolation { word, event });
            }
        }
        let entries = self
            .controllable_events()
            .into_iter()
            .map(|event| {
                let agents = self.controllers(&event);
                let language: IndexSet<Word> = self
                    .legal
                    .iter()
                    .filter(|s| self.language.contains(&s.then(&event)))
                    .cloned()
                    .collect();
                let legal: IndexSet<Word> = self
                    .legal
                    .iter()
                    .filter(|s| self.legal.contains(&s.then(&event)))
                    .cloned()
                    .collect();
                let observers = agents.iter().map(|&i| self.observers[i].clone()).collect();
                ReducedEntry {
                    problem: ObservationProblem::new(self.alphabet.clone(), language, legal, observers),
                    event,
                    agents,
                }
            })
            .collect();
        Ok(ReducedFamily { entries })
    }
}

/// The observation problem attached to one controllable event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedEntry {
    pub event: Token,
    /// 0-based indices into the original agent list; agent `j` of `problem`
    /// is original agent `agents[j]`.
    pub agents: Vec<usize>,
    pub problem: ObservationProblem,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedFamily {
    pub entries: Vec<ReducedEntry>,
}

impl ReducedFamily {
    pub fn get(&self, event: &Token) -> Option<&ReducedEntry> {
        self.entries.iter().find(|e| &e.event == event)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
