use std::collections::BTreeSet;
use std::fmt;

use indexmap::{IndexMap, IndexSet};

use super::{Observation, Token, Word};
use crate::error::{Error, Result};

/// Largest supported agent count; agent sets are stored as 64-bit masks.
pub const MAX_AGENTS: usize = 64;

/// An agent's observation function `P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observer {
    /// Natural projection: erases every token outside `observable`.
    Projection { observable: BTreeSet<Token> },
    /// Explicit labels, required to be total on L only.
    Table { map: IndexMap<Word, String> },
}

impl Observer {
    pub fn projection<I, T>(observable: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        Observer::Projection {
            observable: observable.into_iter().map(Token::new).collect(),
        }
    }

    pub fn observe(&self, word: &Word) -> Result<Observation> {
        match self {
            Observer::Projection { observable } => Ok(Observation::Word(
                word.tokens()
                    .iter()
                    .filter(|t| observable.contains(*t))
                    .cloned()
                    .collect(),
            )),
            Observer::Table { map } => map
                .get(word)
                .map(|label| Observation::Label(label.clone()))
                .ok_or_else(|| Error::UnknownString(word.clone())),
        }
    }
}

/// `⟨P_i⟩s`: entry `i` is what agent `i` observes of `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObservationTuple(Vec<Observation>);

impl ObservationTuple {
    /// Broadcasts `word` to every observer.
    pub fn broadcast(observers: &[Observer], word: &Word) -> Result<Self> {
        observers
            .iter()
            .map(|p| p.observe(word))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn entries(&self) -> &[Observation] {
        &self.0
    }

    pub fn get(&self, agent: usize) -> &Observation {
        &self.0[agent]
    }
}

impl fmt::Display for ObservationTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, o) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{o}")?;
        }
        f.write_str(")")
    }
}

/// `Obs(L, K, P_i)`. Fields are public; call [`ObservationProblem::validate`]
/// before relying on `K ⊆ L` or table totality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationProblem {
    pub agents: usize,
    pub alphabet: IndexSet<Token>,
    pub language: IndexSet<Word>,
    pub legal: IndexSet<Word>,
    pub observers: Vec<Observer>,
}

impl ObservationProblem {
    pub fn new(
        alphabet: IndexSet<Token>,
        language: IndexSet<Word>,
        legal: IndexSet<Word>,
        observers: Vec<Observer>,
    ) -> Self {
        Self {
            agents: observers.len(),
            alphabet,
            language,
            legal,
            observers,
        }
    }

    pub fn is_legal(&self, word: &Word) -> bool {
        self.legal.contains(word)
    }

    /// Errors with [`Error::UnknownString`] when `word ∉ L`.
    pub fn observation_tuple(&self, word: &Word) -> Result<ObservationTuple> {
        if !self.language.contains(word) {
            return Err(Error::UnknownString(word.clone()));
        }
        ObservationTuple::broadcast(&self.observers, word)
    }

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
        report
    }
}

pub(crate) fn check_observation_part(
    report: &mut ValidationReport,
    agents: usize,
    alphabet: &IndexSet<Token>,
    language: &IndexSet<Word>,
    legal: &IndexSet<Word>,
    observers: &[Observer],
) {
    if agents == 0 {
        report.push(Violation::NoAgents);
    }
    if agents > MAX_AGENTS {
        report.push(Violation::TooManyAgents(agents));
    }
    if agents != observers.len() {
        report.push(Violation::AgentCount {
            declared: agents,
            observers: observers.len(),
        });
    }
    for word in language.iter().chain(legal.iter()) {
        for token in word.tokens() {
            if !alphabet.contains(token) {
                report.push(Violation::TokenOutsideAlphabet {
                    word: word.clone(),
                    token: token.clone(),
                });
            }
        }
    }
    for word in legal {
        if !language.contains(word) {
            report.push(Violation::LegalNotInLanguage(word.clone()));
        }
    }
    for (i, observer) in observers.iter().enumerate() {
        match observer {
            Observer::Projection { observable } => {
                for token in observable {
                    if !alphabet.contains(token) {
                        report.push(Violation::ObservableOutsideAlphabet {
                            agent: i + 1,
                            token: token.clone(),
                        });
                    }
                }
            }
            Observer::Table { map } => {
                for word in language {
                    if !map.contains_key(word) {
                        report.push(Violation::TablePartial {
                            agent: i + 1,
                            word: word.clone(),
                        });
                    }
                }
            }
        }
    }
}

/// One broken invariant. Agent numbers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoAgents,
    TooManyAgents(usize),
    AgentCount { declared: usize, observers: usize },
    ControllableCount { declared: usize, lists: usize },
    LegalNotInLanguage(Word),
    TokenOutsideAlphabet { word: Word, token: Token },
    ObservableOutsideAlphabet { agent: usize, token: Token },
    ControllableOutsideAlphabet { agent: usize, token: Token },
    TablePartial { agent: usize, word: Word },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoAgents => write!(f, "no agents"),
            Violation::TooManyAgents(n) => {
                write!(f, "{n} agents exceeds the supported maximum of {MAX_AGENTS}")
            }
            Violation::AgentCount { declared, observers } => write!(
                f,
                "agent count {declared} does not match {observers} observation functions"
            ),
            Violation::ControllableCount { declared, lists } => write!(
                f,
                "agent count {declared} does not match {lists} controllable alphabets"
            ),
            Violation::LegalNotInLanguage(w) => write!(f, "K ⊄ L: {w} is in K but not in L"),
            Violation::TokenOutsideAlphabet { word, token } => {
                write!(f, "string {word} uses token `{token}` outside the alphabet")
            }
            Violation::ObservableOutsideAlphabet { agent, token } => {
                write!(f, "P_{agent} observes `{token}` which is outside the alphabet")
            }
            Violation::ControllableOutsideAlphabet { agent, token } => {
                write!(f, "Σ_c,{agent} contains `{token}` which is outside the alphabet")
            }
            Violation::TablePartial { agent, word } => {
                write!(f, "P_{agent} partial on L: no entry for {word}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub(crate) fn add(&mut self, violation: Violation) {
        self.push(violation);
    }

    /// Converts a non-empty report into [`Error::InvalidProblem`].
    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidProblem(self.to_string()))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
