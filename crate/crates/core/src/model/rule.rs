use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Token, MAX_AGENTS};
use crate::error::{Error, Result};

/// A combination of local decisions `(d_1, …, d_n)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DecisionTuple(Vec<Token>);

impl DecisionTuple {
    pub fn new(decisions: Vec<Token>) -> Self {
        Self(decisions)
    }

    pub fn parse(items: &[&str]) -> Self {
        Self(items.iter().map(|d| Token::new(*d)).collect())
    }

    pub fn decisions(&self) -> &[Token] {
        &self.0
    }

    pub fn get(&self, agent: usize) -> &Token {
        &self.0[agent]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DecisionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(d.as_str())?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for DecisionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A partial fusion rule `f: 𝒟 → {0, 1}` with `𝒟 ⊆ Dⁿ`.
#[derive(Clone, Debug)]
pub struct FusionRule {
    agents: usize,
    decisions: Vec<Token>,
    domain: Vec<DecisionTuple>,
    output: Vec<bool>,
    index: HashMap<DecisionTuple, usize>,
}

impl PartialEq for FusionRule {
    fn eq(&self, other: &Self) -> bool {
        self.agents == other.agents
            && self.decisions == other.decisions
            && self.domain == other.domain
            && self.output == other.output
    }
}

impl Eq for FusionRule {}

impl FusionRule {
    /// Builds a rule from `(tuple, output)` entries; the domain must be non-empty.
    pub fn new(
        agents: usize,
        decisions: Vec<Token>,
        entries: impl IntoIterator<Item = (DecisionTuple, bool)>,
    ) -> Result<Self> {
        let rule = Self::build(agents, decisions, entries)?;
        if rule.domain.is_empty() {
            return Err(Error::InvalidRule("domain is empty".into()));
        }
        Ok(rule)
    }

    /// A rule with an empty domain; no problem with a non-empty L is solvable by it.
    pub fn degenerate(agents: usize, decisions: Vec<Token>) -> Result<Self> {
        Self::build(agents, decisions, std::iter::empty())
    }

    fn build(
        agents: usize,
        decisions: Vec<Token>,
        entries: impl IntoIterator<Item = (DecisionTuple, bool)>,
    ) -> Result<Self> {
        if agents == 0 {
            return Err(Error::InvalidRule("agent count must be at least 1".into()));
        }
        if agents > MAX_AGENTS {
            return Err(Error::TooManyAgents {
                got: agents,
                max: MAX_AGENTS,
            });
        }
        let known: HashSet<&Token> = decisions.iter().collect();
        if known.len() != decisions.len() {
            return Err(Error::InvalidRule("decision set has repeated entries".into()));
        }
        let mut domain = Vec::new();
        let mut output = Vec::new();
        let mut index = HashMap::new();
        for (tuple, value) in entries {
            if tuple.len() != agents {
                return Err(Error::InvalidRule(format!(
                    "tuple {tuple} has {} entries, expected {agents}",
                    tuple.len()
                )));
            }
            if let Some(d) = tuple.decisions().iter().find(|d| !known.contains(d)) {
                return Err(Error::InvalidRule(format!(
                    "tuple {tuple} uses `{d}` which is not a declared decision"
                )));
            }
            if index.insert(tuple.clone(), domain.len()).is_some() {
                return Err(Error::InvalidRule(format!("tuple {tuple} is repeated")));
            }
            domain.push(tuple);
            output.push(value);
        }
        Ok(Self {
            agents,
            decisions,
            domain,
            output,
            index,
        })
    }

    pub fn builtin(name: &str, agents: usize) -> Result<Self> {
        name.parse::<BuiltinRule>()?.build(agents)
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    /// `D`, in declared order.
    pub fn decisions(&self) -> &[Token] {
        &self.decisions
    }

    /// `𝒟`, in declared order.
    pub fn domain(&self) -> &[DecisionTuple] {
        &self.domain
    }

    pub fn outputs(&self) -> &[bool] {
        &self.output
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn position(&self, tuple: &DecisionTuple) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// `f(tuple)`, or `None` outside `𝒟`.
    pub fn apply(&self, tuple: &DecisionTuple) -> Option<bool> {
        self.position(tuple).map(|i| self.output[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&DecisionTuple, bool)> + '_ {
        self.domain.iter().zip(self.output.iter().copied())
    }
}

/// The rules that ship with the library, selected by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinRule {
    /// `D = {0, 1}`, `f = ∧`.
    Conjunctive,
    /// `D = {0, 1}`, `f = ∨`.
    Disjunctive,
    /// `D = {0, 1, dk}`; undefined on a 0/1 conflict and on unanimous `dk`.
    Cpda,
    /// `D = {0, 1, cd}`; undefined on a 0/1 conflict, unanimous `cd` fuses to 1.
    ConjunctiveCd,
    Const0,
    Const1,
}

impl BuiltinRule {
    pub const ALL: [BuiltinRule; 6] = [
        BuiltinRule::Conjunctive,
        BuiltinRule::Disjunctive,
        BuiltinRule::Cpda,
        BuiltinRule::ConjunctiveCd,
        BuiltinRule::Const0,
        BuiltinRule::Const1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinRule::Conjunctive => "conjunctive",
            BuiltinRule::Disjunctive => "disjunctive",
            BuiltinRule::Cpda => "cpda",
            BuiltinRule::ConjunctiveCd => "conjunctive_cd",
            BuiltinRule::Const0 => "const0",
            BuiltinRule::Const1 => "const1",
        }
    }

    pub fn build(self, agents: usize) -> Result<FusionRule> {
        let zero = Token::new("0");
        let one = Token::new("1");
        match self {
            BuiltinRule::Conjunctive => {
                product_rule(agents, vec![zero.clone(), one], |t| Some(t.iter().all(|d| *d != 0)))
            }
            BuiltinRule::Disjunctive => product_rule(agents, vec![zero, one], |t| Some(t.contains(&1))),
            BuiltinRule::Cpda => product_rule(agents, vec![zero, one, Token::new("dk")], |t| {
                let has0 = t.contains(&0);
                let has1 = t.contains(&1);
                (!(has0 && has1) && (has0 || has1)).then_some(!has0)
            }),
            BuiltinRule::ConjunctiveCd => product_rule(agents, vec![zero, one, Token::new("cd")], |t| {
                let has0 = t.contains(&0);
                let has1 = t.contains(&1);
                (!(has0 && has1)).then_some(!has0)
            }),
            BuiltinRule::Const0 => constant_rule(agents, false),
            BuiltinRule::Const1 => constant_rule(agents, true),
        }
    }
}

impl FromStr for BuiltinRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRuleName(s.to_owned()))
    }
}

impl fmt::Display for BuiltinRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Enumerates `Dⁿ` lexicographically (by declared order of `D`) and keeps the
/// tuples on which `fuse` is defined. `fuse` sees decision indices.
fn product_rule(agents: usize, decisions: Vec<Token>, fuse: impl Fn(&[usize]) -> Option<bool>) -> Result<FusionRule> {
    if agents == 0 {
        return Err(Error::InvalidRule("agent count must be at least 1".into()));
    }
    if agents > MAX_AGENTS {
        return Err(Error::TooManyAgents {
            got: agents,
            max: MAX_AGENTS,
        });
    }
    let mut entries = Vec::new();
    let mut digits = vec![0usize; agents];
    loop {
        if let Some(value) = fuse(&digits) {
            let tuple = DecisionTuple::new(digits.iter().map(|&d| decisions[d].clone()).collect());
            entries.push((tuple, value));
        }
        // odometer, last agent fastest
        let mut pos = agents;
        loop {
            if pos == 0 {
                return FusionRule::new(agents, decisions, entries);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < decisions.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

fn constant_rule(agents: usize, value: bool) -> Result<FusionRule> {
    let decisions = vec![Token::new("0"), Token::new("1")];
    let d = decisions[usize::from(value)].clone();
    let tuple = DecisionTuple::new(vec![d; agents]);
    FusionRule::new(agents, decisions, [(tuple, value)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(items: &[&str]) -> DecisionTuple {
        DecisionTuple::parse(items)
    }

    #[test]
    fn cpda_two_agents() {
        let r = FusionRule::builtin("cpda", 2).unwrap();
        let mut got: Vec<(DecisionTuple, bool)> = r.entries().map(|(d, o)| (d.clone(), o)).collect();
        got.sort();
        let mut expected = vec![
            (t(&["0", "0"]), false),
            (t(&["0", "dk"]), false),
            (t(&["dk", "0"]), false),
            (t(&["1", "1"]), true),
            (t(&["1", "dk"]), true),
            (t(&["dk", "1"]), true),
        ];
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn conjunctive_two_agents() {
        let r = FusionRule::builtin("conjunctive", 2).unwrap();
        assert_eq!(r.len(), 4);
        let ones: Vec<_> = r.entries().filter(|(_, o)| *o).map(|(d, _)| d.clone()).collect();
        assert_eq!(ones, vec![t(&["1", "1"])]);
        assert_eq!(r.decisions(), &[Token::new("0"), Token::new("1")]);
    }

    #[test]
    fn disjunctive_two_agents() {
        let r = FusionRule::builtin("disjunctive", 2).unwrap();
        let zeros: Vec<_> = r.entries().filter(|(_, o)| !*o).map(|(d, _)| d.clone()).collect();
        assert_eq!(zeros, vec![t(&["0", "0"])]);
    }

    #[test]
    fn conjunctive_cd_all_cd_is_one() {
        let r = FusionRule::builtin("conjunctive_cd", 2).unwrap();
        assert_eq!(r.apply(&t(&["cd", "cd"])), Some(true));
        assert_eq!(r.apply(&t(&["0", "1"])), None);
        assert_eq!(r.apply(&t(&["0", "cd"])), Some(false));
        assert_eq!(r.len(), 7);
    }

    #[test]
    fn const_rules() {
        let r = FusionRule::builtin("const1", 3).unwrap();
        assert_eq!(r.domain(), &[t(&["1", "1", "1"])]);
        assert_eq!(r.outputs(), &[true]);
        let r = FusionRule::builtin("const0", 2).unwrap();
        assert_eq!(r.domain(), &[t(&["0", "0"])]);
        assert_eq!(r.outputs(), &[false]);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            FusionRule::builtin("majority", 2),
            Err(Error::UnknownRuleName(n)) if n == "majority"
        ));
        assert!(FusionRule::builtin("conjunctive", 0).is_err());
    }

    #[test]
    fn builtins_are_well_formed() {
        for rule in BuiltinRule::ALL {
            for n in 1..=4 {
                let r = rule.build(n).unwrap();
                let distinct: HashSet<_> = r.domain().iter().collect();
                assert_eq!(distinct.len(), r.len(), "{rule} n={n}");
                assert_eq!(r.outputs().len(), r.len());
                for d in r.domain() {
                    assert_eq!(d.len(), n);
                    assert!(d.decisions().iter().all(|x| r.decisions().contains(x)));
                }
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_rules() {
        let d = vec![Token::new("0"), Token::new("1")];
        assert!(FusionRule::new(2, d.clone(), [(t(&["0"]), true)]).is_err());
        assert!(FusionRule::new(1, d.clone(), [(t(&["2"]), true)]).is_err());
        assert!(FusionRule::new(1, d.clone(), [(t(&["0"]), true), (t(&["0"]), false)]).is_err());
        assert!(FusionRule::new(1, d.clone(), []).is_err());
        assert!(FusionRule::degenerate(1, d).unwrap().is_empty());
        assert!(FusionRule::new(1, vec![Token::new("0"), Token::new("0")], []).is_err());
    }
}
