//! JSON file formats.
//!
//! Every document is an object whose `type` field names its kind:
//! `observation`, `control` or `fusion_rule`. Strings are arrays of token
//! texts (ε is `[]`). Morphisms, solutions, bijections and verdicts are
//! separate documents without a `type` field.

use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::compare::{PermissivenessVerdict, RelationMatrix};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, D2oResult, NodeKey};
use crate::model::{ControlProblem, DecisionTuple, FusionRule, Observation, ObservationProblem, Observer, Token, Word};
use crate::morphism::{Morphism, Solution};

/// A parsed input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Observation(ObservationProblem),
    Control(ControlProblem),
    Rule(FusionRule),
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text)?;
    let kind = value
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Format("missing string field `type`".into()))?
        .to_owned();
    match kind.as_str() {
        "observation" => Ok(Document::Observation(
            serde_json::from_value::<ObservationDoc>(value)?.into_model()?,
        )),
        "control" => Ok(Document::Control(
            serde_json::from_value::<ControlDoc>(value)?.into_model()?,
        )),
        "fusion_rule" => Ok(Document::Rule(serde_json::from_value::<RuleDoc>(value)?.into_model()?)),
        other => Err(Error::Format(format!("unknown document type `{other}`"))),
    }
}

pub fn parse_observation_problem(text: &str) -> Result<ObservationProblem> {
    match parse_document(text)? {
        Document::Observation(p) => Ok(p),
        _ => Err(Error::Format("expected an observation problem".into())),
    }
}

pub fn parse_control_problem(text: &str) -> Result<ControlProblem> {
    match parse_document(text)? {
        Document::Control(p) => Ok(p),
        _ => Err(Error::Format("expected a control problem".into())),
    }
}

pub fn parse_rule(text: &str) -> Result<FusionRule> {
    match parse_document(text)? {
        Document::Rule(r) => Ok(r),
        _ => Err(Error::Format("expected a fusion rule".into())),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ObserverDoc {
    Projection { observable: Vec<Token> },
    Table { map: Vec<(Word, String)> },
}

impl ObserverDoc {
    fn from_model(observer: &Observer) -> Self {
        match observer {
            Observer::Projection { observable } => ObserverDoc::Projection {
                observable: observable.iter().cloned().collect(),
            },
            Observer::Table { map } => ObserverDoc::Table {
                map: map.iter().map(|(w, l)| (w.clone(), l.clone())).collect(),
            },
        }
    }

    fn into_model(self) -> Result<Observer> {
        Ok(match self {
            ObserverDoc::Projection { observable } => Observer::Projection {
                observable: observable.into_iter().collect(),
            },
            ObserverDoc::Table { map } => {
                let len = map.len();
                let map: IndexMap<Word, String> = map.into_iter().collect();
                if map.len() != len {
                    return Err(Error::Format("observation table lists a string twice".into()));
                }
                Observer::Table { map }
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObservationDoc {
    #[serde(rename = "type")]
    kind: String,
    agents: usize,
    alphabet: Vec<Token>,
    #[serde(rename = "L")]
    language: Vec<Word>,
    #[serde(rename = "K")]
    legal: Vec<Word>,
    observers: Vec<ObserverDoc>,
}

impl ObservationDoc {
    fn into_model(self) -> Result<ObservationProblem> {
        Ok(ObservationProblem {
            agents: self.agents,
            alphabet: distinct(self.alphabet, "alphabet")?,
            language: distinct(self.language, "L")?,
            legal: distinct(self.legal, "K")?,
            observers: self
                .observers
                .into_iter()
                .map(ObserverDoc::into_model)
                .collect::<Result<_>>()?,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ControlDoc {
    #[serde(rename = "type")]
    kind: String,
    agents: usize,
    alphabet: Vec<Token>,
    controllable: Vec<Vec<Token>>,
    #[serde(rename = "L")]
    language: Vec<Word>,
    #[serde(rename = "K")]
    legal: Vec<Word>,
    observers: Vec<ObserverDoc>,
}

impl ControlDoc {
    fn into_model(self) -> Result<ControlProblem> {
        Ok(ControlProblem {
            agents: self.agents,
            alphabet: distinct(self.alphabet, "alphabet")?,
            controllable: self
                .controllable
                .into_iter()
                .map(|c| distinct(c, "controllable alphabet"))
                .collect::<Result<_>>()?,
            language: distinct(self.language, "L")?,
            legal: distinct(self.legal, "K")?,
            observers: self
                .observers
                .into_iter()
                .map(ObserverDoc::into_model)
                .collect::<Result<_>>()?,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    #[serde(rename = "type")]
    kind: String,
    agents: usize,
    decisions: Vec<Token>,
    domain: Vec<DecisionTuple>,
    output: Vec<u8>,
}

impl RuleDoc {
    fn into_model(self) -> Result<FusionRule> {
        if self.domain.len() != self.output.len() {
            return Err(Error::Format(format!(
                "domain has {} tuples but output has {} values",
                self.domain.len(),
                self.output.len()
            )));
        }
        let outputs = self
            .output
            .iter()
            .map(|&o| match o {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Format(format!("output values must be 0 or 1, got {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        FusionRule::new(self.agents, self.decisions, self.domain.into_iter().zip(outputs))
    }
}

fn distinct<T: std::hash::Hash + Eq + std::fmt::Display>(items: Vec<T>, what: &str) -> Result<IndexSet<T>> {
    let mut set = IndexSet::with_capacity(items.len());
    for item in items {
        if set.contains(&item) {
            return Err(Error::Format(format!("{what} lists `{item}` twice")));
        }
        set.insert(item);
    }
    Ok(set)
}

fn pretty(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

pub fn observation_problem_to_json(problem: &ObservationProblem) -> String {
    pretty(&ObservationDoc {
        kind: "observation".into(),
        agents: problem.agents,
        alphabet: problem.alphabet.iter().cloned().collect(),
        language: problem.language.iter().cloned().collect(),
        legal: problem.legal.iter().cloned().collect(),
        observers: problem.observers.iter().map(ObserverDoc::from_model).collect(),
    })
}

pub fn control_problem_to_json(problem: &ControlProblem) -> String {
    pretty(&ControlDoc {
        kind: "control".into(),
        agents: problem.agents,
        alphabet: problem.alphabet.iter().cloned().collect(),
        controllable: problem
            .controllable
            .iter()
            .map(|c| c.iter().cloned().collect())
            .collect(),
        language: problem.language.iter().cloned().collect(),
        legal: problem.legal.iter().cloned().collect(),
        observers: problem.observers.iter().map(ObserverDoc::from_model).collect(),
    })
}

pub fn rule_to_json(rule: &FusionRule) -> String {
    pretty(&RuleDoc {
        kind: "fusion_rule".into(),
        agents: rule.agents(),
        decisions: rule.decisions().to_vec(),
        domain: rule.domain().to_vec(),
        output: rule.outputs().iter().map(|&o| u8::from(o)).collect(),
    })
}

/// How a node is named in morphism files: joined token text for strings, an
/// array of decision texts for tuples.
pub fn node_key_value(key: &NodeKey) -> Value {
    match key {
        NodeKey::Word(w) => Value::String(w.joined()),
        NodeKey::Tuple(t) => json!(t),
        NodeKey::Label(l) => Value::String(l.clone()),
    }
}

pub fn morphism_value(morphism: &Morphism) -> Value {
    let source = morphism.source();
    let target = morphism.target();
    Value::Array(
        morphism
            .map()
            .iter()
            .enumerate()
            .map(|(v, &x)| json!([node_key_value(source.key(v)), node_key_value(target.key(x))]))
            .collect(),
    )
}

pub fn morphism_to_json(morphism: &Morphism) -> String {
    pretty(&morphism_value(morphism))
}

fn resolve(graph: &ColoredGraph, key: &Value, side: &str) -> Result<usize> {
    let mut hits = graph
        .keys()
        .iter()
        .enumerate()
        .filter(|(_, k)| &node_key_value(k) == key)
        .map(|(i, _)| i);
    match (hits.next(), hits.next()) {
        (Some(i), None) => Ok(i),
        (None, _) => Err(Error::Format(format!("no {side} node named {key}"))),
        (Some(_), Some(_)) => Err(Error::Format(format!("{side} node name {key} is ambiguous"))),
    }
}

/// Reads a morphism file against the graphs it maps between.
pub fn parse_morphism(text: &str, source: Arc<ColoredGraph>, target: Arc<ColoredGraph>) -> Result<Morphism> {
    let pairs: Vec<(Value, Value)> = serde_json::from_str(text)?;
    let mut map = vec![None; source.node_count()];
    for (from, to) in &pairs {
        let v = resolve(&source, from, "source")?;
        let x = resolve(&target, to, "target")?;
        if map[v].replace(x).is_some() {
            return Err(Error::Format(format!("source node {from} is mapped twice")));
        }
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| Error::Format(format!("source node {} is not mapped", source.key(v)))))
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(source, target, map)
}

/// Per agent, an array of `[observation, decision]` pairs.
pub fn solution_to_json(solution: &Solution) -> String {
    let tables: Vec<Vec<(&Observation, &Token)>> = solution.tables.iter().map(|t| t.iter().collect()).collect();
    pretty(&tables)
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let tables: Vec<Vec<(Observation, Token)>> = serde_json::from_str(text)?;
    let tables = tables
        .into_iter()
        .enumerate()
        .map(|(i, pairs)| {
            let len = pairs.len();
            let table: IndexMap<Observation, Token> = pairs.into_iter().collect();
            if table.len() != len {
                return Err(Error::Format(format!(
                    "table of agent {} lists an observation twice",
                    i + 1
                )));
            }
            Ok(table)
        })
        .collect::<Result<_>>()?;
    Ok(Solution { tables })
}

/// `[[tuple, string], …]`
pub fn bijection_to_json(result: &D2oResult) -> String {
    pretty(&result.bijection)
}

pub fn parse_bijection(text: &str) -> Result<Vec<(DecisionTuple, Word)>> {
    Ok(serde_json::from_str(text)?)
}

pub fn verdict_value(verdict: &PermissivenessVerdict) -> Value {
    json!({
        "relation": verdict.relation.as_str(),
        "forward": verdict.forward.as_ref().map(morphism_value),
        "backward": verdict.backward.as_ref().map(morphism_value),
    })
}

/// Rule names index `matrix`'s rows; classes and Hasse edges are named by
/// their first member.
pub fn matrix_value(names: &[String], matrix: &RelationMatrix) -> Value {
    let class_name = |c: usize| names[matrix.classes[c][0]].clone();
    json!({
        "rules": names,
        "relations": matrix.relations.iter().map(|row| row.iter().map(|r| r.as_str()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "classes": matrix.classes.iter().map(|c| c.iter().map(|&i| names[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "hasse": matrix.hasse.iter().map(|&(a, b)| [class_name(a), class_name(b)]).collect::<Vec<_>>(),
    })
}

pub fn to_pretty_json(value: &Value) -> String {
    pretty(value)
}
