use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use fusionmorph::format::{
    bijection_to_json, matrix_value, morphism_to_json, observation_problem_to_json, parse_control_problem,
    parse_document, parse_morphism, parse_observation_problem, parse_rule, parse_solution, solution_to_json,
    to_pretty_json, verdict_value, Document,
};
use fusionmorph::graph::{to_dot, DotOptions};
use fusionmorph::morphism::GmViolation;
use fusionmorph::{
    compare::{compare_with, relation_matrix_with, separating_problem_with},
    decision_graph, decision_graph_to_observation, extract_solution, find_morphism_with, observation_graph, verify_d2o,
    verify_solution, ColoredGraph, Encoding, Error, FusionRule, Morphism, ObservationProblem, SearchOptions,
};
use serde_json::json;

use crate::{Cli, Command, Global};

/// A completed analysis: positive (exit 0) or negative (exit 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
        }
    }

    fn from_bool(positive: bool) -> Self {
        if positive {
            Outcome::Positive
        } else {
            Outcome::Negative
        }
    }
}

/// An analysis that could not run: bad input (exit 2) or an exhausted budget (exit 3).
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Budget(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) | Failure::Budget(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchLimitExceeded(_) | Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

pub fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Reduce { file } => reduce(g, file),
        Command::Check { problem, rule } => check(g, problem, rule, false),
        Command::Solve { problem, rule } => check(g, problem, rule, true),
        Command::VerifySolution {
            problem,
            rule,
            solution,
        } => verify_solution_cmd(g, problem, rule, solution),
        Command::VerifyMorphism { source, rule, morphism } => verify_morphism_cmd(g, source, rule, morphism),
        Command::Compare {
            first,
            second,
            encoding,
        } => compare_cmd(g, first, second, *encoding),
        Command::Poset { rules } => poset(g, rules),
        Command::D2o { rule, encoding } => d2o(g, rule, *encoding),
        Command::Graph { input, hide_empty } => graph(g, input, *hide_empty),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Invalid(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn out_dir(g: &Global, command: &str) -> Result<PathBuf, Failure> {
    let dir = g
        .out
        .clone()
        .ok_or_else(|| Failure::Invalid(format!("{command} needs an output directory (-o DIR)")))?;
    fs::create_dir_all(&dir).map_err(|e| Failure::Invalid(format!("cannot create {}: {e}", dir.display())))?;
    Ok(dir)
}

fn options(g: &Global) -> SearchOptions {
    SearchOptions { budget: g.budget }
}

/// Resolves `name:agents`, a bare builtin name with `--agents`, or a rule file.
fn load_rule(g: &Global, selector: &str) -> Result<FusionRule, Failure> {
    let path = Path::new(selector);
    if path.is_file() {
        return Ok(parse_rule(&read(path)?)?);
    }
    if let Some((name, agents)) = selector.rsplit_once(':') {
        let agents: usize = agents
            .parse()
            .map_err(|_| Failure::Invalid(format!("bad agent count in rule selector `{selector}`")))?;
        return Ok(FusionRule::builtin(name, agents)?);
    }
    match g.agents {
        Some(agents) => Ok(FusionRule::builtin(selector, agents)?),
        None => {
            // Distinguish an unknown name from a missing agent count.
            selector.parse::<fusionmorph::BuiltinRule>()?;
            Err(Failure::Invalid(format!(
                "rule `{selector}` needs an agent count: use {selector}:N or --agents N"
            )))
        }
    }
}

fn load_problem(path: &Path) -> Result<ObservationProblem, Failure> {
    let problem = parse_observation_problem(&read(path)?)?;
    problem
        .validate()
        .into_result()
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok(problem)
}

/// The graph named by a graph-input argument: the observation graph of a
/// problem file, or the decision graph of a rule.
fn load_graph(g: &Global, input: &str) -> Result<ColoredGraph, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        return match parse_document(&read(path)?)? {
            Document::Observation(p) => {
                p.validate()
                    .into_result()
                    .map_err(|e| Failure::Invalid(format!("{input}: {e}")))?;
                Ok(observation_graph(&p)?)
            }
            Document::Rule(r) => Ok(decision_graph(&r)),
            Document::Control(_) => Err(Failure::Invalid(format!(
                "{input} is a control problem; reduce it first"
            ))),
        };
    }
    Ok(decision_graph(&load_rule(g, input)?))
}

fn validate(file: &Path) -> CmdResult {
    let report = match parse_document(&read(file)?)? {
        Document::Observation(p) => p.validate(),
        Document::Control(p) => p.validate(),
        // Rules are checked while parsing.
        Document::Rule(_) => Default::default(),
    };
    if report.is_valid() {
        println!("valid");
        Ok(Outcome::Positive)
    } else {
        println!("invalid");
        for v in &report.violations {
            println!("  {v}");
        }
        Err(Failure::Invalid(format!(
            "{} violation(s) in {}",
            report.violations.len(),
            file.display()
        )))
    }
}

/// Token text made safe for file names: `[A-Za-z0-9_-]` kept, anything else
/// written as `u<hex>`.
fn sanitize(token: &str) -> String {
    let mut out = String::new();
    for c in token.chars() {
        if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
            out.push(c);
        } else {
            out.push_str(&format!("u{:x}", c as u32));
        }
    }
    out
}

fn reduce(g: &Global, file: &Path) -> CmdResult {
    let problem = parse_control_problem(&read(file)?)?;
    problem
        .validate()
        .into_result()
        .map_err(|e| Failure::Invalid(format!("{}: {e}", file.display())))?;
    let family = match problem.reduce(g.allow_uncontrollable) {
        Ok(family) => family,
        Err(Error::ControllabilityViolation { word, event }) => {
            println!("not controllable: {word} ∈ K, {event} is uncontrollable and {word}{event} ∈ L \\ K");
            return Ok(Outcome::Negative);
        }
        Err(e) => return Err(e.into()),
    };
    let dir = out_dir(g, "reduce")?;
    let mut manifest = Vec::new();
    let mut used = std::collections::HashSet::new();
    for entry in &family.entries {
        let stem = sanitize(entry.event.as_str());
        let mut name = format!("obs_{stem}.json");
        let mut k = 2;
        while !used.insert(name.clone()) {
            name = format!("obs_{stem}_{k}.json");
            k += 1;
        }
        write(&dir.join(&name), &observation_problem_to_json(&entry.problem))?;
        println!("{name}: event {}, agents {:?}", entry.event, one_based(&entry.agents));
        manifest.push(json!({
            "file": name,
            "event": entry.event.as_str(),
            "agents": one_based(&entry.agents),
        }));
    }
    write(&dir.join("manifest.json"), &to_pretty_json(&json!(manifest)))?;
    Ok(Outcome::Positive)
}

fn one_based(agents: &[usize]) -> Vec<usize> {
    agents.iter().map(|a| a + 1).collect()
}

fn check(g: &Global, problem_path: &Path, selector: &str, solve: bool) -> CmdResult {
    let problem = load_problem(problem_path)?;
    let rule = load_rule(g, selector)?;
    let source = Arc::new(observation_graph(&problem)?);
    let target = Arc::new(decision_graph(&rule));
    let found = find_morphism_with(&source, &target, &options(g))?;
    let verdict = if found.is_some() { "SOLVABLE" } else { "UNSOLVABLE" };
    let Some(morphism) = found else {
        println!("{verdict}");
        return Ok(Outcome::Negative);
    };
    if let Some(path) = &g.witness {
        write(path, &morphism_to_json(&morphism))?;
    }
    if !solve {
        println!("{verdict}");
        return Ok(Outcome::Positive);
    }
    let solution = extract_solution(&morphism, &problem, &rule)?;
    if !verify_solution(&problem, &solution, &rule) {
        return Err(Failure::Invalid("extracted solution failed verification".into()));
    }
    match &g.out {
        Some(path) => {
            write(path, &solution_to_json(&solution))?;
            println!("{verdict}");
        }
        None => {
            eprintln!("{verdict}");
            print!("{}", solution_to_json(&solution));
        }
    }
    Ok(Outcome::Positive)
}

fn verify_solution_cmd(g: &Global, problem_path: &Path, selector: &str, solution_path: &Path) -> CmdResult {
    let problem = load_problem(problem_path)?;
    let rule = load_rule(g, selector)?;
    if problem.agents != rule.agents() {
        return Err(Error::ArityMismatch {
            left: problem.agents,
            right: rule.agents(),
        }
        .into());
    }
    let solution = parse_solution(&read(solution_path)?)?;
    let ok = verify_solution(&problem, &solution, &rule);
    println!("{}", if ok { "VALID" } else { "INVALID" });
    Ok(Outcome::from_bool(ok))
}

fn verify_morphism_cmd(g: &Global, source: &str, selector: &str, morphism_path: &Path) -> CmdResult {
    let source = Arc::new(load_graph(g, source)?);
    let target = Arc::new(decision_graph(&load_rule(g, selector)?));
    let morphism = parse_morphism(&read(morphism_path)?, source, target)?;
    let report = morphism.verify()?;
    if report.is_morphism() {
        println!("VALID");
        return Ok(Outcome::Positive);
    }
    println!("INVALID");
    let (s, t) = (morphism.source(), morphism.target());
    for v in &report.violations {
        match *v {
            GmViolation::NodeColour { node, image } => {
                println!("  node colour not preserved: {} ↦ {}", s.key(node), t.key(image))
            }
            GmViolation::EdgeColour { u, v, source, image } => println!(
                "  edge colour added on ({}, {}): {image} ⊄ {source}",
                s.key(u),
                s.key(v)
            ),
        }
    }
    Ok(Outcome::Negative)
}

fn compare_cmd(g: &Global, first_sel: &str, second_sel: &str, encoding: Encoding) -> CmdResult {
    let first = load_rule(g, first_sel)?;
    let second = load_rule(g, second_sel)?;
    let opts = options(g);
    let verdict = compare_with(&first, &second, &opts)?;
    println!("{}", verdict.relation.describe());
    let line = |from: &str, to: &str, m: &Option<Morphism>| {
        let state = if m.is_some() { "morphism found" } else { "no morphism" };
        println!("{from} -> {to}: {state}");
    };
    line(first_sel, second_sel, &verdict.forward);
    line(second_sel, first_sel, &verdict.backward);

    if let Some(dir) = &g.witness {
        for (name, m) in [("forward.json", &verdict.forward), ("backward.json", &verdict.backward)] {
            if let Some(m) = m {
                write(&dir.join(name), &morphism_to_json(m))?;
            }
        }
    }
    if g.separating || g.out.is_some() {
        let dir = out_dir(g, "compare")?;
        write(&dir.join("verdict.json"), &to_pretty_json(&verdict_value(&verdict)))?;
        if g.separating {
            // forward: solvable under the first rule, not the second
            for (name, a, b) in [("forward", &first, &second), ("backward", &second, &first)] {
                if let Some(d2o) = separating_problem_with(a, b, encoding, &opts)? {
                    write(
                        &dir.join(format!("separating_{name}.json")),
                        &observation_problem_to_json(&d2o.problem),
                    )?;
                    write(
                        &dir.join(format!("separating_{name}.bijection.json")),
                        &bijection_to_json(&d2o),
                    )?;
                }
            }
        }
    }
    Ok(Outcome::Positive)
}

fn poset(g: &Global, selectors: &[String]) -> CmdResult {
    let rules = selectors
        .iter()
        .map(|s| load_rule(g, s))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = relation_matrix_with(&rules, &options(g))?;
    let width = selectors.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    for (i, row) in matrix.relations.iter().enumerate() {
        let cells: Vec<&str> = row.iter().map(|r| r.as_str()).collect();
        println!("{:<width$}  {}", selectors[i], cells.join(" "));
    }
    let class_name = |c: usize| selectors[matrix.classes[c][0]].as_str();
    for class in &matrix.classes {
        let names: Vec<&str> = class.iter().map(|&i| selectors[i].as_str()).collect();
        println!("class: {}", names.join(" = "));
    }
    for &(lower, upper) in &matrix.hasse {
        println!("hasse: {} < {}", class_name(lower), class_name(upper));
    }
    if let Some(path) = &g.out {
        write(path, &to_pretty_json(&matrix_value(selectors, &matrix)))?;
    }
    Ok(Outcome::Positive)
}

fn d2o(g: &Global, selector: &str, encoding: Encoding) -> CmdResult {
    let rule = load_rule(g, selector)?;
    let result = decision_graph_to_observation(&rule, encoding);
    if !verify_d2o(&result, &rule) {
        return Err(Failure::Invalid(
            "constructed problem does not reproduce the decision graph".into(),
        ));
    }
    let dir = out_dir(g, "d2o")?;
    write(&dir.join("problem.json"), &observation_problem_to_json(&result.problem))?;
    write(&dir.join("bijection.json"), &bijection_to_json(&result))?;
    println!(
        "{} strings, {} legal ({encoding} encoding)",
        result.problem.language.len(),
        result.problem.legal.len()
    );
    Ok(Outcome::Positive)
}

fn graph(g: &Global, input: &str, hide_empty: bool) -> CmdResult {
    let graph = load_graph(g, input)?;
    let dot = to_dot(
        &graph,
        &DotOptions {
            show_empty_edges: !hide_empty,
            ..Default::default()
        },
    );
    match &g.out {
        Some(path) => write(path, &dot)?,
        None => print!("{dot}"),
    }
    Ok(Outcome::Positive)
}
