use indexmap::IndexMap;

use super::Solution;
use crate::error::{Error, Result};
use crate::model::{DecisionTuple, FusionRule, Observation, ObservationProblem};

/// Default cap on the number of table assignments tried by the oracle.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

/// Decides solvability by trying every assignment of local decision tables.
///
/// Uses no graph machinery, so it can cross-check the morphism search.
pub fn solvable_by_enumeration(problem: &ObservationProblem, rule: &FusionRule, budget: u128) -> Result<bool> {
    Ok(find_solution_by_enumeration(problem, rule, budget)?.is_some())
}

/// The first passing assignment in odometer order, if any.
///
/// There are `|D|^(Σ_i |P_i(L)|)` assignments; more than `budget` is an
/// [`Error::BudgetExceeded`].
pub fn find_solution_by_enumeration(
    problem: &ObservationProblem,
    rule: &FusionRule,
    budget: u128,
) -> Result<Option<Solution>> {
    if problem.agents != rule.agents() {
        return Err(Error::ArityMismatch {
            left: problem.agents,
            right: rule.agents(),
        });
    }
    // labels[i]: distinct observations of agent i over L
    let mut labels: Vec<IndexMap<Observation, usize>> = vec![IndexMap::new(); problem.agents];
    let mut slot_base = vec![0usize; problem.agents];
    let mut cases = Vec::with_capacity(problem.language.len());
    for s in &problem.language {
        let mut slots = Vec::with_capacity(problem.agents);
        for (i, p) in problem.observers.iter().enumerate() {
            let o = p.observe(s)?;
            let next = labels[i].len();
            slots.push((i, *labels[i].entry(o).or_insert(next)));
        }
        cases.push((slots, problem.is_legal(s)));
    }
    let mut total = 0;
    for (i, l) in labels.iter().enumerate() {
        slot_base[i] = total;
        total += l.len();
    }
    let options = rule.decisions().len() as u128;
    let needed = (0..total)
        .try_fold(1u128, |acc, _| acc.checked_mul(options))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let cases: Vec<(Vec<usize>, bool)> = cases
        .into_iter()
        .map(|(slots, legal)| (slots.into_iter().map(|(i, k)| slot_base[i] + k).collect(), legal))
        .collect();

    let mut digits = vec![0usize; total];
    loop {
        let passes = cases.iter().all(|(slots, legal)| {
            let tuple = DecisionTuple::new(slots.iter().map(|&k| rule.decisions()[digits[k]].clone()).collect());
            rule.apply(&tuple) == Some(*legal)
        });
        if passes {
            let tables = labels
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    l.iter()
                        .map(|(o, &k)| (o.clone(), rule.decisions()[digits[slot_base[i] + k]].clone()))
                        .collect()
                })
                .collect();
            return Ok(Some(Solution { tables }));
        }
        let mut pos = total;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < rule.decisions().len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::test_support::two_agent_problem;
    use crate::model::{Observer, Token, Word};
    use crate::morphism::verify_solution;

    #[test]
    fn two_agent_problem_conjunctive() {
        let rule = FusionRule::builtin("conjunctive", 2).unwrap();
        let p = two_agent_problem();
        let sol = find_solution_by_enumeration(&p, &rule, DEFAULT_ENUMERATION_BUDGET)
            .unwrap()
            .unwrap();
        assert!(verify_solution(&p, &sol, &rule));
    }

    #[test]
    fn identical_tuples_with_clashing_colours() {
        let p = ObservationProblem::new(
            ["a", "b"].into_iter().map(Token::new).collect(),
            ["b", "bb"].iter().map(|s| Word::from_symbols(s)).collect(),
            [Word::from_symbols("b")].into_iter().collect(),
            vec![Observer::projection(["a"]), Observer::projection(["a"])],
        );
        for name in [
            "conjunctive",
            "disjunctive",
            "cpda",
            "conjunctive_cd",
            "const0",
            "const1",
        ] {
            let rule = FusionRule::builtin(name, 2).unwrap();
            assert!(
                !solvable_by_enumeration(&p, &rule, DEFAULT_ENUMERATION_BUDGET).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn all_legal_const1() {
        let mut p = two_agent_problem();
        p.legal = p.language.clone();
        let rule = FusionRule::builtin("const1", 2).unwrap();
        assert!(solvable_by_enumeration(&p, &rule, DEFAULT_ENUMERATION_BUDGET).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let rule = FusionRule::builtin("conjunctive", 2).unwrap();
        // 5 observation labels over |D| = 2: 32 assignments
        assert!(matches!(
            solvable_by_enumeration(&two_agent_problem(), &rule, 31),
            Err(Error::BudgetExceeded { needed: 32, budget: 31 })
        ));
    }

    #[test]
    fn empty_language_is_solvable() {
        let mut p = two_agent_problem();
        p.language.clear();
        p.legal.clear();
        let rule = FusionRule::builtin("const0", 2).unwrap();
        assert!(solvable_by_enumeration(&p, &rule, 1).unwrap());
    }
}
