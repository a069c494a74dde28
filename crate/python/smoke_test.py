"""Smoke test for the pyfusionmorph extension.

Build and run:

    maturin develop -m crates/py/Cargo.toml
    python python/smoke_test.py
"""

from pathlib import Path

import pyfusionmorph as fm

DATA = Path(__file__).resolve().parents[1] / "data"


def two_agent_problem():
    return fm.ObservationProblem(
        alphabet=["a", "b"],
        language=[["a"], ["b"], ["a", "b"], ["b", "b"]],
        legal=[["b"]],
        observable=[["a"], ["b"]],
    )


def test_check_and_solve():
    p = two_agent_problem()
    assert p.validate() == []
    conj = fm.FusionRule.builtin("conjunctive", 2)
    assert fm.check(p, conj)
    assert not fm.check(p, fm.FusionRule.builtin("const0", 2))
    tables = fm.solve(p, conj)
    assert len(tables) == 2
    assert dict(tables[1])[("b",)] == "1"
    assert fm.solvable_by_enumeration(p, conj)


def test_graphs_and_morphisms():
    p = two_agent_problem()
    src = fm.observation_graph(p)
    dst = fm.decision_graph(fm.FusionRule.builtin("conjunctive", 2))
    assert len(src) == 4 and len(dst) == 4
    assert src.nodes == ["a", "b", "ab", "bb"]
    assert src.edge(0, 2) == [2]
    m = fm.find_morphism(src, dst)
    assert m is not None and fm.is_morphism(src, dst, m)
    assert not fm.is_morphism(src, dst, [0, 0, 0, 0])
    assert src.to_dot().startswith('graph "G" {')


def test_compare():
    r = lambda name: fm.FusionRule.builtin(name, 2)
    assert fm.compare(r("conjunctive"), r("disjunctive")) == "incomparable"
    assert fm.compare(r("cpda"), r("conjunctive")) == "first_strictly_less"
    assert fm.compare(r("conjunctive_cd"), r("conjunctive")) == "equivalent"
    relations, classes, hasse = fm.relation_matrix([r("conjunctive"), r("cpda"), r("conjunctive_cd")])
    assert classes == [[0, 2], [1]]
    assert hasse == [(1, 0)]
    assert relations[1][0] == "first_strictly_less"


def test_d2o():
    problem, bijection = fm.d2o(fm.FusionRule.builtin("conjunctive", 2))
    assert sorted(problem.legal) == [["0_1", "1_1", "0_2", "1_2"]]
    assert len(problem.language) == 4 and len(bijection) == 4
    tagged, _ = fm.d2o(fm.FusionRule.builtin("cpda", 2), encoding="tagged")
    assert len(tagged.language) == 6


def test_custom_rule_and_json():
    majority = fm.FusionRule.from_json((DATA / "majority3.json").read_text())
    assert majority.apply(["0", "1", "1"]) is True
    assert majority.apply(["0", "0", "1"]) is False
    rule = fm.FusionRule(1, ["x", "y"], [["x"], ["y"]], [False, True])
    assert rule.apply(["y"]) is True and rule.apply(["z"]) is None
    p = fm.ObservationProblem.from_json(two_agent_problem().to_json())
    assert p.language == two_agent_problem().language


def test_control_reduction():
    c = fm.ControlProblem.from_json((DATA / "gamma_control.json").read_text())
    assert c.is_controllable()
    [(event, agents, problem)] = c.reduce()
    assert event == "γ" and agents == [1, 2]
    assert problem.language == [["a"], ["b"]] and problem.legal == [["a"]]
    bad = fm.ControlProblem.from_json((DATA / "uncontrollable.json").read_text())
    assert bad.controllability_witness() == ([], "u")
    try:
        bad.reduce()
    except ValueError:
        pass
    else:
        raise AssertionError("reduce should refuse an uncontrollable problem")


def test_errors():
    try:
        fm.FusionRule.builtin("nosuch", 2)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown rule accepted")
    src = fm.decision_graph(fm.FusionRule.builtin("conjunctive", 2))
    dst = fm.decision_graph(fm.FusionRule.builtin("disjunctive", 2))
    try:
        fm.find_morphism(src, dst, budget=1)
    except fm.BudgetExceeded:
        pass
    else:
        raise AssertionError("budget not enforced")


if __name__ == "__main__":
    tests = [(name, fn) for name, fn in sorted(globals().items()) if name.startswith("test_")]
    for name, fn in tests:
        fn()
        print(f"ok  {name}")
    print(f"{len(tests)} passed")
