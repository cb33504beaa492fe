from dataclasses import replace

import pytest

from conftest import M, tiny
from sgc.compiler import compile_task
from sgc.errors import ZeroOrNegativeUtility, ZeroOrPositiveUtility
from sgc.logic import Formula
from sgc.lowering import NEGATIVE_PRECONDITIONS, lower_all, lower_negative, lower_positive
from sgc.model import GroundAction, plan_cost, plan_utility
from sgc.planmap import extend_plan
from sgc.search import check_equivalence, max_utility_by_enumeration

END = "sgc--end-mode"


def with_formula(formula, u, base=None):
    task = base or tiny()
    return replace(task, formula_utilities=((formula, u),))


def test_dnf_term_becomes_one_action():
    lowered = lower_positive(tiny(), Formula.dnf([["p", "q"]]), 4 * M)
    assert lowered.fluent_utilities["sgc--formula-0"] == 4 * M
    assert lowered.staged_actions == (
        GroundAction("sgc--eval-0-0", {"p", "q", END}, {"sgc--formula-0"}, cost=0),
    )
    compiled, _ = compile_task(with_formula(Formula.dnf([["p", "q"]]), 4 * M))
    action = compiled.action("sgc--eval-0-0")
    assert action.delete == {"sgc--not-sgc--formula-0"}
    assert action.cost == 0


def test_cnf_clauses_get_fluents():
    lowered = lower_positive(tiny(), Formula.cnf([["p"], ["q"]]), 4 * M)
    assert lowered.base.fluents[-3:] == (
        "sgc--formula-0-clause-0",
        "sgc--formula-0-clause-1",
        "sgc--formula-0",
    )
    assert set(lowered.staged_actions) == {
        GroundAction("sgc--eval-0-c0-0", {"p", END}, {"sgc--formula-0-clause-0"}),
        GroundAction("sgc--eval-0-c1-0", {"q", END}, {"sgc--formula-0-clause-1"}),
        GroundAction(
            "sgc--eval-0", {"sgc--formula-0-clause-0", "sgc--formula-0-clause-1", END}, {"sgc--formula-0"}
        ),
    }


def test_negated_literals_use_complements():
    lowered = lower_positive(tiny(), Formula.dnf([["-p"]]), M)
    assert "sgc--not-p" in lowered.base.fluents
    assert lowered.staged_actions[0].pre == {"sgc--not-p", END}


def test_negated_literals_as_negative_preconditions():
    lowered = lower_positive(tiny(), Formula.dnf([["-p"]]), M, NEGATIVE_PRECONDITIONS)
    assert "sgc--not-p" not in lowered.base.fluents
    assert lowered.staged_actions[0].neg_pre == {"p"}


def test_sign_checks():
    with pytest.raises(ZeroOrNegativeUtility):
        lower_positive(tiny(), Formula.literal("p"), 0)
    with pytest.raises(ZeroOrPositiveUtility):
        lower_negative(tiny(), Formula.literal("p"), M)


def test_negative_lowers_the_negation():
    f = Formula.dnf([["p", "q"]])
    neg = lower_negative(tiny(), f, -10 * M)
    pos = lower_positive(tiny(), Formula.cnf([["-p", "-q"]]), 10 * M)
    assert replace(neg, penalty_offset=0) == pos
    assert neg.penalty_offset == 10 * M


def test_penalty_example_on_tiny():
    task = with_formula(Formula.dnf([["p", "q"]]), -10 * M)
    assert plan_utility(task, ("a1", "a2")) == -5 * M
    compiled, report = compile_task(task)
    extended = extend_plan(task, compiled, report, ("a1", "a2"))
    assert report.alpha == 18 * M
    assert report.utility_constant == 8 * M
    assert report.utility_constant - plan_cost(compiled, extended) == -5 * M


def test_literal_formula_matches_plain_soft_goal():
    direct = tiny(utilities={"p": 4 * M})
    via_formula = with_formula(Formula.literal("p"), 4 * M, tiny(utilities={}))
    for max_len in range(6):
        assert max_utility_by_enumeration(direct, max_len) == max_utility_by_enumeration(
            via_formula, max_len
        )
    assert check_equivalence(via_formula).u_star == check_equivalence(direct).u_star


def test_opposite_signs_cancel():
    f = Formula.cnf([["p", "-q"], ["r"]])
    task = replace(tiny(), formula_utilities=((f, 6 * M), (f, -6 * M)))
    plain = tiny()
    assert check_equivalence(task).u_star == check_equivalence(plain).u_star
    assert check_equivalence(task).holds


def test_lower_all_names_in_order():
    f0, f1 = Formula.literal("q", False), Formula.dnf([["p"], ["r"]])
    task = replace(tiny(), formula_utilities=((f0, M), (f1, -2 * M)))
    lowered = lower_all(task)
    assert lowered.formula_utilities == ()
    assert list(lowered.fluent_utilities) == ["p", "q", "sgc--formula-0", "sgc--formula-1"]
    assert lowered.penalty_offset == 2 * M


def test_lower_all_without_formulas_is_identity():
    assert lower_all(tiny()) == tiny()


def test_evaluation_actions_only_touch_generated_fluents():
    f = Formula.cnf([["p", "-q"], ["-r"]])
    compiled, report = compile_task(with_formula(f, 2 * M))
    for name in report.evaluation_actions:
        a = compiled.action(name)
        assert a.cost == 0
        assert END in a.pre
        assert all(x.startswith("sgc--") for x in a.add | a.delete)
