import random

import pytest

from conftest import tiny
from sgc.checks import (
    compiled_plans,
    extension_count,
    formula_semantics_suite,
    formula_value_suite,
    plan_shape_ok,
    run_checks,
)
from sgc.compiler import NONE, UTILITY_DESC, compile_task
from sgc.generate import random_task, random_task_and_plan
from sgc.lowering import NEGATIVE_PRECONDITIONS
from sgc.model import is_plan
from sgc.search import check_equivalence


def test_tiny_compiled_plans_are_well_formed():
    compiled, report = compile_task(tiny())
    plans = list(compiled_plans(compiled, report, 5))
    assert ("a1", "a2", "sgc--end", "sgc--collect-p", "sgc--collect-q") in plans
    assert ("sgc--end", "sgc--forgo-p", "sgc--forgo-q") in plans
    assert all(is_plan(compiled, p) and plan_shape_ok(p, report) for p in plans)


def test_extension_counts_on_tiny():
    compiled, report = compile_task(tiny())
    free, free_report = compile_task(tiny(), NONE)
    assert extension_count(compiled, report, ("a1",)) == 1
    assert extension_count(free, free_report, ("a1",)) == 2


def test_generated_pairs_are_plans():
    rng = random.Random(1)
    for _ in range(50):
        task, plan = random_task_and_plan(rng)
        assert is_plan(task.base, plan)


def test_formula_suites_with_negative_preconditions():
    assert formula_semantics_suite(21, 40, NEGATIVE_PRECONDITIONS).ok
    assert formula_value_suite(22, 30, NEGATIVE_PRECONDITIONS).ok


@pytest.mark.parametrize("ordering", [UTILITY_DESC, NONE])
@pytest.mark.parametrize("mode", ["complement", NEGATIVE_PRECONDITIONS])
def test_equivalence_under_every_option(ordering, mode):
    rng = random.Random(f"{ordering}/{mode}")
    for _ in range(40):
        task = random_task(rng)
        assert check_equivalence(task, ordering=ordering, negation_mode=mode).holds


def test_fractional_amounts():
    rng = random.Random(5)
    for _ in range(40):
        assert check_equivalence(random_task(rng, fractional=True)).holds


def test_run_checks_is_deterministic():
    a = [r.line() for r in run_checks(3, 15)]
    b = [r.line() for r in run_checks(3, 15)]
    assert a == b and all("PASS" in line for line in a)
