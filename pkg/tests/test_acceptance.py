"""The eight acceptance criteria, each at its stated size and time limit.

A summary line per criterion is printed at the end of the pytest run.
"""

import random
import time

import pytest

from conftest import ACCEPTANCE, M, NATIVE, tiny, parser_crashes, pddl_pairs
from sgc.checks import (
    formula_semantics_suite,
    formula_value_suite,
    ordering_suite,
    correspondence_suite,
    cost_identity_suite,
    optimality_suite,
)
from sgc.compiler import compile_task
from sgc.generate import random_formula, random_task
from sgc.native import read_native, write_native
from sgc.pddl import parse_domain, parse_problem, print_task


def record(n: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[n] = (passed, detail)
    print(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}")
    assert passed, detail


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


@pytest.fixture(scope="module")
def optimality():
    (equiv, nonneg), elapsed = timed(optimality_suite, 404, 100)
    return equiv, nonneg, elapsed


def test_criterion_1_structure():
    (compiled, report), elapsed = timed(compile_task, tiny())
    costs = {a.name: a.cost for a in compiled.actions}
    ok = (
        len(compiled.fluents) == 11
        and len(compiled.actions) == 7
        and len(compiled.goal) == 2
        and report.alpha == 8 * M
        and costs["sgc--forgo-p"] == 3 * M
        and costs["sgc--forgo-q"] == 5 * M
        and costs["sgc--collect-p"] == costs["sgc--collect-q"] == costs["sgc--end"] == 0
        and elapsed < 1
    )
    detail = (
        f"|F'|={len(compiled.fluents)} |O'|={len(compiled.actions)} |G'|={len(compiled.goal)} "
        f"alpha={report.alpha // M} ({elapsed:.3f}s)"
    )
    record(1, ok, detail)


def test_criterion_2_cost_identity():
    result, elapsed = timed(cost_identity_suite, 202, 500)
    record(2, result.ok and result.total == 500 and elapsed < 30,
           f"{result.total - len(result.failures)}/{result.total} pairs ({elapsed:.1f}s) {result.failures[:3]}")


def test_criterion_3_plan_correspondence():
    result, elapsed = timed(correspondence_suite, 303, 200, 5)
    record(3, result.ok and result.total == 200 and elapsed < 120,
           f"{result.total - len(result.failures)}/{result.total} instances ({elapsed:.1f}s) {result.failures[:3]}")


def test_criterion_4_optimality(optimality):
    equiv, _, elapsed = optimality
    record(4, equiv.ok and equiv.total == 100 and elapsed < 300,
           f"{equiv.total - len(equiv.failures)}/{equiv.total} instances ({elapsed:.1f}s) {equiv.failures[:3]}")


def test_criterion_5_formulas():
    start = time.perf_counter()
    semantics = formula_semantics_suite(505, 100)
    values = formula_value_suite(506, 50)
    elapsed = time.perf_counter() - start
    ok = semantics.ok and values.ok and semantics.total == 100 and values.total == 50 and elapsed < 300
    record(5, ok, f"truth tables {semantics.total - len(semantics.failures)}/100, "
                  f"optimal values {values.total - len(values.failures)}/50 ({elapsed:.1f}s) "
                  f"{(semantics.failures + values.failures)[:3]}")


def test_criterion_6_non_negative(optimality):
    _, nonneg, _ = optimality
    # a second, larger population of goal-free instances
    extra = optimality_suite(606, 200)[1]
    ok = nonneg.ok and extra.ok and nonneg.total > 0
    record(6, ok, f"{nonneg.total + extra.total} goal-free instances, "
                  f"{len(nonneg.failures) + len(extra.failures)} negative")


def test_criterion_7_ordering():
    result, elapsed = timed(ordering_suite, 707, 100, 4)
    record(7, result.ok and elapsed < 60,
           f"{result.total - len(result.failures)}/{result.total} instances, m<=3 ({elapsed:.1f}s) "
           f"{result.failures[:3]}")


def test_criterion_7_covers_every_m():
    rng = random.Random(707)
    seen = {len(random_task(rng, soft=(1, 3)).fluent_utilities) for _ in range(100)}
    assert seen == {1, 2, 3}


def _native_identity(seed: int, count: int) -> int:
    rng = random.Random(seed)
    bad = 0
    for path in sorted(NATIVE.glob("*.task")):
        task = read_native(path.read_text())
        bad += read_native(write_native(task)) != task
    for _ in range(count):
        task = random_task(rng, fractional=True)
        if rng.random() < 0.5:
            f = random_formula(rng, task.base.fluents)
            task = type(task)(task.base, task.fluent_utilities, ((f, rng.choice((-1, 1)) * M),))
        text = write_native(task)
        bad += read_native(text) != task or write_native(read_native(text)) != text
    return bad


def test_criterion_8_round_trips():
    start = time.perf_counter()
    pairs = pddl_pairs()
    pddl_bad = 0
    for d_path, p_path in pairs:
        d = parse_domain(d_path.read_text())
        t = parse_problem(p_path.read_text(), d)
        dtext, ptext = print_task(t)
        d2 = parse_domain(dtext)
        pddl_bad += d2 != d or parse_problem(ptext, d2) != t
    native_bad = _native_identity(808, 300)
    crashes = parser_crashes(809, 10_000)
    elapsed = time.perf_counter() - start
    ok = len(pairs) * 2 >= 10 and pddl_bad == 0 and native_bad == 0 and not crashes
    record(8, ok, f"{len(pairs) * 2} PDDL files ({pddl_bad} mismatches), native {native_bad} mismatches, "
                  f"fuzz 10000 inputs {len(crashes)} crashes ({elapsed:.1f}s)")
