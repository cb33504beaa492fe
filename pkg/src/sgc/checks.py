"""Seeded suites that machine-check the compilation's correctness claims.

Each suite returns a :class:`SuiteResult`; the CLI ``check`` command and the
acceptance tests both run them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from itertools import product

from . import names
from .compiler import DECLARATION, NONE, compile_task
from .generate import random_formula, random_task, random_task_and_plan
from .lowering import COMPLEMENT
from .model import GroundTask, SoftGoalTask, is_plan, run
from .planmap import check_cost_identity, extend_plan, strip_plan
from .search import check_equivalence, enumerate_sequences, successors


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, passed: bool, detail: str) -> None:
        self.total += 1
        if not passed:
            self.failures.append(detail)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name:<28} {self.total - len(self.failures):>6}/{self.total:<6} {status}"


def plans_of(task: GroundTask, max_len: int):
    """Applicable sequences of length <= max_len that reach the goal."""
    for path in enumerate_sequences(task, max_len):
        if task.goal <= run(task, path).final:
            yield path


def compiled_plans(compiled: GroundTask, report, max_len: int):
    """Plans of a compiled task up to ``max_len`` steps.

    Branches are cut when the remaining budget cannot cover ``end`` plus one
    collect/forgo per unfinished soft goal.
    """
    done = list(report.name_tables["done"].values())
    normal = names.NORMAL_MODE
    stack = [(compiled.init, ())]
    while stack:
        state, path = stack.pop()
        if compiled.goal <= state:
            yield path
        open_goals = sum(1 for d in done if d not in state)
        need = open_goals + (1 if normal in state and open_goals else 0)
        if len(path) + max(need, 1) > max_len:
            continue
        for a, nxt in successors(compiled, state):
            stack.append((nxt, path + (a.name,)))


def plan_shape_ok(plan, report) -> bool:
    """``<original..., end, one collect or forgo per soft goal>``.

    Without soft goals ``end`` is optional.
    """
    generated = set(report.generated_actions)
    if report.end_action not in plan:
        return not report.ordering and not any(step in generated for step in plan)
    cut = plan.index(report.end_action)
    if any(step in generated for step in plan[:cut]):
        return False
    tail = [s for s in plan[cut + 1:] if s not in set(report.evaluation_actions)]
    if any(s not in generated for s in plan[cut + 1:]):
        return False
    per_goal = []
    for p in report.ordering:
        hits = [s for s in tail if s in (report.collect_action(p), report.forgo_action(p))]
        per_goal.append(len(hits))
    return per_goal == [1] * len(report.ordering) and len(tail) == len(report.ordering)


def cost_identity_suite(seed: int, count: int = 500) -> SuiteResult:
    """Compiled cost of each extension equals the constant minus the utility."""
    rng = random.Random(seed)
    result = SuiteResult("cost identity")
    for i in range(count):
        task, plan = random_task_and_plan(rng, fractional=(i % 2 == 1))
        compiled, report = compile_task(task)
        # independent route: cost and utility recomputed from the raw data
        final = run(task.base, plan).final
        u = sum(v for p, v in task.fluent_utilities.items() if p in final)
        u -= sum(task.base.action(s).cost for s in plan)
        check = check_cost_identity(task, compiled, report, plan)
        ok = check.holds and check.u == u and check.alpha == sum(task.fluent_utilities.values())
        result.record(ok, f"instance {i}: u={check.u} c'={check.c_prime} alpha={check.alpha}")
    return result


def correspondence_suite(seed: int, count: int = 200, max_len: int = 5) -> SuiteResult:
    """Plans extend to compiled plans and compiled plans strip to plans."""
    rng = random.Random(seed)
    result = SuiteResult("plan correspondence")
    for i in range(count):
        task = random_task(rng)
        compiled, report = compile_task(task)
        m = len(report.ordering)
        ok = True
        for path in enumerate_sequences(task.base, max_len):
            if is_plan(task.base, path):
                ok &= is_plan(compiled, extend_plan(task, compiled, report, path))
            else:
                # the same construction applied to a non-plan must not be a compiled plan
                ok &= not is_plan(compiled, _raw_extension(compiled, report, path))
        for path in compiled_plans(compiled, report, max_len + m + 1):
            ok &= is_plan(task.base, strip_plan(report, path)) and plan_shape_ok(path, report)
        result.record(ok, f"instance {i}")
    return result


def _raw_extension(compiled, report, path):
    steps = tuple(path) + (report.end_action,)
    state = run(compiled, steps).final
    return steps + tuple(
        report.collect_action(p) if p in state else report.forgo_action(p) for p in report.ordering
    )


def optimality_suite(seed: int, count: int = 100, algo: str = "ucs") -> tuple[SuiteResult, SuiteResult]:
    """Brute-force optimum of P against min cost of the compilation; non-negativity."""
    rng = random.Random(seed)
    equiv = SuiteResult(f"optimal value ({algo})")
    nonneg = SuiteResult("non-negative optimum")
    for i in range(count):
        task = random_task(rng)
        check = check_equivalence(task, algo=algo)
        equiv.record(check.holds, f"instance {i}: u*={check.u_star} c*={check.c_star} alpha={check.alpha}")
        if not task.base.goal:
            nonneg.record(
                check.c_star is not None and check.alpha - check.c_star >= 0,
                f"instance {i}: alpha={check.alpha} c*={check.c_star}",
            )
    return equiv, nonneg


def extension_count(compiled: GroundTask, report, plan) -> int:
    """Number of end-phase suffixes that turn ``plan`` into a compiled plan."""
    generated = set(report.generated_actions)
    suffix_actions = [a for a in compiled.actions if a.name in generated]
    start = run(compiled, plan).final
    depth = len(report.ordering) + 1
    count = 0
    stack = [(start, 0)]
    while stack:
        state, n = stack.pop()
        if n == depth:
            count += compiled.goal <= state
            continue
        for a in suffix_actions:
            if a.applicable(state):
                stack.append(((state - a.delete) | a.add, n + 1))
    return count


def ordering_suite(seed: int, count: int = 60, max_len: int = 4) -> SuiteResult:
    """Chained ordering leaves one extension per plan; no chain leaves m! of them."""
    rng = random.Random(seed)
    result = SuiteResult("ordering extensions")
    for i in range(count):
        task = random_task(rng, soft=(1, 3))
        chained, chained_report = compile_task(task, DECLARATION)
        free, free_report = compile_task(task, NONE)
        m = len(chained_report.ordering)
        ok = True
        for path in plans_of(task.base, max_len):
            ok &= extension_count(chained, chained_report, path) == 1
            ok &= extension_count(free, free_report, path) == math.factorial(m)
        result.record(ok, f"instance {i} (m={m})")
    return result


def _assignment_task(fluents, state, formula, utility) -> SoftGoalTask:
    base = GroundTask(tuple(fluents), frozenset(state), ())
    return SoftGoalTask(base, {}, ((formula, utility),))


def formula_semantics_suite(seed: int, count: int = 100, negation_mode: str = COMPLEMENT) -> SuiteResult:
    """p_A is derivable in the end phase exactly in the states satisfying A."""
    rng = random.Random(seed)
    result = SuiteResult("formula derivability")
    for i in range(count):
        fluents = [f"f{j}" for j in range(rng.randint(1, 5))]
        formula = random_formula(rng, fluents)
        ok = True
        for bits in product((False, True), repeat=len(fluents)):
            state = {f for f, b in zip(fluents, bits) if b}
            task = _assignment_task(fluents, state, formula, 1)
            compiled, report = compile_task(task, negation_mode=negation_mode)
            goal = report.name_tables["formula_goals"][0]
            derivable = goal in _end_phase_closure(compiled, report)
            ok &= derivable == formula.holds(state)
        result.record(ok, f"formula {i}: {formula}")
    return result


def _end_phase_closure(compiled: GroundTask, report) -> set:
    """Every fluent true in some state reachable by evaluation actions after ``end``."""
    start = run(compiled, (report.end_action,)).final
    evaluation = [compiled.action(n) for n in report.evaluation_actions]
    seen = {start}
    frontier = [start]
    while frontier:
        s = frontier.pop()
        for a in evaluation:
            if a.applicable(s):
                t = (s - a.delete) | a.add
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
    return set().union(*seen)


def formula_value_suite(seed: int, count: int = 50, negation_mode: str = COMPLEMENT) -> SuiteResult:
    """Optimal value through the compiled pipeline equals brute force with formula terms."""
    rng = random.Random(seed)
    result = SuiteResult("formula optimal value")
    for i in range(count):
        task = random_task(rng, fluents=(3, 5), actions=(2, 6), soft=(0, 2))
        formula = random_formula(rng, task.base.fluents)
        u = rng.choice((-1, 1)) * rng.randint(1, 10) * 1_000_000
        task = replace(task, formula_utilities=((formula, u),))
        check = check_equivalence(task, negation_mode=negation_mode)
        result.record(check.holds, f"task {i}: {formula} u={u} u*={check.u_star} c*={check.c_star}")
    return result


def run_checks(seed: int, instances: int, max_len: int = 5) -> list[SuiteResult]:
    """The suites behind ``sgc check``."""
    equiv, nonneg = optimality_suite(seed + 2, instances)
    return [
        correspondence_suite(seed, instances, max_len),
        cost_identity_suite(seed + 1, instances),
        equiv,
        nonneg,
    ]

