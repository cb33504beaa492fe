"""Seeded random instances for the cross-oracle checks."""

from __future__ import annotations

import random

from .amount import SCALE
from .logic import CNF, DNF, LITERAL, Formula, Literal
from .model import GroundAction, GroundTask, SoftGoalTask, run


def _pick(rng: random.Random, bounds) -> int:
    lo, hi = bounds if isinstance(bounds, tuple) else (bounds, bounds)
    return rng.randint(lo, hi)


def random_task(
    rng: random.Random,
    fluents=(3, 7),
    actions=(2, 8),
    soft=(0, 4),
    max_cost: int = 5,
    max_utility: int = 10,
    hard_goal_prob: float = 0.3,
    fractional: bool = False,
) -> SoftGoalTask:
    """A small task; with ``fractional`` costs and utilities use all six decimals."""
    n = _pick(rng, fluents)
    names = [f"f{i}" for i in range(n)]

    def value(lo: int, hi: int) -> int:
        if fractional:
            return rng.randint(lo * SCALE, hi * SCALE)
        return rng.randint(lo, hi) * SCALE

    init = {f for f in names if rng.random() < 0.4}
    acts = []
    for i in range(_pick(rng, actions)):
        pre = set(rng.sample(names, rng.choice((0, 1, 1, 2, 2))))
        add = set(rng.sample(names, rng.choice((1, 1, 2))))
        candidates = sorted((pre | set(names[:2])) - add)
        dele = set(rng.sample(candidates, min(len(candidates), rng.choice((0, 1, 1, 2)))))
        acts.append(GroundAction(f"a{i}", pre, add, dele, value(0, max_cost)))
    goal = {rng.choice(names)} if rng.random() < hard_goal_prob else set()
    k = min(_pick(rng, soft), n)
    utilities = {p: max(value(1, max_utility), 1) for p in rng.sample(names, k)}
    return SoftGoalTask(GroundTask(tuple(names), frozenset(init), tuple(acts), frozenset(goal)), utilities)


def random_walk(rng: random.Random, task: GroundTask, max_len: int) -> tuple[str, ...]:
    state = task.init
    plan = []
    for _ in range(rng.randint(0, max_len)):
        options = [a for a in task.actions if a.applicable(state)]
        if not options:
            break
        a = rng.choice(options)
        state = (state - a.delete) | a.add
        plan.append(a.name)
    return tuple(plan)


def random_task_and_plan(rng: random.Random, max_len: int = 6, **kw):
    """A task together with a valid plan for it.

    The hard goals are drawn from the final state of a random walk, so the
    walk is a plan by construction.
    """
    task = random_task(rng, hard_goal_prob=0.0, **kw)
    plan = random_walk(rng, task.base, max_len)
    final = run(task.base, plan).final
    goal = frozenset(f for f in sorted(final) if rng.random() < 0.25)
    base = GroundTask(task.base.fluents, task.base.init, task.base.actions, goal)
    return SoftGoalTask(base, task.fluent_utilities), plan


def random_formula(rng: random.Random, fluents, groups=(1, 3), size=(1, 3), kind=None) -> Formula:
    kind = kind or rng.choice((LITERAL, DNF, DNF, CNF, CNF))
    fluents = list(fluents)
    if kind == LITERAL:
        return Formula.literal(rng.choice(fluents), rng.random() < 0.6)
    out = []
    for _ in range(_pick(rng, groups)):
        chosen = rng.sample(fluents, min(_pick(rng, size), len(fluents)))
        out.append([Literal(f, rng.random() < 0.6) for f in chosen])
    return Formula.dnf(out) if kind == DNF else Formula.cnf(out)
