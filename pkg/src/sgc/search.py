"""Optimal reference solvers.

``solve_min_cost`` is uniform-cost search or A* with h_max over a ground task.
``solve_max_utility_bruteforce`` maximizes net benefit over all action
sequences up to a length bound. Neither is fast; both are exact, which is
what the equivalence checks need.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from typing import Iterator, Sequence

from .amount import format_amount
from .compiler import DECLARATION, compile_task
from .errors import NotAPlan, ResourceLimit
from .lowering import COMPLEMENT
from .model import GroundTask, SoftGoalTask, plan_cost, plan_utility, state_utility
from .planmap import strip_plan

UCS = "ucs"
ASTAR_HMAX = "astar-hmax"
ALGORITHMS = (UCS, ASTAR_HMAX)
INF = float("inf")


@dataclass(frozen=True)
class SearchResult:
    plan: tuple[str, ...] | None
    value: int | None
    expanded: int
    optimal: bool

    def to_dict(self) -> dict:
        return {
            "plan": list(self.plan) if self.plan is not None else None,
            "value": format_amount(self.value) if self.value is not None else None,
            "expanded": self.expanded,
            "optimal": self.optimal,
        }


class HMax:
    """h_max: cost of the most expensive goal fluent under delete relaxation."""

    def __init__(self, task: GroundTask, goal=None):
        self.goal = frozenset(task.goal if goal is None else goal)
        self.actions = task.actions
        self.by_pre: dict[str, list[int]] = {}
        self.no_pre = []
        for i, a in enumerate(task.actions):
            if not a.pre:
                self.no_pre.append(i)
            for f in a.pre:
                self.by_pre.setdefault(f, []).append(i)

    def __call__(self, state) -> float:
        if not self.goal:
            return 0
        cost: dict[str, float] = {}
        heap = [(0, f) for f in state]
        waiting = [len(a.pre) for a in self.actions]
        for i in self.no_pre:
            for f in self.actions[i].add:
                heap.append((self.actions[i].cost, f))
        heapq.heapify(heap)
        remaining = set(self.goal)
        worst = 0
        while heap:
            c, f = heapq.heappop(heap)
            if f in cost:
                continue
            cost[f] = c
            if f in remaining:
                remaining.discard(f)
                worst = c
                if not remaining:
                    return worst
            for i in self.by_pre.get(f, ()):
                waiting[i] -= 1
                if waiting[i] == 0:
                    a = self.actions[i]
                    for g in a.add:
                        if g not in cost:
                            heapq.heappush(heap, (c + a.cost, g))
        return INF


def solve_min_cost(
    task: GroundTask,
    algo: str = UCS,
    max_nodes: int | None = None,
    max_seconds: float | None = None,
    start=None,
) -> SearchResult:
    """Cheapest plan, or ``plan=None`` when the goal is unreachable.

    States are deduplicated on ``(g, plan)`` so zero-cost cycles terminate;
    among equally cheap plans the one with the smallest ``(g, names)`` key
    reaching each state wins, which fixes the output deterministically.
    """
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    h = HMax(task) if algo == ASTAR_HMAX else (lambda s: 0)
    init = task.init if start is None else frozenset(start)
    goal = task.goal
    deadline = time.monotonic() + max_seconds if max_seconds else None
    actions = sorted(task.actions, key=lambda a: a.name)

    h0 = h(init)
    if h0 == INF:
        return SearchResult(None, None, 0, True)
    best = {init: (0, ())}
    heap = [(h0, 0, (), init)]
    expanded = 0
    while heap:
        f, g, path, state = heapq.heappop(heap)
        if best[state] != (g, path):
            continue
        if goal <= state:
            return SearchResult(path, plan_cost(task, path) if start is None else g, expanded, True)
        expanded += 1
        if max_nodes is not None and expanded > max_nodes:
            raise ResourceLimit(f"node limit {max_nodes} exceeded", expanded)
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceLimit(f"time limit {max_seconds}s exceeded", expanded)
        for a in actions:
            if not a.applicable(state):
                continue
            nxt = (state - a.delete) | a.add
            key = (g + a.cost, path + (a.name,))
            old = best.get(nxt)
            if old is not None and old <= key:
                continue
            hn = h(nxt)
            if hn == INF:
                continue
            best[nxt] = key
            heapq.heappush(heap, (key[0] + hn, key[0], key[1], nxt))
    return SearchResult(None, None, expanded, True)


def successors(task: GroundTask, state):
    for a in task.actions:
        if a.applicable(state):
            yield a, (state - a.delete) | a.add


def reachable_states(task: GroundTask, limit: int = 100_000) -> set:
    seen = {task.init}
    frontier = [task.init]
    while frontier:
        s = frontier.pop()
        for _, t in successors(task, s):
            if t not in seen:
                seen.add(t)
                if len(seen) > limit:
                    raise ResourceLimit(f"more than {limit} reachable states")
                frontier.append(t)
    return seen


def sound_length_bound(task: GroundTask) -> int:
    """A length bound that covers some optimal plan.

    With non-negative costs an optimal plan never needs to revisit a state,
    so it has at most one step fewer than there are reachable states.
    """
    return max(len(reachable_states(task)) - 1, 0)


def enumerate_sequences(task: GroundTask, max_len: int, start=None) -> Iterator[tuple[str, ...]]:
    """Every applicable action sequence of length at most ``max_len``, empty first."""
    init = task.init if start is None else frozenset(start)
    stack = [(init, ())]
    while stack:
        state, path = stack.pop()
        yield path
        if len(path) < max_len:
            for a, nxt in reversed(list(successors(task, state))):
                stack.append((nxt, path + (a.name,)))


def solve_max_utility_bruteforce(task: SoftGoalTask, max_len: int = 8) -> SearchResult:
    """Best net benefit over all sequences of at most ``max_len`` steps.

    Runs a length-layered relaxation: after k layers every state holds the
    cheapest way to reach it in at most k steps, which equals exhaustive
    enumeration but skips dominated sequences. ``optimal`` is relative to
    the bound.
    """
    base = task.base
    best = {base.init: (0, 0, ())}
    frontier = dict(best)
    expanded = 0
    for _ in range(max_len):
        nxt = {}
        for state, (cost, length, path) in frontier.items():
            expanded += 1
            for a, s2 in successors(base, state):
                key = (cost + a.cost, length + 1, path + (a.name,))
                old = best.get(s2)
                if old is None or key < old:
                    best[s2] = key
                    nxt[s2] = key
        if not nxt:
            break
        frontier = nxt

    winner = None
    for state, (cost, length, path) in best.items():
        if not base.goal <= state:
            continue
        value = state_utility(task, state) - cost
        key = (-value, length, path)
        if winner is None or key < winner:
            winner = key
    if winner is None:
        return SearchResult(None, None, expanded, True)
    plan = winner[2]
    return SearchResult(plan, plan_utility(task, plan), expanded, True)


def max_utility_by_enumeration(task: SoftGoalTask, max_len: int) -> int | None:
    """Plain enumeration; slow, used to cross-check the layered solver."""
    values = []
    for path in enumerate_sequences(task.base, max_len):
        try:
            values.append(plan_utility(task, path))
        except NotAPlan:
            pass
    return max(values) if values else None


@dataclass(frozen=True)
class EquivalenceCheck:
    u_star: int | None
    c_star: int | None
    alpha: int
    holds: bool
    plan: tuple[str, ...] | None = None
    compiled_plan: tuple[str, ...] | None = None


def check_equivalence(
    task: SoftGoalTask,
    max_len: int | None = None,
    algo: str = UCS,
    ordering: str = DECLARATION,
    negation_mode: str = COMPLEMENT,
    max_nodes: int | None = None,
) -> EquivalenceCheck:
    """Best utility by brute force versus ``constant - min cost`` of the compilation.

    Also strips the compiled optimum back to a plan of the original task and
    checks it attains the brute-force utility.
    """
    if max_len is None:
        max_len = sound_length_bound(task.base)
    brute = solve_max_utility_bruteforce(task, max_len)
    compiled, report = compile_task(task, ordering, negation_mode)
    found = solve_min_cost(compiled, algo, max_nodes=max_nodes)
    k = report.utility_constant
    if brute.plan is None or found.plan is None:
        holds = brute.plan is None and found.plan is None
        return EquivalenceCheck(brute.value, found.value, k, holds, brute.plan, found.plan)
    stripped = strip_plan(report, found.plan)
    try:
        attained = plan_utility(task, stripped)
    except NotAPlan:
        attained = None
    holds = brute.value == k - found.value and attained == brute.value
    return EquivalenceCheck(brute.value, found.value, k, holds, brute.plan, found.plan)
