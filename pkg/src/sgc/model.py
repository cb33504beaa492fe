"""Grounded STRIPS tasks with action costs and soft goals, and their semantics.

States are frozensets of fluent names. Plans are tuples of action names.
Costs and utilities are integer micro-units (see :mod:`sgc.amount`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    HardGoalUnsatisfied,
    InapplicableAt,
    InvalidTask,
    InvalidUtility,
    NegativeCost,
    PreconditionViolation,
    UnknownAction,
    UnknownFluent,
)
from .logic import Formula

RESERVED_PREFIX = "sgc--"

State = frozenset
Plan = tuple


@dataclass(frozen=True)
class GroundAction:
    name: str
    pre: frozenset[str] = frozenset()
    add: frozenset[str] = frozenset()
    delete: frozenset[str] = frozenset()
    cost: int = 0
    # fluents that must be false; only produced by the negative-preconditions output mode
    neg_pre: frozenset[str] = frozenset()

    def __post_init__(self):
        for attr in ("pre", "add", "delete", "neg_pre"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        if not self.name:
            raise InvalidTask("action name must be nonempty")
        if not isinstance(self.cost, int) or isinstance(self.cost, bool):
            raise InvalidTask(f"{self.name}: cost must be integer micro-units")
        if self.cost < 0:
            raise NegativeCost(f"{self.name}: negative cost")
        both = self.add & self.delete
        if both:
            raise InvalidTask(f"{self.name}: adds and deletes {sorted(both)}")
        clash = self.pre & self.neg_pre
        if clash:
            raise InvalidTask(f"{self.name}: requires {sorted(clash)} both true and false")

    @property
    def fluents(self) -> frozenset[str]:
        return self.pre | self.add | self.delete | self.neg_pre

    def missing(self, state) -> frozenset[str]:
        """Unmet preconditions; negative ones are reported as ``not <p>``."""
        gone = self.pre - state
        bad = self.neg_pre & state
        if not bad:
            return gone
        return gone | {f"not {p}" for p in bad}

    def applicable(self, state) -> bool:
        return self.pre <= state and not (self.neg_pre & state)


@dataclass(frozen=True)
class GroundTask:
    fluents: tuple[str, ...]
    init: frozenset[str]
    actions: tuple[GroundAction, ...]
    goal: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "fluents", tuple(self.fluents))
        object.__setattr__(self, "init", frozenset(self.init))
        object.__setattr__(self, "goal", frozenset(self.goal))
        object.__setattr__(self, "actions", tuple(self.actions))
        if any(not f for f in self.fluents):
            raise InvalidTask("empty fluent name")
        known = frozenset(self.fluents)
        if len(known) != len(self.fluents):
            raise InvalidTask("duplicate fluent names")
        unknown = (self.init | self.goal) - known
        for a in self.actions:
            unknown |= a.fluents - known
        if unknown:
            raise UnknownFluent(unknown)
        names = [a.name for a in self.actions]
        if len(set(names)) != len(names):
            raise InvalidTask("duplicate action names")

    @cached_property
    def fluent_set(self) -> frozenset[str]:
        return frozenset(self.fluents)

    @cached_property
    def action_map(self) -> dict[str, GroundAction]:
        return {a.name: a for a in self.actions}

    def action(self, name: str) -> GroundAction:
        try:
            return self.action_map[name]
        except KeyError:
            raise UnknownAction(name) from None

    def order_key(self):
        """Sort key putting fluents in declaration order."""
        index = {f: i for i, f in enumerate(self.fluents)}
        return lambda f: index.get(f, len(index))


@dataclass(frozen=True)
class SoftGoalTask:
    """A ground task plus utilities.

    ``fluent_utilities`` keeps declaration order (it drives the default soft
    goal ordering). ``staged_actions`` and ``penalty_offset`` are populated by
    formula lowering and are empty on user-built tasks.
    """

    base: GroundTask
    fluent_utilities: Mapping[str, int] = field(default_factory=dict)
    formula_utilities: tuple[tuple[Formula, int], ...] = ()
    staged_actions: tuple[GroundAction, ...] = ()
    penalty_offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "fluent_utilities", dict(self.fluent_utilities))
        object.__setattr__(
            self, "formula_utilities", tuple((f, u) for f, u in self.formula_utilities)
        )
        object.__setattr__(self, "staged_actions", tuple(self.staged_actions))
        unknown = set(self.fluent_utilities) - self.base.fluent_set
        for f, _ in self.formula_utilities:
            unknown |= f.fluents - self.base.fluent_set
        if unknown:
            raise UnknownFluent(unknown)
        for p, u in self.fluent_utilities.items():
            if not isinstance(u, int) or u <= 0:
                raise InvalidUtility(f"soft goal {p!r} needs a strictly positive utility")
        for f, u in self.formula_utilities:
            if not isinstance(u, int) or u == 0:
                raise InvalidUtility(f"formula {f} needs a nonzero utility")

    @property
    def soft_goals(self) -> tuple[str, ...]:
        return tuple(self.fluent_utilities)


@dataclass(frozen=True)
class Trajectory:
    plan: Plan
    states: tuple[frozenset[str], ...]

    @property
    def final(self) -> frozenset[str]:
        return self.states[-1]


def apply(state: frozenset[str], action: GroundAction) -> frozenset[str]:
    """Successor state ``state | add - delete``. Raises on unmet preconditions."""
    if not action.applicable(state):
        raise PreconditionViolation(action.name, action.missing(state))
    return (state - action.delete) | action.add


def run(task: GroundTask, plan: Sequence[str]) -> Trajectory:
    state = task.init
    states = [state]
    for i, name in enumerate(plan):
        a = task.action(name)
        if not a.applicable(state):
            raise InapplicableAt(i, a.missing(state))
        state = (state - a.delete) | a.add
        states.append(state)
    return Trajectory(tuple(plan), tuple(states))


def is_plan(task: GroundTask, plan: Sequence[str]) -> bool:
    try:
        final = run(task, plan).final
    except InapplicableAt:
        return False
    return task.goal <= final


def plan_cost(task: GroundTask, plan: Sequence[str]) -> int:
    run(task, plan)
    return sum(task.action(name).cost for name in plan)


def state_utility(task: SoftGoalTask, state) -> int:
    """Utility earned in a final state, before subtracting plan cost."""
    total = sum(u for p, u in task.fluent_utilities.items() if p in state)
    total += sum(u for f, u in task.formula_utilities if f.holds(state))
    return total


def plan_utility(task: SoftGoalTask, plan: Sequence[str]) -> int:
    """Net benefit: utility of what the final state achieves minus plan cost."""
    traj = run(task.base, plan)
    missing = task.base.goal - traj.final
    if missing:
        raise HardGoalUnsatisfied(missing)
    cost = sum(task.base.action(name).cost for name in plan)
    return state_utility(task, traj.final) - cost


def make_task(
    fluents: Iterable[str],
    init: Iterable[str],
    actions: Iterable[GroundAction],
    goal: Iterable[str] = (),
    utilities: Mapping[str, int] | None = None,
    formulas: Iterable[tuple[Formula, int]] = (),
) -> SoftGoalTask:
    base = GroundTask(tuple(fluents), frozenset(init), tuple(actions), frozenset(goal))
    return SoftGoalTask(base, dict(utilities or {}), tuple(formulas))
