"""Instantiate lifted schemas over typed objects."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .amount import amount
from .errors import UngroundablePreference
from .model import GroundAction, GroundTask, SoftGoalTask
from .negation import complete_negations
from .pddl import OBJECT, LiftedTask


@dataclass
class GroundingIndex:
    atoms: dict[str, str] = field(default_factory=dict)
    actions: dict[tuple[str, tuple[str, ...]], str] = field(default_factory=dict)


def _check_atom(task: LiftedTask, fluent: str, universe) -> None:
    pred, *args = fluent.split()
    arity = task.domain.arity
    if pred not in arity or arity[pred] != len(args) or any(a not in universe for a in args):
        raise UngroundablePreference(f"preference atom ({fluent}) does not exist in the task")


def ground(lifted: LiftedTask, prune: bool = False) -> tuple[SoftGoalTask, GroundingIndex]:
    domain = lifted.domain
    universe = lifted.all_objects()
    by_type: dict[str, list[str]] = {}

    def objects_of(t: str) -> list[str]:
        if t not in by_type:
            by_type[t] = sorted(o for o, ot in universe.items() if domain.is_subtype(ot, t))
        return by_type[t]

    if lifted.metric is None:
        default_cost, use_schema_cost = amount(1), False
    else:
        default_cost, use_schema_cost = 0, lifted.metric.counts_cost

    index = GroundingIndex()
    actions: list[GroundAction] = []
    negative: dict[str, set[str]] = {}
    for schema in sorted(domain.actions, key=lambda s: s.name):
        variables = [v for v, _ in schema.parameters]
        domains = [objects_of(t or OBJECT) for _, t in schema.parameters]
        cost = (schema.cost or 0) if use_schema_cost else default_cost
        for args in product(*domains):
            binding = dict(zip(variables, args))

            def inst(atoms):
                return {" ".join([a[0]] + [binding.get(x, x) for x in a[1:]]) for a in atoms}

            name = " ".join((schema.name,) + args)
            add, dele = inst(schema.add), inst(schema.delete)
            dele -= add  # add wins when an instantiation both adds and deletes
            actions.append(GroundAction(name, inst(schema.pre), add, dele, cost))
            neg = inst(schema.neg_pre)
            if neg:
                negative[name] = neg
            index.actions[(schema.name, args)] = name

    fluents_u, formulas = lifted.soft_goals()
    for p in fluents_u:
        _check_atom(lifted, p, universe)
    for f, _ in formulas:
        for p in f.fluents:
            _check_atom(lifted, p, universe)

    mentioned = set(lifted.init) | set(lifted.goal) | set(fluents_u)
    for f, _ in formulas:
        mentioned |= f.fluents
    for a in actions:
        mentioned |= a.fluents
    for neg in negative.values():
        mentioned |= neg
    fluents = tuple(sorted(mentioned))
    task = GroundTask(fluents, frozenset(lifted.init), tuple(actions), frozenset(lifted.goal))

    if negative:
        targets = set().union(*negative.values())
        task, table = complete_negations(task, targets)
        patched = []
        for a in task.actions:
            if a.name in negative:
                a = GroundAction(a.name, a.pre | {table[p] for p in negative[a.name]},
                                 a.add, a.delete, a.cost)
            patched.append(a)
        task = GroundTask(task.fluents, task.init, tuple(patched), task.goal)

    keep = set(fluents_u) | set(lifted.goal)
    for f, _ in formulas:
        keep |= f.fluents
    if prune:
        task = prune_unreachable(task, keep)

    index.atoms = {f: f for f in task.fluents}
    index.actions = {k: v for k, v in index.actions.items() if v in task.action_map}
    return SoftGoalTask(task, fluents_u, tuple(formulas)), index


def relaxed_reachable(task: GroundTask) -> set[str]:
    """Fluents reachable when delete effects are ignored."""
    reached = set(task.init)
    remaining = list(task.actions)
    changed = True
    while changed:
        changed = False
        rest = []
        for a in remaining:
            if a.pre <= reached:
                if not a.add <= reached:
                    reached |= a.add
                    changed = True
            else:
                rest.append(a)
        remaining = rest
    return reached


def prune_unreachable(task: GroundTask, keep=()) -> GroundTask:
    """Drop actions whose preconditions are unreachable under delete relaxation.

    Fluents in ``keep`` (goals, utility atoms) survive even when unreachable.
    """
    reached = relaxed_reachable(task)
    actions = [a for a in task.actions if a.pre <= reached]
    live = reached | set(keep) | set(task.goal)
    fluents = tuple(f for f in task.fluents if f in live)
    trimmed = [
        a if a.delete <= live else GroundAction(a.name, a.pre, a.add, a.delete & live, a.cost, a.neg_pre)
        for a in actions
    ]
    return GroundTask(fluents, task.init & live, tuple(trimmed), task.goal)
