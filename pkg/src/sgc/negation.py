"""Complement fluents: an explicit fluent that is true exactly when p is false."""

from __future__ import annotations

from dataclasses import replace
from typing import Iterable

from . import names
from .errors import NameCollision, UnknownFluent
from .model import GroundTask


def complete_negations(
    task: GroundTask, targets: Iterable[str]
) -> tuple[GroundTask, dict[str, str]]:
    """Add a complement for each target and keep it in sync.

    The complement starts true iff the target starts false; every action
    deleting the target adds the complement and every action adding it
    deletes the complement. Complements that already exist are reused, and
    their maintenance is re-applied to all actions, so the call is idempotent.
    """
    order = task.order_key()
    targets = sorted(set(targets), key=order)
    unknown = set(targets) - task.fluent_set
    if unknown:
        raise UnknownFluent(unknown)
    if not targets:
        return task, {}

    table = {p: names.complement(p) for p in targets}
    if len(set(table.values())) != len(table):
        raise NameCollision("two target fluents map to the same complement name")
    for p, q in table.items():
        if q in table:
            raise NameCollision(f"complement of {p!r} is itself a target")

    fresh = [q for q in table.values() if q not in task.fluent_set]
    init = set(task.init)
    for p, q in table.items():
        if q in fresh and p not in task.init:
            init.add(q)

    actions = []
    for a in task.actions:
        add = set(a.add)
        dele = set(a.delete)
        for p, q in table.items():
            if p in a.delete:
                add.add(q)
            if p in a.add:
                dele.add(q)
        if len(add) != len(a.add) or len(dele) != len(a.delete):
            a = replace(a, add=frozenset(add), delete=frozenset(dele))
        actions.append(a)

    completed = GroundTask(task.fluents + tuple(fresh), frozenset(init), tuple(actions), task.goal)
    return completed, table
