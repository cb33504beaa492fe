"""IPC plan files: one ``(action arg*)`` per line, ``;`` starts a comment."""

from __future__ import annotations

from typing import Sequence

from .amount import format_amount
from .errors import UnknownAction
from .model import GroundTask
from .sexpr import fail, read_all


def parse_plan(text) -> tuple[str, ...]:
    steps = []
    for node in read_all(text):
        if not isinstance(node, list) or not node:
            fail("plan steps are non-empty (action arg*) lists", node)
        if any(isinstance(x, list) for x in node):
            fail("plan step arguments must be symbols", node)
        steps.append(" ".join(node))
    return tuple(steps)


def resolve_plan(task: GroundTask, plan: Sequence[str], aliases: dict | None = None) -> tuple[str, ...]:
    """Map plan steps onto action names of ``task``.

    Steps match exactly, through ``aliases`` (e.g. the PDDL name map of a
    printed ground task), or case-insensitively.
    """
    lowered = {a.name.lower(): a.name for a in task.actions}
    out = []
    for step in plan:
        if aliases and step in aliases:
            step = aliases[step]
        if step in task.action_map:
            out.append(step)
        elif step.lower() in lowered:
            out.append(lowered[step.lower()])
        else:
            raise UnknownAction(step)
    return tuple(out)


def write_plan(plan: Sequence[str], cost: int | None = None) -> str:
    lines = [f"({step})" for step in plan]
    if cost is not None:
        lines.append(f"; cost = {format_amount(cost)}")
    return "".join(line + "\n" for line in lines)
