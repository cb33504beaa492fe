"""Map plans between a soft-goal task and its compilation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .compiler import CompilationReport
from .errors import HardGoalUnsatisfied, InapplicableAt, NotAPlan
from .model import GroundTask, SoftGoalTask, plan_cost, plan_utility, run


@dataclass(frozen=True)
class CostIdentity:
    u: int
    c_prime: int
    alpha: int
    holds: bool


def _require_plan(task: SoftGoalTask, plan: Sequence[str]) -> None:
    try:
        final = run(task.base, plan).final
    except InapplicableAt as e:
        raise NotAPlan(f"not applicable: {e}") from None
    if not task.base.goal <= final:
        raise HardGoalUnsatisfied(task.base.goal - final)


def extend_plan(
    task: SoftGoalTask, compiled: GroundTask, report: CompilationReport, plan: Sequence[str]
) -> tuple[str, ...]:
    """Append ``end``, the evaluation actions that fire, and one collect/forgo per soft goal."""
    _require_plan(task, plan)
    steps = list(plan) + [report.end_action]
    state = run(compiled, steps).final
    # formula goals: fire evaluation actions until nothing new is derived
    evaluation = [compiled.action(n) for n in report.evaluation_actions]
    progress = True
    while progress:
        progress = False
        for a in evaluation:
            if a.applicable(state) and not a.add <= state:
                state = (state - a.delete) | a.add
                steps.append(a.name)
                progress = True
    for p in report.ordering:
        steps.append(report.collect_action(p) if p in state else report.forgo_action(p))
    return tuple(steps)


def strip_plan(report: CompilationReport, plan: Sequence[str]) -> tuple[str, ...]:
    generated = set(report.generated_actions)
    return tuple(step for step in plan if step not in generated)


def check_cost_identity(
    task: SoftGoalTask, compiled: GroundTask, report: CompilationReport, plan: Sequence[str]
) -> CostIdentity:
    """Compare the compiled cost of the extension with ``constant - utility``."""
    u = plan_utility(task, plan)
    c_prime = plan_cost(compiled, extend_plan(task, compiled, report, plan))
    k = report.utility_constant
    return CostIdentity(u=u, c_prime=c_prime, alpha=k, holds=c_prime == k - u)
