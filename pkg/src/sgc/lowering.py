"""Lower utilities on DNF/CNF formulas to utilities on fresh fluents.

A positive utility on formula A becomes a utility on a new fluent ``p_A``
that zero-cost evaluation actions can add once the end phase has started
and A holds. A penalty on A is first turned into a reward on the negation
of A, which is again DNF or CNF.

Evaluation actions are not part of the lowered task's base: they are kept in
``SoftGoalTask.staged_actions`` and become part of the compiled task only
when :func:`sgc.compiler.compile_softgoals` adds the mode fluents.
"""

from __future__ import annotations

from dataclasses import replace

from . import names
from .errors import InvalidTask, ZeroOrNegativeUtility, ZeroOrPositiveUtility
from .logic import CNF, Formula, negate_formula
from .model import GroundAction, GroundTask, SoftGoalTask
from .negation import complete_negations

COMPLEMENT = "complement"
NEGATIVE_PRECONDITIONS = "negative-preconditions"
NEGATION_MODES = (COMPLEMENT, NEGATIVE_PRECONDITIONS)


def _next_index(task: SoftGoalTask) -> int:
    return sum(1 for f in task.base.fluents if names.is_formula_goal(f))


def lower_positive(
    task: SoftGoalTask, formula: Formula, utility: int, negation_mode: str = COMPLEMENT
) -> SoftGoalTask:
    if utility <= 0:
        raise ZeroOrNegativeUtility(f"positive lowering needs utility > 0, got {utility}")
    if negation_mode not in NEGATION_MODES:
        raise InvalidTask(f"unknown negation mode {negation_mode!r}")

    base = task.base
    negated = {l.fluent for l in formula.literals if not l.positive}
    table: dict[str, str] = {}
    if negated and negation_mode == COMPLEMENT:
        base, table = complete_negations(base, negated)

    def condition(group) -> tuple[set[str], set[str]]:
        pos = {names.END_MODE}
        neg = set()
        for l in group:
            if l.positive:
                pos.add(l.fluent)
            elif table:
                pos.add(table[l.fluent])
            else:
                neg.add(l.fluent)
        return pos, neg

    k = _next_index(task)
    goal = names.formula_goal(k)
    new_fluents = [goal]
    staged = []
    if formula.kind == CNF:
        clause_fluents = []
        for i, clause in enumerate(formula.groups):
            pi = names.formula_clause(k, i)
            clause_fluents.append(pi)
            for j, l in enumerate(sorted(clause)):
                pos, neg = condition([l])
                staged.append(GroundAction(names.eval_clause(k, i, j), pos, {pi}, neg_pre=neg))
        new_fluents = clause_fluents + new_fluents
        staged.append(
            GroundAction(names.eval_conjunction(k), {names.END_MODE, *clause_fluents}, {goal})
        )
    else:
        for i, term in enumerate(formula.as_dnf_terms()):
            pos, neg = condition(term)
            staged.append(GroundAction(names.eval_term(k, i), pos, {goal}, neg_pre=neg))

    base = GroundTask(base.fluents + tuple(new_fluents), base.init, base.actions, base.goal)
    utilities = dict(task.fluent_utilities)
    utilities[goal] = utility
    return replace(
        task,
        base=base,
        fluent_utilities=utilities,
        staged_actions=task.staged_actions + tuple(staged),
    )


def lower_negative(
    task: SoftGoalTask, formula: Formula, utility: int, negation_mode: str = COMPLEMENT
) -> SoftGoalTask:
    """Penalty ``utility < 0`` on A becomes reward ``-utility`` on not-A.

    Achieving not-A now earns ``-utility``, which shifts every plan's utility
    by the same amount; the shift is recorded in ``penalty_offset``.
    """
    if utility >= 0:
        raise ZeroOrPositiveUtility(f"negative lowering needs utility < 0, got {utility}")
    lowered = lower_positive(task, negate_formula(formula), -utility, negation_mode)
    return replace(lowered, penalty_offset=lowered.penalty_offset - utility)


def lower_all(task: SoftGoalTask, negation_mode: str = COMPLEMENT) -> SoftGoalTask:
    """Lower every formula utility in declaration order."""
    entries = task.formula_utilities
    if not entries:
        return task
    out = replace(task, formula_utilities=())
    for formula, utility in entries:
        if utility > 0:
            out = lower_positive(out, formula, utility, negation_mode)
        else:
            out = lower_negative(out, formula, utility, negation_mode)
    return out

