"""Compile soft goals away.

Every soft goal ``p`` gets a hard goal ``done-p`` reachable in an end phase
either by ``collect-p`` (free, needs ``p``) or ``forgo-p`` (costs ``u(p)``,
needs not-``p``). Original actions run only before ``end``; the end phase
only runs collect/forgo and formula evaluation actions. A plan of the
compiled task costs ``alpha - utility`` of the plan it extends.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace

from . import names
from .amount import amount, format_amount
from .errors import FormulaNotLowered, InvalidTask, NameCollision, ParseError
from .lowering import COMPLEMENT, NEGATION_MODES, lower_all
from .model import GroundAction, GroundTask, SoftGoalTask
from .negation import complete_negations

DECLARATION = "declaration"
UTILITY_DESC = "utility-desc"
NONE = "none"
ORDERING_POLICIES = (DECLARATION, UTILITY_DESC, NONE)


@dataclass(frozen=True)
class CompilationReport:
    """Everything needed to map plans back and forth without the tasks."""

    alpha: int
    ordering: tuple[str, ...]
    ordering_policy: str
    negation_mode: str
    generated_actions: tuple[str, ...]
    evaluation_actions: tuple[str, ...] = ()
    name_tables: dict = field(default_factory=dict)
    penalty_offset: int = 0
    fingerprints: dict = field(default_factory=dict)

    @property
    def utility_constant(self) -> int:
        """The constant ``k`` with ``compiled cost = k - original utility``.

        Equals ``alpha`` unless penalties were turned into rewards on negated
        formulas, each of which inflates ``alpha`` by the penalty size.
        """
        return self.alpha - self.penalty_offset

    @property
    def end_action(self) -> str:
        return names.END_ACTION

    def collect_action(self, p: str) -> str:
        return self.name_tables["collect"][p]

    def forgo_action(self, p: str) -> str:
        return self.name_tables["forgo"][p]

    def to_json(self) -> str:
        doc = {
            "alpha": format_amount(self.alpha),
            "penalty_offset": format_amount(self.penalty_offset),
            "ordering": list(self.ordering),
            "ordering_policy": self.ordering_policy,
            "negation_mode": self.negation_mode,
            "generated_actions": list(self.generated_actions),
            "evaluation_actions": list(self.evaluation_actions),
            "name_tables": self.name_tables,
            "fingerprints": self.fingerprints,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CompilationReport":
        try:
            doc = json.loads(text)
            return cls(
                alpha=amount(doc["alpha"]),
                penalty_offset=amount(doc.get("penalty_offset", "0")),
                ordering=tuple(doc["ordering"]),
                ordering_policy=doc.get("ordering_policy", DECLARATION),
                negation_mode=doc.get("negation_mode", COMPLEMENT),
                generated_actions=tuple(doc["generated_actions"]),
                evaluation_actions=tuple(doc.get("evaluation_actions", ())),
                name_tables=doc.get("name_tables", {}),
                fingerprints=doc.get("fingerprints", {}),
            )
        except (ValueError, KeyError, TypeError, AttributeError) as e:
            raise ParseError(f"bad compilation report: {e}") from None


def alpha(task: SoftGoalTask) -> int:
    """Sum of soft goal utilities."""
    return sum(task.fluent_utilities.values())


def ordering_of(task: SoftGoalTask, policy: str = DECLARATION) -> tuple[str, ...]:
    """Order soft goals; lowered formula goals always come after plain ones."""
    if policy not in ORDERING_POLICIES:
        raise InvalidTask(f"unknown ordering policy {policy!r}")
    u = task.fluent_utilities
    plain = [p for p in u if not names.is_formula_goal(p)]
    formulas = [p for p in u if names.is_formula_goal(p)]
    if policy == UTILITY_DESC:
        plain.sort(key=lambda p: (-u[p], p))
        formulas.sort(key=lambda p: (-u[p], p))
    return tuple(plain + formulas)


def _check_collisions(task: SoftGoalTask, goals) -> None:
    fluents = {names.NORMAL_MODE, names.END_MODE}
    acts = {names.END_ACTION}
    for p in goals:
        fluents |= {names.done(p), names.pending(p)}
        acts |= {names.collect(p), names.forgo(p)}
    if len(fluents) != 2 + 2 * len(goals) or len(acts) != 1 + 2 * len(goals):
        raise NameCollision("soft goal names collide after symbol conversion")
    taken = fluents & task.base.fluent_set
    taken |= acts & ({a.name for a in task.base.actions} | {a.name for a in task.staged_actions})
    if taken:
        raise NameCollision(f"reserved names already used: {', '.join(sorted(taken))}")


def compile_softgoals(
    task: SoftGoalTask, ordering: str = DECLARATION, negation_mode: str = COMPLEMENT
) -> tuple[GroundTask, CompilationReport]:
    """Compile a task whose formula utilities have already been lowered."""
    if task.formula_utilities:
        raise FormulaNotLowered("lower formula utilities before compiling")
    if negation_mode not in NEGATION_MODES:
        raise InvalidTask(f"unknown negation mode {negation_mode!r}")
    goals = ordering_of(task, ordering)
    _check_collisions(task, goals)
    base = task.base
    normal, end_mode = names.NORMAL_MODE, names.END_MODE

    gated = tuple(replace(a, pre=a.pre | {normal}) for a in base.actions)
    end = GroundAction(names.END_ACTION, {normal}, {end_mode}, {normal}, 0)
    staged = GroundTask(
        base.fluents + (normal, end_mode),
        base.init | {normal},
        gated + task.staged_actions + (end,),
        base.goal,
    )
    complements: dict[str, str] = {}
    if negation_mode == COMPLEMENT:
        staged, complements = complete_negations(staged, goals)

    done = {p: names.done(p) for p in goals}
    pending = {p: names.pending(p) for p in goals}
    tables = {
        "complements": complements,
        "done": done,
        "pending": pending,
        "collect": {p: names.collect(p) for p in goals},
        "forgo": {p: names.forgo(p) for p in goals},
        "modes": {"normal": normal, "end": end_mode},
        "end_action": names.END_ACTION,
        "formula_goals": [p for p in goals if names.is_formula_goal(p)],
    }

    suffix = []
    previous = None
    for p in goals:
        chain = {done[previous]} if previous is not None and ordering != NONE else set()
        common = {end_mode, pending[p]} | chain
        effect = dict(add={done[p]}, delete={pending[p]})
        suffix.append(GroundAction(tables["collect"][p], common | {p}, cost=0, **effect))
        if negation_mode == COMPLEMENT:
            suffix.append(
                GroundAction(
                    tables["forgo"][p],
                    common | {complements[p]},
                    cost=task.fluent_utilities[p],
                    **effect,
                )
            )
        else:
            suffix.append(
                GroundAction(
                    tables["forgo"][p],
                    common,
                    cost=task.fluent_utilities[p],
                    neg_pre={p},
                    **effect,
                )
            )
        previous = p

    compiled = GroundTask(
        staged.fluents + tuple(done.values()) + tuple(pending.values()),
        staged.init | set(pending.values()),
        staged.actions + tuple(suffix),
        base.goal | set(done.values()),
    )
    evaluation = tuple(a.name for a in task.staged_actions)
    generated = (names.END_ACTION,) + evaluation + tuple(a.name for a in suffix)
    report = CompilationReport(
        alpha=alpha(task),
        ordering=goals,
        ordering_policy=ordering,
        negation_mode=negation_mode,
        generated_actions=generated,
        evaluation_actions=evaluation,
        name_tables=tables,
        penalty_offset=task.penalty_offset,
    )
    return compiled, report


def compile_task(
    task: SoftGoalTask,
    ordering: str = DECLARATION,
    negation_mode: str = COMPLEMENT,
    source_text: str | None = None,
) -> tuple[GroundTask, CompilationReport]:
    """Lower formulas, compile, and fingerprint the input."""
    from .native import write_native

    compiled, report = compile_softgoals(lower_all(task, negation_mode), ordering, negation_mode)
    prints = {"task": hashlib.sha256(write_native(task).encode()).hexdigest()}
    if source_text is not None:
        prints["source"] = hashlib.sha256(source_text.encode()).hexdigest()
    return compiled, replace(report, fingerprints=prints)
