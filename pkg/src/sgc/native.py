"""Native ground task format.

::

    (task
      (fluents p q r)
      (init r)
      (goal)
      (action a1 :pre (r) :add (p) :del () :cost 1)
      (soft (p 3) (q 5))
      (soft-formula :dnf ((p q)) :utility -2))

Multi-token names are written as lists, e.g. ``(at pkg depot)``. Negated
literals inside formulas are ``(not p)``. ``:neg (...)`` lists negative
preconditions and is omitted when empty. A file holding a ``soft`` or
``soft-formula`` clause reads back as a :class:`SoftGoalTask`, otherwise as a
:class:`GroundTask`.
"""

from __future__ import annotations

from .amount import amount, format_amount
from .errors import InvalidTask, NegativeCost
from .logic import CNF, DNF, LITERAL, Formula, Literal
from .model import GroundAction, GroundTask, SoftGoalTask
from .sexpr import SList, expect_list, fail, head, read_one

_ACTION_KEYS = {":pre", ":add", ":del", ":neg", ":cost"}


def _name(node) -> str:
    if isinstance(node, list):
        if not node or any(isinstance(x, list) for x in node):
            fail("a name is a symbol or a flat list of symbols", node)
        if node[0] == "not":
            fail("names may not start with 'not'", node)
        return " ".join(node)
    if node.startswith(":"):
        fail(f"unexpected keyword {node}", node)
    return str(node)


def _names(node) -> list[str]:
    return [_name(x) for x in expect_list(node, "name")]


def _amount(node, what: str) -> int:
    if isinstance(node, list):
        fail(f"expected a number for {what}", node)
    try:
        return amount(str(node))
    except ValueError as e:
        fail(f"{what}: {e}", node)


def _literal(node) -> Literal:
    if isinstance(node, list) and head(node) == "not":
        if len(node) != 2:
            fail("(not X) takes exactly one name", node)
        return Literal(_name(node[1]), False)
    return Literal(_name(node), True)


def _keywords(items, allowed, node) -> dict:
    out = {}
    i = 0
    while i < len(items):
        key = items[i]
        if isinstance(key, list) or key not in allowed:
            fail(f"expected one of {', '.join(sorted(allowed))}", key)
        if key in out:
            fail(f"duplicate {key}", key)
        if i + 1 >= len(items):
            fail(f"{key} needs a value", key)
        out[str(key)] = items[i + 1]
        i += 2
    return out


def _action(node) -> GroundAction:
    if len(node) < 2:
        fail("action needs a name", node)
    name = _name(node[1])
    kw = _keywords(node[2:], _ACTION_KEYS, node)
    cost = _amount(kw[":cost"], "cost") if ":cost" in kw else amount(1)
    if cost < 0:
        n = kw[":cost"]
        raise NegativeCost(f"{n.line}:{n.col}: action {name!r} has negative cost")
    try:
        return GroundAction(
            name,
            pre=_names(kw.get(":pre", SList())),
            add=_names(kw.get(":add", SList())),
            delete=_names(kw.get(":del", SList())),
            neg_pre=_names(kw.get(":neg", SList())),
            cost=cost,
        )
    except InvalidTask as e:
        fail(str(e), node)


def _formula(node) -> tuple[Formula, int]:
    kw = _keywords(node[1:], {":dnf", ":cnf", ":literal", ":utility"}, node)
    shapes = [k for k in (":dnf", ":cnf", ":literal") if k in kw]
    if len(shapes) != 1 or ":utility" not in kw:
        fail("soft-formula needs one of :dnf/:cnf/:literal and :utility", node)
    shape = shapes[0]
    try:
        if shape == ":literal":
            l = _literal(kw[shape])
            f = Formula.literal(l.fluent, l.positive)
        else:
            groups = [
                [_literal(x) for x in expect_list(g, "literal")]
                for g in expect_list(kw[shape], "group")
            ]
            f = Formula.dnf(groups) if shape == ":dnf" else Formula.cnf(groups)
    except InvalidTask as e:
        fail(str(e), node)
    return f, _amount(kw[":utility"], "utility")


def read_native(text) -> GroundTask | SoftGoalTask:
    root = expect_list(read_one(text), "task")
    if head(root) != "task":
        fail("expected (task ...)", root)
    sections: dict[str, list] = {}
    actions, utilities, formulas = [], {}, []
    soft = False
    for item in root[1:]:
        kind = head(item)
        if kind in ("fluents", "init", "goal"):
            if kind in sections:
                fail(f"duplicate ({kind} ...)", item)
            sections[kind] = [_name(x) for x in item[1:]]
        elif kind == "action":
            actions.append(_action(item))
        elif kind == "soft":
            soft = True
            for pair in item[1:]:
                if not isinstance(pair, list) or len(pair) != 2:
                    fail("soft entries are (fluent utility)", pair)
                p = _name(pair[0])
                utilities[p] = utilities.get(p, 0) + _amount(pair[1], "utility")
        elif kind == "soft-formula":
            soft = True
            formulas.append(_formula(item))
        else:
            fail("expected fluents/init/goal/action/soft/soft-formula", item)
    if "fluents" not in sections:
        fail("missing (fluents ...)", root)
    base = GroundTask(
        tuple(sections["fluents"]),
        frozenset(sections.get("init", ())),
        tuple(actions),
        frozenset(sections.get("goal", ())),
    )
    if not soft:
        return base
    return SoftGoalTask(base, utilities, tuple(formulas))


def _w(name: str) -> str:
    return f"({name})" if " " in name else name


def _clause(tag: str, body: str) -> str:
    return f"  ({tag} {body})" if body else f"  ({tag})"


def write_native(task: GroundTask | SoftGoalTask) -> str:
    soft = isinstance(task, SoftGoalTask)
    if soft and (task.staged_actions or task.penalty_offset):
        raise ValueError("lowered tasks have no native form; write the original task")
    base = task.base if soft else task
    key = base.order_key()

    def names(xs) -> str:
        return " ".join(_w(x) for x in sorted(xs, key=key))

    def lit(l: Literal) -> str:
        return _w(l.fluent) if l.positive else f"(not {_w(l.fluent)})"

    def group(g) -> str:
        return "(" + " ".join(lit(l) for l in sorted(g, key=lambda l: (key(l.fluent), l.positive))) + ")"

    lines = ["(task"]
    lines.append(_clause("fluents", " ".join(_w(f) for f in base.fluents)))
    lines.append(_clause("init", names(base.init)))
    lines.append(_clause("goal", names(base.goal)))
    for a in base.actions:
        parts = [f"(action {_w(a.name)}", f":pre ({names(a.pre)})", f":add ({names(a.add)})",
                 f":del ({names(a.delete)})"]
        if a.neg_pre:
            parts.append(f":neg ({names(a.neg_pre)})")
        parts.append(f":cost {format_amount(a.cost)})")
        lines.append("  " + " ".join(parts))
    if soft:
        pairs = " ".join(f"({_w(p)} {format_amount(u)})" for p, u in task.fluent_utilities.items())
        lines.append(_clause("soft", pairs))
        for f, u in task.formula_utilities:
            if f.kind == LITERAL:
                body = f":literal {lit(next(iter(f.groups[0])))}"
            else:
                tag = ":dnf" if f.kind == DNF else ":cnf"
                assert f.kind in (DNF, CNF)
                body = f"{tag} (" + " ".join(group(g) for g in f.groups) + ")"
            lines.append(f"  (soft-formula {body} :utility {format_amount(u)})")
    lines[-1] += ")"
    return "\n".join(lines) + "\n"
