"""Reader and printer for a PDDL subset with action costs and goal preferences.

Supported: typed STRIPS, ``:action-costs`` through ``(increase (total-cost) k)``,
flag-gated negative preconditions, and goal-state preferences over ground
literals, conjunctions and DNF/CNF formulas, weighted in the metric by
``(* w (is-violated name))``. Symbols are lower-cased.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from decimal import Decimal, DecimalException

from .amount import SCALE, amount, format_amount
from .errors import (
    DanglingPreference,
    InvalidTask,
    NameCollision,
    ParseError,
    UnsupportedFeature,
)
from .logic import CNF, DNF, LITERAL, Formula, Literal
from .model import RESERVED_PREFIX, GroundTask, SoftGoalTask
from .sexpr import expect_list, expect_sym, fail, head, read_one

log = logging.getLogger(__name__)

SUPPORTED_REQUIREMENTS = (
    ":strips",
    ":typing",
    ":action-costs",
    ":preferences",
    ":negative-preconditions",
)
COST_FUNCTION = "total-cost"
OBJECT = "object"

Atom = tuple  # (predicate, *args); args are objects or ?variables


@dataclass(frozen=True)
class ActionSchema:
    name: str
    parameters: tuple[tuple[str, str], ...] = ()
    pre: tuple[Atom, ...] = ()
    neg_pre: tuple[Atom, ...] = ()
    add: tuple[Atom, ...] = ()
    delete: tuple[Atom, ...] = ()
    cost: int | None = None  # micro-units; None when there is no increase effect


@dataclass(frozen=True)
class Domain:
    name: str
    requirements: tuple[str, ...] = ()
    types: tuple[tuple[str, str], ...] = ()
    constants: tuple[tuple[str, str], ...] = ()
    predicates: tuple[tuple[str, tuple[tuple[str, str], ...]], ...] = ()
    functions: tuple[str, ...] = ()
    actions: tuple[ActionSchema, ...] = ()

    @property
    def arity(self) -> dict[str, int]:
        return {name: len(params) for name, params in self.predicates}

    @property
    def parents(self) -> dict[str, str]:
        return dict(self.types)

    def is_subtype(self, t: str, ancestor: str) -> bool:
        parents = self.parents
        seen = set()
        while t not in seen:
            if t == ancestor:
                return True
            seen.add(t)
            t = parents.get(t, OBJECT)
        return ancestor == OBJECT


@dataclass(frozen=True)
class MetricSpec:
    """Linear metric: ``offset + cost_weight * total-cost + sum(weight * is-violated)``.

    The offset does not affect which plan is best; it is kept only so the
    metric prints back as it was read (net-benefit metrics use ``(- u (is-violated g))``).
    """

    direction: str = "minimize"
    cost_weight: int = SCALE
    terms: tuple[tuple[int, str], ...] = ()
    offset: int = 0

    @property
    def sign(self) -> int:
        return 1 if self.direction == "minimize" else -1

    def utilities(self) -> dict[str, int]:
        """Utility of satisfying each preference, in micro-units."""
        out: dict[str, int] = {}
        for w, name in self.terms:
            out[name] = out.get(name, 0) + self.sign * w
        return out

    @property
    def counts_cost(self) -> bool:
        return self.sign * self.cost_weight == SCALE


@dataclass(frozen=True)
class LiftedTask:
    domain: Domain
    problem_name: str = ""
    objects: tuple[tuple[str, str], ...] = ()
    init: tuple[str, ...] = ()
    init_cost: int | None = None
    goal: tuple[str, ...] = ()
    preferences: tuple[tuple[str, Formula], ...] = ()
    metric: MetricSpec | None = None
    requirements: tuple[str, ...] = ()

    def all_objects(self) -> dict[str, str]:
        out = dict(self.domain.constants)
        out.update(self.objects)
        return out

    def soft_goals(self) -> tuple[dict[str, int], list[tuple[Formula, int]]]:
        """Normalize preferences to fluent and formula utilities.

        Utilities from several preferences on the same formula are summed.
        Preferences without a nonzero metric weight are dropped with a warning.
        """
        weights = self.metric.utilities() if self.metric else {}
        merged: dict[Formula, int] = {}
        for name, formula in self.preferences:
            u = weights.get(name, 0)
            if u == 0:
                log.warning("preference %s has no metric weight; dropped", name)
                continue
            merged[formula] = merged.get(formula, 0) + u
        fluents: dict[str, int] = {}
        formulas: list[tuple[Formula, int]] = []
        for formula, u in merged.items():
            if u == 0:
                continue
            single = next(iter(formula.groups[0])) if formula.kind == LITERAL else None
            if single is not None and single.positive and u > 0:
                fluents[single.fluent] = fluents.get(single.fluent, 0) + u
            else:
                formulas.append((formula, u))
        return fluents, formulas


# ---------------------------------------------------------------- parsing


class _Reader:
    def __init__(self, allow_reserved: bool):
        self.allow_reserved = allow_reserved

    def name(self, node, what: str) -> str:
        s = expect_sym(node, what)
        if s.startswith(":") or s.startswith("?") and what != "variable":
            fail(f"expected {what}, found {s}", node)
        if not self.allow_reserved and s.startswith(RESERVED_PREFIX):
            raise NameCollision(f"{s.line}:{s.col}: {s!r} uses the reserved prefix {RESERVED_PREFIX}")
        return str(s)

    def typed_list(self, items, what: str, variables: bool = False) -> list[tuple[str, str]]:
        out: list[tuple[str, str]] = []
        pending: list[str] = []
        i = 0
        while i < len(items):
            x = items[i]
            if x == "-":
                if i + 1 >= len(items):
                    fail("type expected after '-'", x)
                t = items[i + 1]
                if isinstance(t, list):
                    if head(t) == "either":
                        fail("'either' types are not supported", t, UnsupportedFeature)
                    fail("type name expected", t)
                if not pending:
                    fail("'-' without preceding names", x)
                tname = self.name(t, "type")
                out.extend((p, tname) for p in pending)
                pending = []
                i += 2
                continue
            if isinstance(x, list):
                fail(f"expected {what} name", x)
            if variables and not x.startswith("?"):
                fail(f"expected variable, found {x}", x)
            if not variables:
                self.name(x, what)
            pending.append(str(x))
            i += 1
        out.extend((p, OBJECT) for p in pending)
        return out


def _sections(root, kind: str):
    root = expect_list(root, "define")
    if head(root) != "define" or len(root) < 2:
        fail("expected (define ...)", root)
    header = expect_list(root[1], kind)
    if head(header) != kind or len(header) != 2:
        fail(f"expected ({kind} NAME)", header)
    return expect_sym(header[1], f"{kind} name"), root[2:]


def _requirements(items) -> tuple[str, ...]:
    out = []
    for r in items:
        r = expect_sym(r, "requirement")
        if r not in SUPPORTED_REQUIREMENTS:
            fail(f"requirement {r} is not supported", r, UnsupportedFeature)
        out.append(str(r))
    return tuple(out)


_UNSUPPORTED_EXPR = {
    "or": "disjunctive conditions",
    "imply": "implications",
    "exists": "existential quantifiers",
    "forall": "universal quantifiers",
    "when": "conditional effects",
    "=": "equality",
    "preference": "preferences outside the goal",
    "assign": "numeric assignments",
    "decrease": "numeric decrease effects",
    "scale-up": "numeric scaling",
    "scale-down": "numeric scaling",
    "at": "timed literals",
    "over": "durative conditions",
}


def _conjuncts(node):
    """Flatten nested ``and`` into a list of conjuncts."""
    if not isinstance(node, list):
        fail("expected a condition list", node)
    if not node:
        return []
    if head(node) == "and":
        out = []
        for c in node[1:]:
            out.extend(_conjuncts(c))
        return out
    return [node]


def parse_domain(text, allow_reserved: bool = False) -> Domain:
    """Parse a domain file."""
    rd = _Reader(allow_reserved)
    name, body = _sections(read_one(text, lower=True), "domain")
    name = rd.name(name, "domain name")
    reqs: tuple[str, ...] = ()
    types: list[tuple[str, str]] = []
    constants: list[tuple[str, str]] = []
    predicates: list = []
    functions: list[str] = []
    raw_actions = []
    seen = set()
    for sec in body:
        sec = expect_list(sec, "domain section")
        key = head(sec)
        if key in (":durative-action", ":derived", ":constraints", ":process", ":event"):
            fail(f"{key} is not supported", sec, UnsupportedFeature)
        if key != ":action" and key in seen:
            fail(f"duplicate {key} section", sec)
        seen.add(key)
        if key == ":requirements":
            reqs = _requirements(sec[1:])
        elif key == ":types":
            types = rd.typed_list(sec[1:], "type")
        elif key == ":constants":
            constants = rd.typed_list(sec[1:], "constant")
        elif key == ":predicates":
            for p in sec[1:]:
                p = expect_list(p, "predicate")
                if not p:
                    fail("empty predicate declaration", p)
                pname = rd.name(p[0], "predicate")
                params = tuple(rd.typed_list(p[1:], "parameter", variables=True))
                predicates.append((pname, params))
        elif key == ":functions":
            functions = _functions(sec[1:])
        elif key == ":action":
            raw_actions.append(sec)
        else:
            fail(f"unknown domain section {key!r}", sec)

    pnames = [p for p, _ in predicates]
    if len(set(pnames)) != len(pnames):
        fail("duplicate predicate declaration", body[0] if body else None)
    domain = Domain(
        name=name,
        requirements=reqs,
        types=tuple(types),
        constants=tuple(constants),
        predicates=tuple(predicates),
        functions=tuple(functions),
    )
    _check_types(domain, [t for _, t in constants] + [t for _, ps in predicates for _, t in ps])
    actions = tuple(_action(rd, domain, a) for a in raw_actions)
    anames = [a.name for a in actions]
    if len(set(anames)) != len(anames):
        fail("duplicate action name", raw_actions[-1])
    return replace(domain, actions=actions)


def _check_types(domain: Domain, used) -> None:
    declared = {OBJECT} | {t for t, _ in domain.types} | {p for _, p in domain.types}
    for t in used:
        if t not in declared:
            raise ParseError(f"undeclared type {t!r}")


def _functions(items) -> list[str]:
    out = []
    i = 0
    while i < len(items):
        f = items[i]
        if f == "-":
            t = items[i + 1] if i + 1 < len(items) else None
            if t != "number":
                fail("only '- number' function types are supported", t or f, UnsupportedFeature)
            i += 2
            continue
        f = expect_list(f, "function")
        if len(f) != 1 or f[0] != COST_FUNCTION:
            fail("only the (total-cost) function is supported", f, UnsupportedFeature)
        out.append(COST_FUNCTION)
        i += 1
    return out


def _atom(rd: _Reader, domain: Domain, node, variables: dict | None, objects: dict | None) -> Atom:
    node = expect_list(node, "atom")
    if not node:
        fail("empty atom", node)
    pred = expect_sym(node[0], "predicate")
    if pred in _UNSUPPORTED_EXPR and not _plain_at(node):
        fail(f"{_UNSUPPORTED_EXPR[pred]} are not supported", node, UnsupportedFeature)
    arity = domain.arity
    if pred not in arity:
        fail(f"undeclared predicate {pred!r}", node)
    args = []
    for a in node[1:]:
        a = expect_sym(a, "argument")
        if a.startswith("?"):
            if variables is None or a not in variables:
                fail(f"unbound variable {a}", a)
        elif objects is not None and a not in objects:
            fail(f"unknown object {a!r}", a)
        args.append(str(a))
    if len(args) != arity[pred]:
        fail(f"{pred} expects {arity[pred]} argument(s), got {len(args)}", node)
    return (str(pred),) + tuple(args)


def _literals(rd, domain, node, variables, objects, negative_ok: bool, what: str):
    pos, neg = [], []
    for c in _conjuncts(node):
        if head(c) == "not":
            if len(c) != 2:
                fail("(not X) takes one argument", c)
            if not negative_ok:
                fail(f"negative {what} need :negative-preconditions", c, UnsupportedFeature)
            neg.append(_atom(rd, domain, c[1], variables, objects))
        else:
            pos.append(_atom(rd, domain, c, variables, objects))
    return pos, neg


def _action(rd: _Reader, domain: Domain, sec) -> ActionSchema:
    if len(sec) < 2:
        fail("action needs a name", sec)
    name = rd.name(sec[1], "action name")
    fields: dict[str, object] = {}
    i = 2
    while i < len(sec):
        key = sec[i]
        if key not in (":parameters", ":precondition", ":effect"):
            fail(f"unexpected {key!r} in action {name}", key)
        if key in fields:
            fail(f"duplicate {key}", key)
        if i + 1 >= len(sec):
            fail(f"{key} needs a value", key)
        fields[str(key)] = sec[i + 1]
        i += 2
    params = rd.typed_list(expect_list(fields.get(":parameters", []), "parameters"), "parameter", True)
    variables = dict(params)
    if len(variables) != len(params):
        fail(f"duplicate parameter in {name}", sec)
    _check_types(domain, variables.values())
    constants = dict(domain.constants)
    negative_ok = ":negative-preconditions" in domain.requirements
    pre, neg = _literals(
        rd, domain, fields.get(":precondition", []), variables, constants, negative_ok, "preconditions"
    )
    add, dele, cost = [], [], None
    for e in _conjuncts(fields.get(":effect", [])):
        h = head(e)
        if h == "increase":
            cost = (cost or 0) + _cost_increase(e)
        elif h == "not":
            if len(e) != 2:
                fail("(not X) takes one argument", e)
            dele.append(_atom(rd, domain, e[1], variables, constants))
        else:
            add.append(_atom(rd, domain, e, variables, constants))
    return ActionSchema(
        name=name,
        parameters=tuple(params),
        pre=tuple(pre),
        neg_pre=tuple(neg),
        add=tuple(add),
        delete=tuple(dele),
        cost=cost,
    )


def _number(node) -> int:
    if isinstance(node, list):
        fail("expected a numeric constant", node, UnsupportedFeature)
    try:
        return amount(str(node))
    except ValueError as e:
        fail(str(e), node)


def _cost_increase(e) -> int:
    if len(e) != 3 or not isinstance(e[1], list) or list(e[1]) != [COST_FUNCTION]:
        fail("only (increase (total-cost) k) is supported", e, UnsupportedFeature)
    k = _number(e[2])
    if k < 0:
        fail("action costs must be non-negative", e[2])
    return k


def parse_problem(text, domain: Domain, allow_reserved: bool = False) -> LiftedTask:
    rd = _Reader(allow_reserved)
    name, body = _sections(read_one(text, lower=True), "problem")
    name = rd.name(name, "problem name")
    sections: dict[str, list] = {}
    for sec in body:
        sec = expect_list(sec, "problem section")
        key = head(sec)
        if key == ":constraints":
            fail("trajectory constraints are not supported", sec, UnsupportedFeature)
        if key not in (":domain", ":requirements", ":objects", ":init", ":goal", ":metric"):
            fail(f"unknown problem section {key!r}", sec)
        if key in sections:
            fail(f"duplicate {key} section", sec)
        sections[key] = sec
    if ":domain" in sections:
        d = sections[":domain"]
        if len(d) != 2 or d[1] != domain.name:
            fail(f"problem is for domain {d[1:]!r}, not {domain.name!r}", d)
    reqs = _requirements(sections[":requirements"][1:]) if ":requirements" in sections else ()
    objects = rd.typed_list(sections.get(":objects", [None])[1:], "object")
    _check_types(domain, [t for _, t in objects])
    universe = dict(domain.constants)
    for o, t in objects:
        if o in universe and universe[o] != t:
            fail(f"object {o!r} declared twice", sections[":objects"])
        universe[o] = t

    init: list[str] = []
    init_cost = None
    for a in sections.get(":init", [None])[1:]:
        if head(a) == "=":
            if len(a) != 3 or not isinstance(a[1], list) or list(a[1]) != [COST_FUNCTION]:
                fail("only (= (total-cost) k) is supported in :init", a, UnsupportedFeature)
            init_cost = _number(a[2])
        elif head(a) == "not":
            fail("negative literals are not allowed in :init", a)
        else:
            init.append(" ".join(_atom(rd, domain, a, None, universe)))

    goal: list[str] = []
    prefs: list[tuple[str, Formula]] = []
    if ":goal" in sections:
        g = sections[":goal"]
        if len(g) != 2:
            fail(":goal takes one formula", g)
        for c in _conjuncts(g[1]):
            if head(c) == "preference":
                if len(c) != 3 or isinstance(c[1], list):
                    fail("expected (preference NAME FORMULA)", c, UnsupportedFeature)
                prefs.append((rd.name(c[1], "preference name"), _pref_formula(rd, domain, c[2], universe)))
            elif head(c) == "not":
                fail("negative hard goals are not supported", c, UnsupportedFeature)
            else:
                goal.append(" ".join(_atom(rd, domain, c, None, universe)))
    pnames = [n for n, _ in prefs]
    if len(set(pnames)) != len(pnames):
        fail("duplicate preference name", sections.get(":goal"), DanglingPreference)

    metric = None
    if ":metric" in sections:
        metric = _metric(sections[":metric"])
        declared = set(pnames)
        for _, n in metric.terms:
            if n not in declared:
                m = sections[":metric"]
                raise DanglingPreference(
                    f"{m.line}:{m.col}: metric references undeclared preference {n!r}"
                )
    return LiftedTask(
        domain=domain,
        problem_name=name,
        objects=tuple(objects),
        init=tuple(dict.fromkeys(init)),
        init_cost=init_cost,
        goal=tuple(dict.fromkeys(goal)),
        preferences=tuple(prefs),
        metric=metric,
        requirements=reqs,
    )


def _ground_literal(rd, domain, node, universe) -> Literal:
    if head(node) == "not":
        if len(node) != 2:
            fail("(not X) takes one argument", node)
        return Literal(" ".join(_atom(rd, domain, node[1], None, universe)), False)
    return Literal(" ".join(_atom(rd, domain, node, None, universe)), True)


def _plain_at(node) -> bool:
    """``(at x y)`` is an ordinary atom; ``(at end (p))`` is a timed one."""
    return head(node) == "at" and not any(isinstance(x, list) for x in node[1:])


def _is_literal(node) -> bool:
    h = head(node)
    return h not in ("and", "or") and (h not in _QUANTIFIED or _plain_at(node))


_QUANTIFIED = ("forall", "exists", "imply", "always", "sometime", "at-most-once", "within",
               "sometime-after", "sometime-before", "always-within", "hold-during", "hold-after",
               "at")


def _pref_formula(rd, domain, node, universe) -> Formula:
    """Classify a preference body as literal, DNF or CNF."""
    node = expect_list(node, "preference formula")
    h = head(node)
    if h in _QUANTIFIED and not _plain_at(node):
        fail(f"{h} preferences are not supported", node, UnsupportedFeature)
    try:
        if _is_literal(node):
            l = _ground_literal(rd, domain, node, universe)
            return Formula.literal(l.fluent, l.positive)
        if h == "and":
            parts = node[1:]
            if not any(head(p) == "or" for p in parts):
                return Formula.dnf([[_pref_lit(rd, domain, p, universe) for p in parts]])
            clauses = []
            for p in parts:
                if head(p) == "or":
                    clauses.append([_pref_lit(rd, domain, x, universe) for x in p[1:]])
                else:
                    clauses.append([_pref_lit(rd, domain, p, universe)])
            return Formula.cnf(clauses)
        terms = []
        for p in node[1:]:
            if head(p) == "and":
                terms.append([_pref_lit(rd, domain, x, universe) for x in p[1:]])
            else:
                terms.append([_pref_lit(rd, domain, p, universe)])
        return Formula.dnf(terms)
    except InvalidTask as e:
        fail(f"preference formula: {e}", node)


def _pref_lit(rd, domain, node, universe) -> Literal:
    node = expect_list(node, "literal")
    if not _is_literal(node):
        fail("preference formulas must be DNF or CNF over literals", node, UnsupportedFeature)
    return _ground_literal(rd, domain, node, universe)


def _metric(sec) -> MetricSpec:
    if len(sec) != 3 or sec[1] not in ("minimize", "maximize"):
        fail("expected (:metric minimize|maximize EXPR)", sec)
    try:
        coeffs, const = _linear(sec[2])
    except DecimalException:
        fail("metric arithmetic out of range", sec)
    cost = coeffs.pop(COST_FUNCTION, Decimal(0))
    terms = []
    for key, w in coeffs.items():
        terms.append((_micro(w, sec), key[1]))
    metric = MetricSpec(str(sec[1]), _micro(cost, sec), tuple(terms), _micro(const, sec))
    if metric.cost_weight and not metric.counts_cost:
        fail("total-cost must carry weight 1 in the optimization direction", sec, UnsupportedFeature)
    return metric


def _micro(d: Decimal, node) -> int:
    try:
        return amount(d)
    except ValueError as e:
        fail(f"metric weight: {e}", node)


def _linear(node) -> tuple[dict, Decimal]:
    """Evaluate a linear metric expression into coefficients and a constant."""
    if not isinstance(node, list):
        try:
            d = Decimal(str(node))
            if not d.is_finite():
                raise ValueError
        except Exception:
            fail(f"unknown metric term {node!r}", node, UnsupportedFeature)
        return {}, d
    h = head(node)
    if list(node) == [COST_FUNCTION]:
        return {COST_FUNCTION: Decimal(1)}, Decimal(0)
    if h == "is-violated":
        if len(node) != 2 or isinstance(node[1], list):
            fail("expected (is-violated NAME)", node)
        return {("violated", str(node[1])): Decimal(1)}, Decimal(0)
    if h in ("+", "-", "*"):
        args = [_linear(x) for x in node[1:]]
        if not args:
            fail(f"({h}) needs arguments", node)
        if h == "+":
            return _combine(args, [1] * len(args))
        if h == "-":
            if len(args) == 1:
                return _combine(args, [-1])
            return _combine(args, [1] + [-1] * (len(args) - 1))
        coeffs, const = args[0]
        for c2, k2 in args[1:]:
            if coeffs and c2:
                fail("metric products must have a constant factor", node, UnsupportedFeature)
            if c2:
                coeffs, const = {k: v * const for k, v in c2.items()}, k2 * const
            else:
                coeffs, const = {k: v * k2 for k, v in coeffs.items()}, const * k2
        return coeffs, const
    fail(f"unsupported metric expression {h!r}", node, UnsupportedFeature)


def _combine(args, signs):
    coeffs: dict = {}
    const = Decimal(0)
    for (c, k), s in zip(args, signs):
        const += s * k
        for key, v in c.items():
            coeffs[key] = coeffs.get(key, Decimal(0)) + s * v
    return coeffs, const


# ---------------------------------------------------------------- printing


def _fmt_atom(atom) -> str:
    return "(" + " ".join(atom) + ")"


def _fmt_typed(pairs, typed: bool) -> str:
    if not typed:
        return " ".join(n for n, _ in pairs)
    out = []
    i = 0
    while i < len(pairs):
        j = i
        while j < len(pairs) and pairs[j][1] == pairs[i][1]:
            j += 1
        out.append(" ".join(n for n, _ in pairs[i:j]) + f" - {pairs[i][1]}")
        i = j
    return " ".join(out)


def _fmt_and(parts: list[str]) -> str:
    return "(and " + " ".join(parts) + ")" if parts else "(and)"


def _typed(domain: Domain) -> bool:
    return ":typing" in domain.requirements


def print_domain(domain: Domain) -> str:
    typed = _typed(domain)
    lines = [f"(define (domain {domain.name})"]
    if domain.requirements:
        lines.append(f"  (:requirements {' '.join(domain.requirements)})")
    if domain.types:
        lines.append(f"  (:types {_fmt_typed(domain.types, True)})")
    if domain.constants:
        lines.append(f"  (:constants {_fmt_typed(domain.constants, typed)})")
    lines.append("  (:predicates")
    for name, params in domain.predicates:
        body = " ".join([name] + ([_fmt_typed(params, typed)] if params else []))
        lines.append(f"    ({body})")
    lines[-1] += ")"
    if domain.functions:
        lines.append("  (:functions " + " ".join(f"({f})" for f in domain.functions) + " - number)")
    for a in domain.actions:
        lines.append(f"  (:action {a.name}")
        lines.append(f"    :parameters ({_fmt_typed(a.parameters, typed)})")
        pre = [_fmt_atom(x) for x in a.pre] + [f"(not {_fmt_atom(x)})" for x in a.neg_pre]
        lines.append(f"    :precondition {_fmt_and(pre)}")
        eff = [_fmt_atom(x) for x in a.add] + [f"(not {_fmt_atom(x)})" for x in a.delete]
        if a.cost is not None:
            eff.append(f"(increase ({COST_FUNCTION}) {format_amount(a.cost)})")
        lines.append(f"    :effect {_fmt_and(eff)})")
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


def _fmt_lit(l: Literal) -> str:
    atom = "(" + l.fluent + ")"
    return atom if l.positive else f"(not {atom})"


def format_formula(f: Formula) -> str:
    def ordered(g):
        return sorted(g, key=lambda l: (l.fluent, l.positive))

    if f.kind == LITERAL:
        return _fmt_lit(next(iter(f.groups[0])))
    if f.kind == DNF:
        return "(or " + " ".join(
            "(and " + " ".join(_fmt_lit(l) for l in ordered(t)) + ")" for t in f.groups
        ) + ")"
    assert f.kind == CNF
    return "(and " + " ".join(
        "(or " + " ".join(_fmt_lit(l) for l in ordered(c)) + ")" for c in f.groups
    ) + ")"


def _fmt_metric(m: MetricSpec) -> str:
    parts = []
    if m.cost_weight == SCALE:
        parts.append(f"({COST_FUNCTION})")
    elif m.cost_weight:
        parts.append(f"(* {format_amount(m.cost_weight)} ({COST_FUNCTION}))")
    parts += [f"(* {format_amount(w)} (is-violated {n}))" for w, n in m.terms]
    if m.offset:
        parts.append(format_amount(m.offset))
    if not parts:
        expr = "0"
    elif len(parts) == 1:
        expr = parts[0]
    else:
        expr = "(+ " + " ".join(parts) + ")"
    return f"(:metric {m.direction} {expr})"


def print_problem(task: LiftedTask) -> str:
    typed = _typed(task.domain)
    lines = [f"(define (problem {task.problem_name})", f"  (:domain {task.domain.name})"]
    if task.requirements:
        lines.append(f"  (:requirements {' '.join(task.requirements)})")
    if task.objects:
        lines.append(f"  (:objects {_fmt_typed(task.objects, typed)})")
    init = [f"({a})" for a in task.init]
    if task.init_cost is not None:
        init.append(f"(= ({COST_FUNCTION}) {format_amount(task.init_cost)})")
    lines.append("  (:init" + "".join(f"\n    {a}" for a in init) + ")")
    goal = [f"({g})" for g in task.goal]
    goal += [f"(preference {n} {format_formula(f)})" for n, f in task.preferences]
    lines.append(f"  (:goal {_fmt_and(goal)})")
    if task.metric is not None:
        lines.append("  " + _fmt_metric(task.metric))
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


def print_task(task: LiftedTask) -> tuple[str, str]:
    return print_domain(task.domain), print_problem(task)


def lift_ground(
    task: GroundTask | SoftGoalTask, domain_name: str = "ground", problem_name: str = "ground-problem"
) -> tuple[LiftedTask, dict[str, str]]:
    """Express a ground task as PDDL with zero-parameter action schemas.

    Fluent ``"at pkg depot"`` becomes atom ``(at pkg depot)`` with ``pkg`` and
    ``depot`` as domain constants. Action names are squashed to one symbol;
    the returned map sends each PDDL action name back to the ground name.
    """
    soft = task if isinstance(task, SoftGoalTask) else None
    base = task.base if soft else task
    if soft is not None and soft.staged_actions:
        raise ValueError("lowered tasks cannot be printed; print the original or compiled task")
    arity: dict[str, int] = {}
    objects: dict[str, None] = {}
    for f in base.fluents:
        pred, *args = f.split()
        if arity.setdefault(pred, len(args)) != len(args):
            raise InvalidTask(f"predicate {pred!r} used with different arities")
        objects.update(dict.fromkeys(args))
    key = base.order_key()

    def atoms(xs):
        return tuple(tuple(f.split()) for f in sorted(xs, key=key))

    name_map: dict[str, str] = {}
    schemas = []
    for a in base.actions:
        pname = "_".join(a.name.split()).lower()
        if pname in name_map:
            raise NameCollision(f"actions {name_map[pname]!r} and {a.name!r} print identically")
        name_map[pname] = a.name
        schemas.append(
            ActionSchema(pname, (), atoms(a.pre), atoms(a.neg_pre), atoms(a.add), atoms(a.delete), a.cost)
        )
    reqs = [":strips", ":action-costs"]
    if any(a.neg_pre for a in base.actions):
        reqs.append(":negative-preconditions")
    prefs, terms = [], []
    if soft is not None:
        entries = [(Formula.literal(p), u) for p, u in soft.fluent_utilities.items()]
        entries += list(soft.formula_utilities)
        if entries:
            reqs.append(":preferences")
        for i, (f, u) in enumerate(entries):
            prefs.append((f"pref-{i}", f))
            terms.append((u, f"pref-{i}"))
    predicates = tuple(
        (p, tuple((f"?x{i}", OBJECT) for i in range(n))) for p, n in arity.items()
    )
    domain = Domain(
        name=domain_name,
        requirements=tuple(reqs),
        constants=tuple((o, OBJECT) for o in objects),
        predicates=predicates,
        functions=(COST_FUNCTION,),
        actions=tuple(schemas),
    )
    lifted = LiftedTask(
        domain=domain,
        problem_name=problem_name,
        init=tuple(sorted(base.init, key=key)),
        init_cost=0,
        goal=tuple(sorted(base.goal, key=key)),
        preferences=tuple(prefs),
        metric=MetricSpec("minimize", SCALE, tuple(terms)),
    )
    return lifted, name_map


def print_ground_task(task, domain_name: str = "ground", problem_name: str = "ground-problem"):
    """PDDL domain and problem text for a ground task, plus the action-name map."""
    lifted, name_map = lift_ground(task, domain_name, problem_name)
    return print_domain(lifted.domain), print_problem(lifted), name_map

