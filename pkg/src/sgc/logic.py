"""Preference formulas over fluent literals: single literals, DNF and CNF."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import InvalidTask

LITERAL, DNF, CNF = "literal", "dnf", "cnf"


class Literal(NamedTuple):
    fluent: str
    positive: bool = True

    def negated(self) -> "Literal":
        return Literal(self.fluent, not self.positive)

    def holds(self, state) -> bool:
        return (self.fluent in state) == self.positive

    def __str__(self) -> str:
        name = f"({self.fluent})" if " " in self.fluent else self.fluent
        return name if self.positive else f"(not {name})"


def lit(name: str) -> Literal:
    """``lit("p")`` is p, ``lit("-p")`` is not-p. Test/fixture shorthand."""
    if name.startswith("-"):
        return Literal(name[1:], False)
    return Literal(name, True)


@dataclass(frozen=True)
class Formula:
    """A formula in one of three shapes.

    ``groups`` holds DNF terms or CNF clauses, each a frozenset of literals.
    A literal formula has exactly one group with one literal.
    """

    kind: str
    groups: tuple[frozenset[Literal], ...]

    def __post_init__(self):
        if self.kind not in (LITERAL, DNF, CNF):
            raise InvalidTask(f"unknown formula kind {self.kind!r}")
        groups = tuple(frozenset(g) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        if not groups or any(not g for g in groups):
            raise InvalidTask("formula terms/clauses must be nonempty")
        if self.kind == LITERAL and (len(groups) != 1 or len(groups[0]) != 1):
            raise InvalidTask("literal formula must hold exactly one literal")
        for g in groups:
            if any(l.negated() in g for l in g):
                raise InvalidTask(f"complementary literals in one {self.kind} group")

    @classmethod
    def literal(cls, fluent: str, positive: bool = True) -> "Formula":
        return cls(LITERAL, (frozenset([Literal(fluent, positive)]),))

    @classmethod
    def dnf(cls, terms: Iterable[Iterable]) -> "Formula":
        return cls(DNF, tuple(frozenset(_as_lit(x) for x in t) for t in terms))

    @classmethod
    def cnf(cls, clauses: Iterable[Iterable]) -> "Formula":
        return cls(CNF, tuple(frozenset(_as_lit(x) for x in c) for c in clauses))

    @property
    def fluents(self) -> frozenset[str]:
        return frozenset(l.fluent for g in self.groups for l in g)

    @property
    def literals(self) -> frozenset[Literal]:
        return frozenset(l for g in self.groups for l in g)

    def holds(self, state) -> bool:
        if self.kind == CNF:
            return all(any(l.holds(state) for l in c) for c in self.groups)
        return any(all(l.holds(state) for l in t) for t in self.groups)

    def as_dnf_terms(self) -> tuple[frozenset[Literal], ...]:
        if self.kind == CNF:
            raise ValueError("CNF formula has no direct DNF terms")
        return self.groups

    def __str__(self) -> str:
        def group(g, op):
            parts = sorted(str(l) for l in g)
            return parts[0] if len(parts) == 1 else f"({op} {' '.join(parts)})"

        if self.kind == LITERAL:
            return str(next(iter(self.groups[0])))
        if self.kind == DNF:
            return "(or " + " ".join(group(t, "and") for t in self.groups) + ")"
        return "(and " + " ".join(group(c, "or") for c in self.groups) + ")"


def _as_lit(x) -> Literal:
    if isinstance(x, Literal):
        return x
    if isinstance(x, str):
        return lit(x)
    return Literal(*x)


def negate_formula(f: Formula) -> Formula:
    """De Morgan dual: DNF terms become CNF clauses of flipped literals and back."""
    flipped = tuple(frozenset(l.negated() for l in g) for g in f.groups)
    if f.kind == LITERAL:
        return Formula(LITERAL, flipped)
    return Formula(CNF if f.kind == DNF else DNF, flipped)
