"""Generated names. Everything produced by the compiler starts with ``sgc--``."""

from __future__ import annotations

from .model import RESERVED_PREFIX as P

NORMAL_MODE = P + "normal-mode"
END_MODE = P + "end-mode"
END_ACTION = P + "end"


def symbol(name: str) -> str:
    """Single-token form of a (possibly multi-token) ground name."""
    return "_".join(name.split())


def complement(p: str) -> str:
    return f"{P}not-{symbol(p)}"


def done(p: str) -> str:
    return f"{P}done-{symbol(p)}"


def pending(p: str) -> str:
    return f"{P}pending-{symbol(p)}"


def collect(p: str) -> str:
    return f"{P}collect-{symbol(p)}"


def forgo(p: str) -> str:
    return f"{P}forgo-{symbol(p)}"


def formula_goal(k: int) -> str:
    return f"{P}formula-{k}"


def formula_clause(k: int, i: int) -> str:
    return f"{P}formula-{k}-clause-{i}"


def eval_term(k: int, i: int) -> str:
    return f"{P}eval-{k}-{i}"


def eval_clause(k: int, i: int, j: int) -> str:
    return f"{P}eval-{k}-c{i}-{j}"


def eval_conjunction(k: int) -> str:
    return f"{P}eval-{k}"


def is_reserved(name: str) -> bool:
    return name.startswith(P)


def is_formula_goal(name: str) -> bool:
    rest = name[len(P + "formula-"):]
    return name.startswith(P + "formula-") and rest.isdigit()
