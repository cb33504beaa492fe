"""Exception hierarchy.

Every error raised on bad input derives from :class:`SGCError`, so callers
(and the CLI) can report it without a traceback.
"""

from __future__ import annotations


class SGCError(Exception):
    """Base class for all structured errors."""


class ParseError(SGCError):
    """Malformed text. Carries a 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


class UnsupportedFeature(ParseError):
    """Input uses a construct outside the supported PDDL subset."""


class DanglingPreference(ParseError):
    pass


class UngroundablePreference(SGCError):
    pass


class UnknownAction(SGCError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown action {name!r}")


class InvalidTask(SGCError, ValueError):
    """A task or action violates a construction invariant."""


class UnknownFluent(InvalidTask):
    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__(f"undeclared fluent(s): {', '.join(self.names)}")


UndeclaredFluent = UnknownFluent


class NegativeCost(InvalidTask):
    pass


class InvalidUtility(InvalidTask):
    pass


class ZeroOrNegativeUtility(InvalidUtility):
    pass


class ZeroOrPositiveUtility(InvalidUtility):
    pass


class NameCollision(InvalidTask):
    pass


class FormulaNotLowered(SGCError):
    pass


class PreconditionViolation(SGCError):
    def __init__(self, action: str, missing):
        self.action = action
        self.missing = frozenset(missing)
        super().__init__(
            f"action {action!r} not applicable, unmet: {', '.join(sorted(self.missing))}"
        )


class NotAPlan(SGCError):
    pass


class InapplicablePlan(NotAPlan):
    pass


class InapplicableAt(InapplicablePlan):
    def __init__(self, index: int, missing):
        self.index = index
        self.missing = frozenset(missing)
        super().__init__(
            f"step {index} not applicable, unmet: {', '.join(sorted(self.missing))}"
        )


class HardGoalUnsatisfied(NotAPlan):
    def __init__(self, missing):
        self.missing = frozenset(missing)
        super().__init__(f"hard goals unmet: {', '.join(sorted(self.missing))}")


class ResourceLimit(SGCError):
    def __init__(self, message: str, expanded: int = 0):
        self.expanded = expanded
        super().__init__(message)
