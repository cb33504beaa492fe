"""Fixed-point amounts for costs and utilities.

Amounts are plain ``int`` values counting millionths (micro-units), so sums
and comparisons are exact. Use :func:`amount` to build one from a literal and
:func:`format_amount` to print it back as a decimal string.
"""

from __future__ import annotations

from decimal import Decimal, DecimalException, InvalidOperation

SCALE = 1_000_000
DIGITS = 6
LIMIT = 10**15  # largest accepted magnitude, in whole units


def amount(value) -> int:
    """Convert ``int``, ``str`` or ``Decimal`` to micro-units.

    Floats are refused: they would smuggle binary rounding into exact math.

    >>> amount(3), amount("2.5"), amount("-0.000001")
    (3000000, 2500000, -1)
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"amounts must be int, str or Decimal, got {value!r}")
    if isinstance(value, int):
        return value * SCALE
    try:
        d = Decimal(value) if isinstance(value, str) else value
        if not isinstance(d, Decimal) or not d.is_finite():
            raise InvalidOperation
    except (InvalidOperation, ValueError):
        raise ValueError(f"not a decimal number: {value!r}") from None
    if abs(d) >= LIMIT:
        raise ValueError(f"{value!r} is out of range")
    try:
        scaled = d.scaleb(DIGITS)
    except DecimalException:
        raise ValueError(f"{value!r} is out of range") from None
    if scaled != scaled.to_integral_value():
        raise ValueError(f"{value!r} has more than {DIGITS} fractional digits")
    return int(scaled)


def format_amount(micro: int) -> str:
    """Shortest decimal string for a micro-unit amount (``8``, ``2.5``, ``-5``)."""
    sign = "-" if micro < 0 else ""
    whole, frac = divmod(abs(micro), SCALE)
    if not frac:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:06d}".rstrip("0")


def is_decimal_literal(text: str) -> bool:
    try:
        amount(text)
    except ValueError:
        return False
    return True
