"""Scalar conventions shared across the package.

Exact mode works over fractions.Fraction (integers are accepted and promoted).
Float mode uses Python floats with an explicit zero tolerance. Formatting is
centralized here so every surface (CLI tables, JSON, reports) prints the same
way: rationals as n or n/d, floats with 17 significant digits.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_TOLERANCE = 1e-12


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact mode needs int or Fraction, got {type(x).__name__}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def is_zero(x, tol: float = DEFAULT_TOLERANCE) -> bool:
    if isinstance(x, float):
        return abs(x) <= tol
    return x == 0


def fmt_scalar(x) -> str:
    """Format a scalar for reports: exact rationals verbatim, floats at 17 sig digits."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.17g}"
    raise TypeError(f"cannot format {type(x).__name__} as a scalar")
