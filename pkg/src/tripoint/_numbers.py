from __future__ import annotations

from fractions import Fraction
from numbers import Real

from .errors import StructuralError

# absolute slack for every "<=" between distances
TOL = 1e-9


def parse_real(value) -> float:
    """Accept ints, floats, and strings like ``"23/25"`` or ``"2.5"``."""
    if isinstance(value, bool):
        raise StructuralError(f"expected a number, got {value!r}")
    if isinstance(value, Real):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"cannot parse number {value!r}") from exc
    raise StructuralError(f"expected a number, got {value!r}")


def as_rational(x: float, max_denominator: int = 1000, tol: float = 1e-12) -> str | None:
    """Return ``"p/q"`` when ``x`` is (numerically) a small-denominator rational."""
    if x != x or x in (float("inf"), float("-inf")):
        return None
    frac = Fraction(x).limit_denominator(max_denominator)
    if abs(float(frac) - x) > tol:
        return None
    return str(frac)
