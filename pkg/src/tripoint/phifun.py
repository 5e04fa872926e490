"""Comparison functions: nondecreasing maps of [0, inf) with summable iterates.

Built-in families:

* ``Linear(lam)``           t -> lam * t, 0 <= lam < 1
* ``LogHalf()``             t -> ln(t + 1) / 2
* ``ArctanPiecewise(l1, l2)`` arctan(l1 t) on [0, 1/l1], arctan(l2 t) beyond
* ``Tabulated(points)``     step function through sampled pairs

Membership in the class can only be *certified at sample resolution*;
:func:`certify_phi` reports what the samples show and nothing more.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from ._numbers import parse_real
from .errors import DomainError, StructuralError

VANISH_FACTOR = 1e-6
DEFAULT_DEPTH = 64
TAIL_EPS = 1e-15


class ComparisonFunction:
    """Base class; subclasses implement ``_value`` for t >= 0."""

    family: str = "custom"

    def __call__(self, t: float) -> float:
        if t < 0:
            raise DomainError(f"comparison functions live on [0, inf), got t={t}")
        return self._value(t)

    def _value(self, t: float) -> float:
        raise NotImplementedError

    def iterate(self, k: int, t: float) -> float:
        if k < 0:
            raise DomainError("iterate count must be >= 0")
        if t < 0:
            raise DomainError(f"comparison functions live on [0, inf), got t={t}")
        for _ in range(k):
            t = self._value(t)
        return t

    def closed_tail(self, n: int, t: float) -> float | None:
        """Exact sum of phi^m(t) over m >= n, when the family has one."""
        return None

    def upper_slope(self) -> float | None:
        """A constant c < 1 with phi(t) <= c t for all t > 0, if known."""
        return None

    def to_dict(self) -> dict:
        return {"family": self.family}


@dataclass(frozen=True)
class Linear(ComparisonFunction):
    lam: float
    family = "linear"

    def __post_init__(self):
        object.__setattr__(self, "lam", float(self.lam))
        if not 0.0 <= self.lam < 1.0:
            raise DomainError(f"linear comparison function needs lambda in [0, 1), got {self.lam}")

    def _value(self, t):
        return self.lam * t

    def iterate(self, k, t):
        if k < 0 or t < 0:
            raise DomainError("iterate needs k >= 0 and t >= 0")
        return self.lam**k * t

    def closed_tail(self, n, t):
        return self.lam**n * t / (1.0 - self.lam)

    def upper_slope(self):
        return self.lam

    def to_dict(self):
        return {"family": self.family, "lambda": self.lam}


@dataclass(frozen=True)
class LogHalf(ComparisonFunction):
    family = "log_half"

    def _value(self, t):
        return 0.5 * math.log1p(t)

    def upper_slope(self):
        # ln(1 + t) <= t
        return 0.5


@dataclass(frozen=True)
class ArctanPiecewise(ComparisonFunction):
    """Discontinuous at t = 1/lam1; the first branch owns the boundary."""

    lam1: float
    lam2: float
    family = "arctan_piecewise"

    def __post_init__(self):
        object.__setattr__(self, "lam1", float(self.lam1))
        object.__setattr__(self, "lam2", float(self.lam2))
        if not 0.0 < self.lam1 < self.lam2 < 1.0:
            raise DomainError(
                f"arctan_piecewise needs 0 < lambda1 < lambda2 < 1, got {self.lam1}, {self.lam2}"
            )

    def _value(self, t):
        if t * self.lam1 <= 1.0:
            return math.atan(self.lam1 * t)
        return math.atan(self.lam2 * t)

    def upper_slope(self):
        return self.lam2

    def to_dict(self):
        return {"family": self.family, "lambda1": self.lam1, "lambda2": self.lam2}


@dataclass(frozen=True)
class Tabulated(ComparisonFunction):
    """Step function: phi(t) is the ordinate of the last sample at or left of t.

    Below the first abscissa the value is 0.  Taking the left sample keeps
    phi(t) <= phi(t_i) < t_i <= t between samples.
    """

    points: tuple[tuple[float, float], ...]
    family = "tabulated"
    _xs: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        if not pts:
            raise StructuralError("tabulated comparison function needs at least one sample")
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        if xs[0] < 0 or any(b <= a for a, b in zip(xs, xs[1:])):
            raise DomainError("tabulated abscissae must be nonnegative and strictly increasing")
        if ys[0] < 0 or any(b < a for a, b in zip(ys, ys[1:])):
            raise DomainError("tabulated ordinates must be nonnegative and nondecreasing")
        for x, y in pts:
            if x > 0 and not y < x:
                raise DomainError(f"tabulated sample ({x}, {y}) violates phi(s) < s")
            if x == 0 and y != 0:
                raise DomainError("tabulated sample at 0 must be 0")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_xs", tuple(xs))

    def _value(self, t):
        i = bisect.bisect_right(self._xs, t) - 1
        return 0.0 if i < 0 else self.points[i][1]

    def to_dict(self):
        return {"family": self.family, "points": [list(p) for p in self.points]}


class FunctionPhi(ComparisonFunction):
    """Wrap an arbitrary callable, unchecked (useful for testing non-members)."""

    def __init__(self, fn: Callable[[float], float], name: str = "custom"):
        self.fn = fn
        self.family = name

    def _value(self, t):
        return float(self.fn(t))

    def __repr__(self):
        return f"FunctionPhi({self.family})"


def phi_from_dict(spec: dict) -> ComparisonFunction:
    """Parse ``{"family": "linear", "lambda": "23/25"}`` and friends."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise StructuralError("phi descriptor needs a 'family' field")
    fam = spec["family"]
    try:
        if fam == "linear":
            return Linear(parse_real(spec["lambda"]))
        if fam == "log_half":
            return LogHalf()
        if fam == "arctan_piecewise":
            return ArctanPiecewise(parse_real(spec["lambda1"]), parse_real(spec["lambda2"]))
        if fam == "tabulated":
            return Tabulated(tuple((parse_real(x), parse_real(y)) for x, y in spec["points"]))
    except KeyError as exc:
        raise StructuralError(f"phi family {fam!r} is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, (DomainError, StructuralError)):
            raise
        raise StructuralError(f"bad phi descriptor: {exc}") from exc
    raise StructuralError(f"unknown phi family {fam!r}")


# -- operations ---------------------------------------------------------------


def phi_eval(phi: ComparisonFunction, t: float) -> float:
    return phi(t)


def phi_iterate(phi: ComparisonFunction, k: int, t: float) -> float:
    """k-fold composition; k = 0 is the identity."""
    return phi.iterate(k, t)


class TailBound(NamedTuple):
    partial_sum: float
    converged: bool


def phi_tail_bound(phi: ComparisonFunction, n: int, t: float, horizon: int = 1000) -> TailBound:
    """Sum of phi^m(t) for m = n .. n + horizon - 1.

    Families with a closed-form tail (linear) return the full infinite tail
    instead, flagged as converged.
    """
    if t <= 0:
        raise DomainError(f"tail bound needs t > 0, got {t}")
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    closed = phi.closed_tail(n, t)
    if closed is not None:
        return TailBound(closed, True)
    term = phi.iterate(n, t)
    total = 0.0
    for _ in range(horizon):
        total += term
        if term == 0.0:
            break
        last = term
        term = phi(term)
    else:
        return TailBound(total, last < TAIL_EPS)
    return TailBound(total, True)


@dataclass
class PhiCertificate:
    nondecreasing_ok: bool
    strict_below_identity_ok: bool
    iterates_vanish_ok: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.nondecreasing_ok and self.strict_below_identity_ok and self.iterates_vanish_ok


def certify_phi(
    phi: ComparisonFunction | Callable[[float], float],
    samples: Sequence[float],
    depth: int = DEFAULT_DEPTH,
) -> PhiCertificate:
    """Check monotonicity, phi(s) < s, and vanishing iterates on ``samples``.

    The vanishing check accepts phi^depth(s) < 1e-6 s, or failing that a
    strictly decreasing iterate sequence.  Witnesses record the first failure
    of each check: ``(s, s')`` pairs for monotonicity, ``(s, phi(s))`` for the
    identity check, ``(s, phi^depth(s))`` for vanishing.
    """
    if not isinstance(phi, ComparisonFunction):
        phi = FunctionPhi(phi)
    pts = sorted(float(s) for s in samples)
    if not pts:
        raise StructuralError("certification needs at least one sample")
    if depth < 1:
        raise DomainError("depth must be >= 1")
    witnesses: dict[str, tuple] = {}
    values = [phi(s) for s in pts]

    nondecreasing = True
    for (s, fs), (s2, fs2) in zip(zip(pts, values), zip(pts[1:], values[1:])):
        if fs2 < fs:
            nondecreasing = False
            witnesses["nondecreasing"] = (s, s2)
            break

    below = True
    for s, fs in zip(pts, values):
        if s > 0 and not fs < s:
            below = False
            witnesses["strict_below_identity"] = (s, fs)
            break

    vanish = True
    for s in pts:
        if s <= 0:
            continue
        seq = [s]
        for _ in range(depth):
            seq.append(phi(seq[-1]))
        if seq[-1] < VANISH_FACTOR * s:
            continue
        if all(b < a for a, b in zip(seq, seq[1:])):
            continue
        vanish = False
        witnesses["iterates_vanish"] = (s, seq[-1])
        break

    return PhiCertificate(nondecreasing, below, vanish, witnesses)
