"""Ratio scans for maps on a real interval, sampled on a finite grid.

A grid certificate says nothing about the continuum between grid points;
results carry that caveat in their ``note``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._numbers import parse_real
from .errors import DomainError, StructuralError

GRID_NOTE = "certificate at grid resolution"


@dataclass(frozen=True)
class SampledDomain:
    lo: float
    hi: float
    points: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        if len(pts) < 3:
            raise DomainError("a sampled domain needs at least 3 points")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise DomainError("grid points must be strictly increasing")
        if pts[0] < self.lo or pts[-1] > self.hi:
            raise DomainError(f"grid points leave [{self.lo}, {self.hi}]")
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, lo: float, hi: float, steps: int) -> "SampledDomain":
        """Points lo + (hi - lo) k / steps for k = 0..steps."""
        if steps < 2:
            raise DomainError("uniform grid needs at least 2 steps")
        return cls(lo, hi, tuple(lo + (hi - lo) * k / steps for k in range(steps + 1)))

    def restrict(self, lo: float, hi: float, lo_open: bool = False, hi_open: bool = False) -> "SampledDomain":
        keep = [
            p
            for p in self.points
            if (p > lo if lo_open else p >= lo) and (p < hi if hi_open else p <= hi)
        ]
        return SampledDomain(self.lo, self.hi, tuple(keep))


@dataclass(frozen=True)
class PiecewiseLinearMap:
    """x -> slope_i x + intercept_i on the i-th piece.

    Pieces are right-closed: piece 0 covers x <= cuts[0], piece i covers
    cuts[i-1] < x <= cuts[i], the last piece covers x > cuts[-1].
    """

    cuts: tuple[float, ...]
    slopes: tuple[float, ...]
    intercepts: tuple[float, ...]

    def __post_init__(self):
        if len(self.slopes) != len(self.cuts) + 1 or len(self.intercepts) != len(self.slopes):
            raise StructuralError("piecewise map needs one more piece than cuts")
        if any(b <= a for a, b in zip(self.cuts, self.cuts[1:])):
            raise StructuralError("cuts must be strictly increasing")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        piece = np.searchsorted(np.asarray(self.cuts, dtype=float), x, side="left")
        return np.asarray(self.slopes)[piece] * x + np.asarray(self.intercepts)[piece]

    @classmethod
    def from_dict(cls, spec: dict) -> "PiecewiseLinearMap":
        """``{"pieces": [{"upto": "1/2", "slope": "1/3"}, {"slope": "1/2"}]}``."""
        try:
            pieces = spec["pieces"]
            cuts = tuple(parse_real(p["upto"]) for p in pieces[:-1])
            slopes = tuple(parse_real(p["slope"]) for p in pieces)
            intercepts = tuple(parse_real(p.get("intercept", 0)) for p in pieces)
        except (KeyError, TypeError, IndexError) as exc:
            raise StructuralError(f"bad piecewise map descriptor: {exc}") from None
        return cls(cuts, slopes, intercepts)


class EuclideanRule:
    def __call__(self, a, b):
        return np.abs(np.asarray(a) - np.asarray(b))

    def __repr__(self):
        return "EuclideanRule()"


@dataclass(frozen=True)
class SplitRule:
    """|a - b| when both points sit on the same side of ``cut`` (x <= cut
    versus x > cut), otherwise the constant ``far``."""

    cut: float = 0.5
    far: float = 1.0

    def __call__(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        return np.where((a <= self.cut) == (b <= self.cut), np.abs(a - b), self.far)


def rule_from_dict(spec: dict):
    rule = spec.get("rule") if isinstance(spec, dict) else None
    if rule == "euclidean":
        return EuclideanRule()
    if rule == "split":
        return SplitRule(parse_real(spec.get("cut", 0.5)), parse_real(spec.get("far", 1)))
    raise StructuralError(f"unknown interval metric rule {rule!r}")


@dataclass
class ScanResult:
    max_R: float
    argmax: tuple[float, float, float]
    min_R: float
    argmin: tuple[float, float, float]
    checked_count: int
    note: str = GRID_NOTE

    def to_dict(self) -> dict:
        return {
            "max_R": self.max_R,
            "argmax": list(self.argmax),
            "min_R": self.min_R,
            "argmin": list(self.argmin),
            "checked_count": self.checked_count,
            "note": self.note,
        }


def sampled_ratio_scan(F, grid: SampledDomain, metrics: Sequence) -> ScanResult:
    """Max and min of the three-point ratio over all ordered distinct grid triples.

    ``metrics`` holds three vectorized rules (d1, d2, d3).  The sweep is done
    one x-slab at a time in index order, so the argmax (first triple in
    lexicographic index order among exact maxima) does not depend on how the
    work is split.
    """
    if len(metrics) != 3:
        raise StructuralError("ratio scan needs three metric rules")
    d1, d2, d3 = metrics
    x = np.asarray(grid.points, dtype=float)
    m = len(x)
    if m < 3:
        raise DomainError("degenerate grid")
    fx = np.asarray(F(x), dtype=float)

    # pairwise tables once; every slab reads from them
    D1, D2, D3 = (rule(x[:, None], x[None, :]) for rule in (d1, d2, d3))
    E1, E2, E3 = (rule(fx[:, None], fx[None, :]) for rule in (d1, d2, d3))
    off = ~np.eye(m, dtype=bool)

    best = -np.inf
    best_at = None
    worst = np.inf
    worst_at = None
    count = 0
    for i in range(m):
        # slab rows: j, columns: k
        num = E1[i, :, None] + E2 + E3[:, i][None, :]
        den = D1[i, :, None] + D2 + D3[:, i][None, :]
        valid = off.copy()
        valid[i, :] = False
        valid[:, i] = False
        with np.errstate(divide="ignore", invalid="ignore"):
            r = num / den
        count += int(valid.sum())
        hi = np.where(valid, r, -np.inf)
        lo = np.where(valid, r, np.inf)
        j, k = np.unravel_index(np.argmax(hi), hi.shape)
        if hi[j, k] > best:
            best, best_at = float(hi[j, k]), (i, int(j), int(k))
        j, k = np.unravel_index(np.argmin(lo), lo.shape)
        if lo[j, k] < worst:
            worst, worst_at = float(lo[j, k]), (i, int(j), int(k))
    pick = lambda t: tuple(float(x[q]) for q in t)  # noqa: E731
    return ScanResult(best, pick(best_at), worst, pick(worst_at), count)
