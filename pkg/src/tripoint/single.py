"""Single-valued three-points contractions on finite spaces.

A map F on points 0..n-1 satisfies the three-points contraction for
comparison function phi when, for every ordered triple of distinct points,

    d1(Fx,Fy) + d2(Fy,Fz) + d3(Fz,Fx) <= phi(d1(x,y) + d2(y,z) + d3(z,x)).

The condition is asymmetric in (d1, d2, d3), so all n(n-1)(n-2) ordered
triples are checked.  Every map on a finite metric space is continuous, so
the remaining fixed-point hypotheses are the contraction itself and the
absence of 2-cycles.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple

from ._numbers import TOL
from .errors import DomainError, StructuralError
from .phifun import ComparisonFunction, Linear, phi_tail_bound
from .reports import ContractionReport, _ArgMax
from .sampled import (  # noqa: F401  re-exported: grid scans belong to the single-valued API
    EuclideanRule,
    PiecewiseLinearMap,
    SampledDomain,
    ScanResult,
    SplitRule,
    sampled_ratio_scan,
)
from .spaces import DistanceTable, PointSpace, TriMetricSpace


@dataclass(frozen=True)
class SingleMap:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        n = len(image)
        if n == 0:
            raise StructuralError("a map needs at least one point")
        bad = [i for i in image if not 0 <= i < n]
        if bad:
            raise StructuralError(f"map images {bad} lie outside 0..{n - 1}")
        object.__setattr__(self, "image", image)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    @classmethod
    def from_labels(cls, mapping: Mapping[str, str], space: PointSpace) -> "SingleMap":
        missing = [lab for lab in space.labels if lab not in mapping]
        if missing:
            raise StructuralError(f"map is not total: no image for {missing}")
        extra = [lab for lab in mapping if lab not in space.labels]
        if extra:
            raise StructuralError(f"map mentions unknown points {extra}")
        return cls(tuple(space.index(mapping[lab]) for lab in space.labels))

    @classmethod
    def constant(cls, n: int, target: int) -> "SingleMap":
        return cls((target,) * n)

    @classmethod
    def identity(cls, n: int) -> "SingleMap":
        return cls(tuple(range(n)))


def ordered_triples(n: int) -> Iterator[tuple[int, int, int]]:
    """All ordered triples of pairwise distinct indices, lexicographically."""
    return itertools.permutations(range(n), 3)


class TripleTerms(NamedTuple):
    lhs: float
    rhs_arg: float


def triple_lhs_rhs(F: SingleMap, tri: TriMetricSpace, x: int, y: int, z: int) -> TripleTerms:
    """Image perimeter and source perimeter of (x, y, z); phi is not applied."""
    if len({x, y, z}) != 3:
        raise DomainError(f"triple ({x}, {y}, {z}) is not pairwise distinct")
    fx, fy, fz = F(x), F(y), F(z)
    lhs = tri.d1(fx, fy) + tri.d2(fy, fz) + tri.d3(fz, fx)
    rhs = tri.d1(x, y) + tri.d2(y, z) + tri.d3(z, x)
    return TripleTerms(lhs, rhs)


def _check_sizes(F: SingleMap, tri: TriMetricSpace) -> None:
    if F.n != tri.n:
        raise StructuralError(f"map has {F.n} points, space has {tri.n}")
    if tri.n < 3:
        raise DomainError("three-points condition needs |M| >= 3")


def verify_three_point_single(
    F: SingleMap, tri: TriMetricSpace, phi: ComparisonFunction, tol: float = TOL
) -> ContractionReport:
    _check_sizes(F, tri)
    linear = isinstance(phi, Linear)
    tracker = _ArgMax()
    violations = []
    count = 0
    for t in ordered_triples(tri.n):
        lhs, rhs = triple_lhs_rhs(F, tri, *t)
        bound = phi(rhs)
        count += 1
        tracker.add(lhs / rhs if linear else lhs - bound, t)
        if lhs > bound + tol:
            violations.append(t)
    best, worst = tracker.result()
    return ContractionReport(
        holds=not violations,
        max_ratio=best if linear else None,
        worst=worst,
        violations=sorted(violations),
        checked_count=count,
        label="three_point_single",
    )


def fit_min_lambda(F: SingleMap, tri: TriMetricSpace) -> float | None:
    """Smallest lambda making F a linear three-points contraction.

    ``None`` stands for "not contractive": the best ratio is >= 1.
    """
    _check_sizes(F, tri)
    ratio = max(lhs / rhs for lhs, rhs in (triple_lhs_rhs(F, tri, *t) for t in ordered_triples(tri.n)))
    return ratio if ratio < 1.0 else None


def max_triple_ratio(F: SingleMap, tri: TriMetricSpace) -> float:
    _check_sizes(F, tri)
    return max(lhs / rhs for lhs, rhs in (triple_lhs_rhs(F, tri, *t) for t in ordered_triples(tri.n)))


class CycleCheck(NamedTuple):
    ok: bool
    witness: int | None


def check_no_two_cycles(F: SingleMap) -> CycleCheck:
    """F(F(u)) != u whenever F(u) != u."""
    for u in range(F.n):
        if F(u) != u and F(F(u)) == u:
            return CycleCheck(False, u)
    return CycleCheck(True, None)


def enumerate_fixed_points_single(F: SingleMap) -> set[int]:
    return {u for u in range(F.n) if F(u) == u}


def verify_banach(F: SingleMap, d: DistanceTable, lam: float, tol: float = TOL) -> ContractionReport:
    """Pairwise Lipschitz check d(Fu, Fv) <= lam d(u, v) over u < v."""
    if not 0.0 <= lam < 1.0:
        raise DomainError(f"Banach constant must lie in [0, 1), got {lam}")
    if F.n != d.n:
        raise StructuralError(f"map has {F.n} points, table has {d.n}")
    tracker = _ArgMax()
    violations = []
    count = 0
    for u, v in itertools.combinations(range(F.n), 2):
        lhs, rhs = d(F(u), F(v)), d(u, v)
        count += 1
        tracker.add(lhs / rhs, (u, v))
        if lhs > lam * rhs + tol:
            violations.append((u, v))
    best, worst = tracker.result()
    return ContractionReport(not violations, best, worst, violations, count, "banach")


# -- Picard orbit -------------------------------------------------------------


class Termination(str, enum.Enum):
    FIXED_POINT = "fixed_point_reached"
    BOUND_BELOW_TOL = "bound_below_tolerance"
    MAX_ITER = "max_iterations"
    CYCLE = "cycle_no_fixed_point"


@dataclass
class OrbitTrace:
    """Picard orbit u_{k+1} = F(u_k) with the error bound phi^k(tau0) per step.

    ``tau0`` is None when u0, u1, u2 are not pairwise distinct;
    ``tau0_note`` then says why ("fixed_point" or "two_cycle") and
    ``bounds`` is empty.
    """

    points: list[int]
    step_d1: list[float] = field(default_factory=list)
    bounds: list[float] = field(default_factory=list)
    tau0: float | None = None
    tau0_note: str | None = None
    terminated: Termination = Termination.MAX_ITER
    fixed_point: int | None = None

    def bound_violations(self, tol: float = TOL) -> list[int]:
        return [k for k, (s, b) in enumerate(zip(self.step_d1, self.bounds)) if s > b + tol]

    def to_dict(self, labels=None) -> dict:
        name = (lambda i: labels[i]) if labels else (lambda i: i)
        return {
            "points": [name(p) for p in self.points],
            "step_d1": self.step_d1,
            "bounds": self.bounds,
            "tau0": self.tau0,
            "tau0_note": self.tau0_note,
            "terminated": self.terminated.value,
            "fixed_point": None if self.fixed_point is None else name(self.fixed_point),
        }


def picard_orbit(
    F: SingleMap,
    tri: TriMetricSpace,
    u0: int,
    phi: ComparisonFunction,
    max_iter: int = 1000,
    tol: float = 1e-12,
) -> OrbitTrace:
    if max_iter < 1:
        raise DomainError("max_iter must be >= 1")
    if F.n != tri.n:
        raise StructuralError(f"map has {F.n} points, space has {tri.n}")
    if not 0 <= u0 < F.n:
        raise StructuralError(f"start index {u0} out of range")

    trace = OrbitTrace(points=[u0])
    u1 = F(u0)
    u2 = F(u1)
    if len({u0, u1, u2}) == 3:
        trace.tau0 = tri.d1(u0, u1) + tri.d2(u1, u2) + tri.d3(u2, u0)
    elif u0 == u1 or u1 == u2:
        trace.tau0_note = "fixed_point"
    else:
        trace.tau0_note = "two_cycle"

    seen = {u0}
    k = 0
    while True:
        u = trace.points[-1]
        v = F(u)
        if v == u:
            trace.terminated = Termination.FIXED_POINT
            trace.fixed_point = u
            break
        if k >= max_iter:
            trace.terminated = Termination.MAX_ITER
            break
        trace.points.append(v)
        trace.step_d1.append(tri.d1(u, v))
        if trace.tau0 is not None:
            trace.bounds.append(phi.iterate(k, trace.tau0))
        k += 1
        if v in seen:
            trace.terminated = Termination.CYCLE
            break
        seen.add(v)
        if trace.tau0 is not None and phi_tail_bound(phi, k, trace.tau0).partial_sum < tol:
            trace.terminated = Termination.BOUND_BELOW_TOL
            break
    return trace
