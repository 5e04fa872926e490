"""Multi-valued three-points contractions.

Four classes differ only in which set distance enters each side of the
image perimeter (H = Hausdorff, Dm = largest pairwise distance):

    tilde               H(Fx,Fy) + H(Fy,Fz)  + Dm(Fz,Fx)
    tilde_prime         H(Fx,Fy) + Dm(Fy,Fz) + Dm(Fz,Fx)
    tilde_double_prime  Dm(Fx,Fy) + Dm(Fy,Fz) + Dm(Fz,Fx)
    bar                 H(Fx,Fy) + H(Fy,Fz)  + H(Fz,Fx)

each bounded by lam * (d(x,y) + d(y,z) + d(z,x)).  Since H <= Dm the first
three are nested: tilde_double_prime implies tilde_prime implies tilde.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from ._numbers import TOL
from .errors import DomainError, StructuralError
from .hausdorff import IndexSubset, hausdorff_distance, set_diameter_distance, subset
from .reports import ContractionReport, _ArgMax
from .single import SingleMap, Termination, ordered_triples
from .spaces import DistanceTable, PointSpace


class MultiClass(str, enum.Enum):
    TILDE = "tilde"
    TILDE_PRIME = "tilde_prime"
    TILDE_DOUBLE_PRIME = "tilde_double_prime"
    BAR = "bar"

    def check_lambda(self, lam: float) -> None:
        upper = 0.5 if self is MultiClass.BAR else 1.0
        if not 0.0 < lam < upper:
            raise DomainError(f"class {self.value} needs lambda in (0, {upper}), got {lam}")


# which terms use H (True) or the diameter distance (False), in order xy, yz, zx
_TERMS = {
    MultiClass.TILDE: (True, True, False),
    MultiClass.TILDE_PRIME: (True, False, False),
    MultiClass.TILDE_DOUBLE_PRIME: (False, False, False),
    MultiClass.BAR: (True, True, True),
}


@dataclass(frozen=True)
class MultiMap:
    images: tuple[IndexSubset, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise StructuralError("a map needs at least one point")
        object.__setattr__(self, "images", tuple(subset(img, n) for img in self.images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> IndexSubset:
        return self.images[i]

    @classmethod
    def from_labels(cls, mapping: Mapping[str, Iterable[str]], space: PointSpace) -> "MultiMap":
        missing = [lab for lab in space.labels if lab not in mapping]
        if missing:
            raise StructuralError(f"multi-map is not total: no image for {missing}")
        extra = [lab for lab in mapping if lab not in space.labels]
        if extra:
            raise StructuralError(f"multi-map mentions unknown points {extra}")
        return cls(tuple(tuple(space.index(v) for v in mapping[lab]) for lab in space.labels))

    @classmethod
    def from_single(cls, F: SingleMap) -> "MultiMap":
        return cls(tuple((F(i),) for i in range(F.n)))


def _check_sizes(F: MultiMap, d: DistanceTable) -> None:
    if F.n != d.n:
        raise StructuralError(f"map has {F.n} points, table has {d.n}")
    if F.n < 3:
        raise DomainError("three-points condition needs |M| >= 3")


def _set_dist(use_h: bool, A, B, d: DistanceTable) -> float:
    return hausdorff_distance(A, B, d) if use_h else set_diameter_distance(A, B, d)


def multi_triple_lhs(F: MultiMap, d: DistanceTable, x: int, y: int, z: int, cls: MultiClass) -> float:
    if len({x, y, z}) != 3:
        raise DomainError(f"triple ({x}, {y}, {z}) is not pairwise distinct")
    hxy, hyz, hzx = _TERMS[MultiClass(cls)]
    return (
        _set_dist(hxy, F(x), F(y), d)
        + _set_dist(hyz, F(y), F(z), d)
        + _set_dist(hzx, F(z), F(x), d)
    )


def perimeter(d: DistanceTable, x: int, y: int, z: int) -> float:
    return d(x, y) + d(y, z) + d(z, x)


def verify_three_point_multi(
    F: MultiMap, d: DistanceTable, lam: float, cls: MultiClass, tol: float = TOL
) -> ContractionReport:
    cls = MultiClass(cls)
    cls.check_lambda(lam)
    _check_sizes(F, d)
    tracker = _ArgMax()
    violations = []
    count = 0
    for t in ordered_triples(F.n):
        lhs = multi_triple_lhs(F, d, *t, cls)
        per = perimeter(d, *t)
        count += 1
        tracker.add(lhs / per, t)
        if lhs > lam * per + tol:
            violations.append(t)
    best, worst = tracker.result()
    return ContractionReport(not violations, best, worst, violations, count, f"three_point_{cls.value}")


def max_multi_ratio(F: MultiMap, d: DistanceTable, cls: MultiClass) -> float:
    _check_sizes(F, d)
    return max(multi_triple_lhs(F, d, *t, cls) / perimeter(d, *t) for t in ordered_triples(F.n))


class InclusionCheck(NamedTuple):
    tilde_double_prime: ContractionReport
    tilde_prime: ContractionReport
    tilde: ContractionReport
    chain_ok: bool


def class_inclusion_check(F: MultiMap, d: DistanceTable, lam: float) -> InclusionCheck:
    """Reports for the three nested classes, plus whether the verdicts
    respect the nesting (a stronger class holding forces the weaker ones)."""
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")
    dp = verify_three_point_multi(F, d, lam, MultiClass.TILDE_DOUBLE_PRIME)
    p = verify_three_point_multi(F, d, lam, MultiClass.TILDE_PRIME)
    t = verify_three_point_multi(F, d, lam, MultiClass.TILDE)
    chain = (not dp.holds or p.holds) and (not p.holds or t.holds)
    return InclusionCheck(dp, p, t, chain)


class PairCheck(NamedTuple):
    ok: bool
    witness: tuple[int, int] | None


def check_condition_i_multi(F: MultiMap) -> PairCheck:
    """No u != v with v in F(u) and u in F(v)."""
    for u, v in itertools.combinations(range(F.n), 2):
        if v in F(u) and u in F(v):
            return PairCheck(False, (u, v))
    return PairCheck(True, None)


def verify_nadler(F: MultiMap, d: DistanceTable, lam: float, tol: float = TOL) -> ContractionReport:
    """Pairwise check H(Fu, Fv) <= lam d(u, v) over u < v."""
    if not 0.0 < lam < 1.0:
        raise DomainError(f"Nadler constant must lie in (0, 1), got {lam}")
    if F.n != d.n:
        raise StructuralError(f"map has {F.n} points, table has {d.n}")
    tracker = _ArgMax()
    violations = []
    count = 0
    for u, v in itertools.combinations(range(F.n), 2):
        lhs, rhs = hausdorff_distance(F(u), F(v), d), d(u, v)
        count += 1
        tracker.add(lhs / rhs, (u, v))
        if lhs > lam * rhs + tol:
            violations.append((u, v))
    best, worst = tracker.result()
    return ContractionReport(not violations, best, worst, violations, count, "nadler")


def enumerate_fixed_points_multi(F: MultiMap) -> set[int]:
    return {u for u in range(F.n) if u in F(u)}


# -- orbit --------------------------------------------------------------------


@dataclass
class MultiOrbitTrace:
    """Orbit u_{n+1} in F(u_n) with nearest-point selection.

    Per step n (from u_n to u_{n+1}):
      eps_schedule[n]     lam**n
      step_d[n]           d(u_n, u_{n+1})
      selection_bound[n]  H(F u_{n-1}, F u_n) + lam**n  (None for n = 0)
    Per perimeter index n (needs u_{n+2}):
      p_sequence[n]       d(u_n,u_{n+1}) + d(u_{n+1},u_{n+2}) + d(u_{n+2},u_n)
      recursion_bound[n]  right side of the one-step p recursion (None for n = 0)
      theory_bound[n]     closed-form bound on p_n, hence on d(u_n, u_{n+1})
    """

    points: list[int]
    cls: MultiClass
    lam: float
    eps_schedule: list[float] = field(default_factory=list)
    step_d: list[float] = field(default_factory=list)
    selection_gap: list[float | None] = field(default_factory=list)
    selection_bound: list[float | None] = field(default_factory=list)
    p_sequence: list[float] = field(default_factory=list)
    recursion_bound: list[float | None] = field(default_factory=list)
    theory_bound: list[float] = field(default_factory=list)
    terminated: Termination = Termination.MAX_ITER
    fixed_point: int | None = None

    def recursion_violations(self, tol: float = TOL) -> list[int]:
        return [
            n
            for n, (p, b) in enumerate(zip(self.p_sequence, self.recursion_bound))
            if b is not None and p > b + tol
        ]

    def theory_violations(self, tol: float = TOL) -> list[int]:
        bad = [n for n, (s, b) in enumerate(zip(self.step_d, self.theory_bound)) if s > b + tol]
        bad += [n for n, (p, b) in enumerate(zip(self.p_sequence, self.theory_bound)) if p > b + tol]
        return sorted(set(bad))

    def selection_violations(self, tol: float = TOL) -> list[int]:
        return [
            n
            for n, (s, b) in enumerate(zip(self.step_d, self.selection_bound))
            if b is not None and s > b + tol
        ]

    def to_dict(self, labels=None) -> dict:
        name = (lambda i: labels[i]) if labels else (lambda i: i)
        return {
            "points": [name(p) for p in self.points],
            "class": self.cls.value,
            "lambda": self.lam,
            "eps_schedule": self.eps_schedule,
            "step_d": self.step_d,
            "selection_gap": self.selection_gap,
            "selection_bound": self.selection_bound,
            "p_sequence": self.p_sequence,
            "recursion_bound": self.recursion_bound,
            "theory_bound": self.theory_bound,
            "terminated": self.terminated.value,
            "fixed_point": None if self.fixed_point is None else name(self.fixed_point),
        }


def _closed_bound(cls: MultiClass, lam: float, p0: float, n: int) -> float:
    if cls is MultiClass.BAR:
        return (2 * lam) ** n * p0 + 2 * (2**n - 1) * (lam**n + lam ** (n + 1))
    return lam**n * p0 + n * (lam**n + lam ** (n + 1))


def _recursion(cls: MultiClass, lam: float, prev: float, n: int) -> float:
    if cls is MultiClass.BAR:
        return 2 * lam * prev + 2 * lam**n + 2 * lam ** (n + 1)
    return lam * prev + lam**n + lam ** (n + 1)


def multi_orbit(
    F: MultiMap,
    d: DistanceTable,
    u0: int,
    lam: float,
    cls: MultiClass = MultiClass.TILDE,
    max_iter: int = 1000,
) -> MultiOrbitTrace:
    """Build u_{n+1} as the lowest-index point of F(u_n) nearest to u_n.

    Since u_n lies in F(u_{n-1}), that distance is D(u_n, F u_n) <=
    H(F u_{n-1}, F u_n), so the slack lam**n is never needed; the trace keeps
    both the exact distance and the slack bound.  The primed classes share
    the tilde bounds.
    """
    cls = MultiClass(cls)
    cls.check_lambda(lam)
    if max_iter < 1:
        raise DomainError("max_iter must be >= 1")
    if F.n != d.n:
        raise StructuralError(f"map has {F.n} points, table has {d.n}")
    if not 0 <= u0 < F.n:
        raise StructuralError(f"start index {u0} out of range")

    trace = MultiOrbitTrace(points=[u0], cls=cls, lam=lam)
    seen = {u0}
    n = 0
    while True:
        u = trace.points[-1]
        image = F(u)
        if u in image:
            trace.terminated = Termination.FIXED_POINT
            trace.fixed_point = u
            break
        if n >= max_iter:
            trace.terminated = Termination.MAX_ITER
            break
        nxt = min(image, key=lambda b: (d(u, b), b))
        trace.points.append(nxt)
        trace.eps_schedule.append(lam**n)
        trace.step_d.append(d(u, nxt))
        if n == 0:
            trace.selection_gap.append(None)
            trace.selection_bound.append(None)
        else:
            h = hausdorff_distance(F(trace.points[n - 1]), image, d)
            trace.selection_gap.append(h)
            trace.selection_bound.append(h + lam**n)
        n += 1
        if nxt in seen:
            trace.terminated = Termination.CYCLE
            break
        seen.add(nxt)

    pts = trace.points
    for k in range(len(pts) - 2):
        a, b, c = pts[k], pts[k + 1], pts[k + 2]
        trace.p_sequence.append(d(a, b) + d(b, c) + d(c, a))
    for k, p in enumerate(trace.p_sequence):
        trace.recursion_bound.append(
            None if k == 0 else _recursion(cls, lam, trace.p_sequence[k - 1], k)
        )
    if trace.p_sequence:
        p0 = trace.p_sequence[0]
        trace.theory_bound = [_closed_bound(cls, lam, p0, k) for k in range(len(trace.p_sequence))]
    return trace
