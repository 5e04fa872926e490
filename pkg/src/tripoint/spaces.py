"""Finite point sets carrying one or more distance tables.

A :class:`DistanceTable` is an immutable ``n x n`` array tagged as either a
metric or a semimetric.  Semimetrics only need symmetry and identity of
indiscernibles; the triangle inequality is checked for metrics alone.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._numbers import TOL, parse_real
from .errors import StructuralError


class Kind(str, enum.Enum):
    METRIC = "metric"
    SEMIMETRIC = "semimetric"


@dataclass(frozen=True)
class PointSpace:
    labels: tuple[str, ...]
    coords: np.ndarray | None = None

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        if len(set(labels)) != len(labels):
            raise StructuralError(f"point labels must be distinct: {labels}")
        object.__setattr__(self, "labels", labels)
        if self.coords is not None:
            coords = np.array(self.coords, dtype=float)
            if coords.ndim == 1 and len(labels) == 1:
                coords = coords.reshape(1, -1)
            if coords.ndim != 2 or coords.shape[0] != len(labels):
                raise StructuralError(
                    f"need one coordinate vector of a common dimension per point, "
                    f"got shape {coords.shape} for {len(labels)} points"
                )
            coords.flags.writeable = False
            object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructuralError(f"unknown point label {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]


@dataclass(frozen=True)
class DistanceTable:
    values: np.ndarray
    kind: Kind = Kind.METRIC

    def __post_init__(self):
        try:
            values = np.array(self.values, dtype=float)
        except (TypeError, ValueError) as exc:
            raise StructuralError(f"distance values must be numeric: {exc}") from exc
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise StructuralError(f"distance table must be square, got shape {values.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __call__(self, i: int, j: int) -> float:
        return float(self.values[i, j])

    def scaled(self, factor: float) -> "DistanceTable":
        return DistanceTable(self.values * factor, self.kind)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]
    magnitudes: tuple[float, ...]

    def describe(self, labels: Sequence[str] | None = None) -> str:
        names = [labels[i] for i in self.witness] if labels else list(self.witness)
        mags = ", ".join(f"{m:.12g}" for m in self.magnitudes)
        return f"{self.axiom} at {tuple(names)}: {mags}"


def validate_distance_table(table: DistanceTable, tol: float = TOL) -> list[Violation]:
    """Every axiom failure of ``table`` for its kind, in index order.

    Witness magnitudes: ``nonnegativity`` -> (d_ij,), ``zero_diagonal`` ->
    (d_ii,), ``symmetry`` -> (d_ij, d_ji), ``identity`` -> (d_ij,),
    ``triangle`` -> (d_ik, d_ij + d_jk).
    """
    v = table.values
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise StructuralError(f"distance table must be square, got shape {v.shape}")
    n = v.shape[0]
    out: list[Violation] = []
    for i in range(n):
        if abs(v[i, i]) > tol:
            out.append(Violation("zero_diagonal", (i,), (float(v[i, i]),)))
    for i, j in itertools.product(range(n), repeat=2):
        if v[i, j] < -tol:
            out.append(Violation("nonnegativity", (i, j), (float(v[i, j]),)))
    for i, j in itertools.combinations(range(n), 2):
        if abs(v[i, j] - v[j, i]) > tol:
            out.append(Violation("symmetry", (i, j), (float(v[i, j]), float(v[j, i]))))
        # strict: pseudo-metrics are rejected
        if v[i, j] <= 0 or v[j, i] <= 0:
            out.append(Violation("identity", (i, j), (float(min(v[i, j], v[j, i])),)))
    if table.kind is Kind.METRIC:
        for i, j, k in itertools.product(range(n), repeat=3):
            if v[i, k] > v[i, j] + v[j, k] + tol:
                out.append(
                    Violation("triangle", (i, j, k), (float(v[i, k]), float(v[i, j] + v[j, k])))
                )
    return out


def euclidean_table(space: PointSpace) -> DistanceTable:
    if space.coords is None:
        raise StructuralError("euclidean table needs point coordinates")
    c = space.coords
    diff = c[:, None, :] - c[None, :, :]
    values = np.sqrt((diff**2).sum(axis=-1))
    return DistanceTable(values, Kind.METRIC)


def discrete_table(n: int) -> DistanceTable:
    if n < 1:
        raise StructuralError("discrete metric needs at least one point")
    return DistanceTable(1.0 - np.eye(n), Kind.METRIC)


def table_from_rows(rows: Sequence[Sequence], kind: Kind | str = Kind.METRIC) -> DistanceTable:
    """Build a table from nested rows whose entries may be rational strings."""
    try:
        values = [[parse_real(x) for x in row] for row in rows]
    except TypeError as exc:
        raise StructuralError("distance values must be a list of rows") from exc
    if any(len(r) != len(values) for r in values):
        raise StructuralError("distance table must be square")
    return DistanceTable(np.array(values, dtype=float).reshape(len(values), len(values)), Kind(kind))


@dataclass(frozen=True)
class TriMetricSpace:
    """A point set with three distances; ``d1`` must be a metric."""

    space: PointSpace
    d1: DistanceTable
    d2: DistanceTable
    d3: DistanceTable
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = self.space.n
        for name in ("d1", "d2", "d3"):
            if getattr(self, name).n != n:
                raise StructuralError(f"{name} has dimension {getattr(self, name).n}, expected {n}")
        if self.d1.kind is not Kind.METRIC:
            raise StructuralError("d1 must be a metric")
        if n < 3:
            raise StructuralError("a three-point structure needs |M| >= 3")

    @property
    def n(self) -> int:
        return self.space.n

    @classmethod
    def uniform(cls, space: PointSpace, d: DistanceTable) -> "TriMetricSpace":
        return cls(space, d, d, d)

    def violations(self) -> dict[str, list[Violation]]:
        return {name: validate_distance_table(getattr(self, name)) for name in ("d1", "d2", "d3")}


def comparability_kappa(tri: TriMetricSpace) -> float:
    """Smallest kappa with max(d2, d3) <= kappa * d1 on every pair u != v.

    Returns ``math.inf`` ("unbounded") only if d1 vanishes off the diagonal,
    which a validated metric never does.
    """
    n = tri.n
    if n < 2:
        raise StructuralError("comparability needs at least two points")
    iu = np.triu_indices(n, k=1)
    top = np.maximum(tri.d2.values[iu], tri.d3.values[iu])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(top > 0, top / tri.d1.values[iu], 0.0)
    return float(ratios.max())
