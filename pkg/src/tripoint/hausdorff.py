"""Set-to-set distances on nonempty subsets of a finite space.

Subsets are canonical sorted tuples of point indices, so set equality is
tuple equality.  On a finite space every inf/sup is attained, hence the
functions below are exact min/max computations with no tolerance.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import StructuralError
from .spaces import DistanceTable

IndexSubset = tuple[int, ...]


def subset(members: Iterable[int], n: int | None = None) -> IndexSubset:
    """Canonical form of a nonempty index set; ``n`` bounds the indices when given."""
    out = tuple(sorted(set(int(m) for m in members)))
    if not out:
        raise StructuralError("subsets must be nonempty")
    if out[0] < 0 or (n is not None and out[-1] >= n):
        raise StructuralError(f"subset {out} has indices outside 0..{'n-1' if n is None else n - 1}")
    return out


def _block(A: Iterable[int], B: Iterable[int], d: DistanceTable) -> np.ndarray:
    a = subset(A, d.n)
    b = subset(B, d.n)
    return d.values[np.ix_(a, b)]


def set_distance(A: Iterable[int], B: Iterable[int], d: DistanceTable) -> float:
    """D(A, B): the smallest pairwise distance."""
    return float(_block(A, B, d).min())


def set_diameter_distance(A: Iterable[int], B: Iterable[int], d: DistanceTable) -> float:
    """The largest pairwise distance between A and B (not a metric: it is
    positive on A = B whenever A has two points)."""
    return float(_block(A, B, d).max())


def hausdorff_distance(A: Iterable[int], B: Iterable[int], d: DistanceTable) -> float:
    block = _block(A, B, d)
    return float(max(block.min(axis=1).max(), block.min(axis=0).max()))


def point_distance(a: int, B: Iterable[int], d: DistanceTable) -> float:
    return set_distance((a,), B, d)
