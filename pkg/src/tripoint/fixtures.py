"""Built-in worked examples.

``four_point_example``   four points in the plane, discrete d1, Euclidean d2 = d3,
                         a map with two fixed points that is a three-points
                         contraction with lambda = 23/25 but not under d1 alone.
``three_point_multi``    three points with the discrete metric and a set-valued
                         map that is a tilde-class contraction (lambda = 2/3)
                         while failing the pairwise Hausdorff condition.
``interval_example``     [0, 1] with a map discontinuous at 1/2 whose three-point
                         ratio never exceeds 1/2.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .multi import MultiMap
from .sampled import EuclideanRule, PiecewiseLinearMap, SampledDomain, SplitRule
from .single import SingleMap
from .spaces import PointSpace, TriMetricSpace, discrete_table, euclidean_table

FOUR_POINT_LABELS = ("w1", "w2", "w3", "w4")

# (i, j, k) 1-based, A, B, R as published; decimal entries are given to
# the printed precision
TABLE1 = (
    ((1, 2, 3), Fraction(9, 2), Fraction(9), Fraction(1, 2)),
    ((1, 3, 2), Fraction(23, 4), Fraction(25, 4), Fraction(23, 25)),
    ((2, 3, 1), Fraction(17, 4), Fraction(33, 4), Fraction(17, 33)),
    ((1, 2, 4), Fraction(13, 4), Fraction(9, 2), Fraction(13, 18)),
    ((1, 4, 2), Fraction(9, 2), Fraction(23, 4), Fraction(18, 23)),
    ((2, 4, 1), Fraction(13, 4), Fraction(27, 4), Fraction(13, 27)),
    ((1, 3, 4), Fraction(2), 6.46846, 0.3091),
    ((1, 4, 3), Fraction(2), 11.46846, 0.1743),
    ((3, 4, 1), Fraction(2), Fraction(7), Fraction(2, 7)),
    ((2, 3, 4), Fraction(17, 4), 8.96846, 0.4738),
    ((2, 4, 3), Fraction(9, 2), 8.46846, 0.5313),
    ((3, 4, 2), Fraction(23, 4), Fraction(13, 2), Fraction(23, 26)),
)

FOUR_POINT_LAMBDA = Fraction(23, 25)
THREE_POINT_LAMBDA = Fraction(2, 3)


def four_point_coords() -> list[tuple[float, float]]:
    x3 = 175 / 72
    return [
        (-9 / 4, 0.0),
        (0.0, 0.0),
        (x3, -math.sqrt(9 - x3**2)),
        (-55 / 24, 5 * math.sqrt(23) / 24),
    ]


def four_point_space() -> PointSpace:
    return PointSpace(FOUR_POINT_LABELS, four_point_coords())


def four_point_example() -> tuple[TriMetricSpace, SingleMap]:
    """(space with d1 = discrete, d2 = d3 = Euclidean; map w1,w2 fixed, w3->w4->w1)."""
    space = four_point_space()
    eu = euclidean_table(space)
    tri = TriMetricSpace(space, discrete_table(4), eu, eu)
    return tri, SingleMap((0, 1, 3, 0))


def four_point_discrete() -> tuple[TriMetricSpace, SingleMap]:
    """Same map with all three distances discrete (the negative control)."""
    space = four_point_space()
    return TriMetricSpace.uniform(space, discrete_table(4)), SingleMap((0, 1, 3, 0))


def three_point_multi():
    """(space, discrete table, map v1->{v1}, v2->{v1}, v3->{v1,v3})."""
    space = PointSpace(("v1", "v2", "v3"))
    return space, discrete_table(3), MultiMap(((0,), (0,), (0, 2)))


def interval_map() -> PiecewiseLinearMap:
    return PiecewiseLinearMap(cuts=(0.5,), slopes=(1 / 3, 1 / 2), intercepts=(0.0, 0.0))


def interval_metrics():
    split = SplitRule(cut=0.5, far=1.0)
    return (EuclideanRule(), split, split)


def interval_grid(steps: int = 128) -> SampledDomain:
    return SampledDomain.uniform(0.0, 1.0, steps)
