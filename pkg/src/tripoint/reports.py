from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ContractionReport:
    """Outcome of a universally quantified contraction check.

    ``worst`` is the triple (or pair, for pairwise conditions) with the
    largest ratio, or, for a nonlinear comparison function, the largest
    excess ``lhs - phi(rhs)``.  Ties go to the lexicographically first tuple.
    ``violations`` is sorted.
    """

    holds: bool
    max_ratio: float | None
    worst: tuple[int, ...] | None
    violations: list[tuple[int, ...]] = field(default_factory=list)
    checked_count: int = 0
    label: str = ""

    def to_dict(self, labels=None) -> dict:
        def name(t):
            if t is None:
                return None
            return [labels[i] for i in t] if labels else list(t)

        return {
            "check": self.label,
            "holds": self.holds,
            "max_ratio": self.max_ratio,
            "worst": name(self.worst),
            "violations": [name(v) for v in self.violations],
            "checked_count": self.checked_count,
        }


class _ArgMax:
    """Running maximum that keeps the first index within ``tie`` of the best."""

    def __init__(self, tie: float = 1e-12):
        self.tie = tie
        self.best = float("-inf")
        self.where = None
        self.values: list[tuple[float, tuple]] = []

    def add(self, value: float, where: tuple) -> None:
        self.values.append((value, where))
        if value > self.best:
            self.best = value

    def result(self):
        if not self.values:
            return None, None
        for value, where in self.values:
            if value >= self.best - self.tie:
                return self.best, where
        return self.best, None
