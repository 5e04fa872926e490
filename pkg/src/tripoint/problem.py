"""Loading JSON problem files.

A problem file looks like::

    {
      "task": "verify",
      "space": {
        "labels": ["w1", "w2", "w3", "w4"],
        "coords": [["-9/4", 0], [0, 0], ...],
        "tables": {
          "d1": {"kind": "metric", "values": "discrete"},
          "d2": {"kind": "metric", "values": "euclidean"},
          "d3": {"kind": "metric", "values": "euclidean"}
        }
      },
      "map": {"w1": "w1", "w2": "w2", "w3": "w4", "w4": "w1"},
      "phi": {"family": "linear", "lambda": "23/25"}
    }

The space keys may also sit at the top level.  Set-valued maps use lists
(``"v3": ["v1", "v3"]``) and take ``"lambda"`` plus ``"class"`` instead of
``"phi"``; their single distance is ``tables.d`` (or ``tables.d1``).
Interval scans use ``"interval"``, ``"metrics"`` and a piecewise ``"map"``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ._numbers import parse_real
from .errors import StructuralError
from .multi import MultiClass, MultiMap
from .phifun import ComparisonFunction, Linear, phi_from_dict
from .sampled import PiecewiseLinearMap, SampledDomain, rule_from_dict
from .single import SingleMap
from .spaces import (
    DistanceTable,
    Kind,
    PointSpace,
    TriMetricSpace,
    discrete_table,
    euclidean_table,
    table_from_rows,
)

TASKS = ("validate", "verify", "fixpoints", "iterate", "scan", "table1", "example35")


class ProblemFileError(StructuralError):
    """Unreadable or syntactically invalid problem file."""


def read_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ProblemFileError(f"{path}: top level must be a JSON object")
    return data


def load_space(desc: dict) -> PointSpace:
    if "labels" not in desc:
        raise StructuralError("space descriptor needs 'labels'")
    coords = desc.get("coords")
    if coords is not None:
        try:
            coords = [[parse_real(c) for c in row] for row in coords]
        except TypeError as exc:
            raise StructuralError("coords must be a list of vectors") from exc
    return PointSpace(tuple(desc["labels"]), coords)


def load_table(desc: Any, space: PointSpace) -> DistanceTable:
    if isinstance(desc, str):
        desc = {"values": desc}
    if not isinstance(desc, dict) or "values" not in desc:
        raise StructuralError("table descriptor needs 'values'")
    kind = desc.get("kind", "metric")
    try:
        kind = Kind(kind)
    except ValueError:
        raise StructuralError(f"unknown table kind {kind!r}") from None
    values = desc["values"]
    if values == "euclidean":
        table = euclidean_table(space)
    elif values == "discrete":
        table = discrete_table(space.n)
    elif isinstance(values, list):
        table = table_from_rows(values, kind)
    else:
        raise StructuralError(f"table values must be rows, 'euclidean' or 'discrete', got {values!r}")
    if table.n != space.n:
        raise StructuralError(f"table has dimension {table.n}, space has {space.n} points")
    return DistanceTable(table.values, kind)


@dataclass
class Problem:
    task: str | None
    space: PointSpace | None = None
    tables: dict[str, DistanceTable] = field(default_factory=dict)
    single: SingleMap | None = None
    multi: MultiMap | None = None
    phi: ComparisonFunction | None = None
    lam: float | None = None
    cls: MultiClass | None = None
    interval: dict | None = None
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def labels(self):
        return self.space.labels if self.space else None

    def tri(self) -> TriMetricSpace:
        missing = [k for k in ("d1", "d2", "d3") if k not in self.tables]
        if missing:
            raise StructuralError(f"single-valued problems need tables d1, d2, d3; missing {missing}")
        return TriMetricSpace(self.space, self.tables["d1"], self.tables["d2"], self.tables["d3"])

    def table(self) -> DistanceTable:
        for key in ("d", "d1"):
            if key in self.tables:
                return self.tables[key]
        raise StructuralError("set-valued problems need a table 'd' (or 'd1')")

    def need_phi(self) -> ComparisonFunction:
        if self.phi is not None:
            return self.phi
        if self.lam is not None:
            return Linear(self.lam)
        raise StructuralError("single-valued task needs 'phi' (or 'lambda')")

    def need_lambda(self) -> tuple[float, MultiClass]:
        if self.lam is None:
            raise StructuralError("set-valued task needs 'lambda'")
        return self.lam, self.cls or MultiClass.TILDE


def _load_map(desc: Any, space: PointSpace):
    if not isinstance(desc, dict) or not desc:
        raise StructuralError("'map' must be an object from labels to images")
    values = list(desc.values())
    if all(isinstance(v, str) for v in values):
        return SingleMap.from_labels(desc, space), None
    if all(isinstance(v, list) for v in values):
        return None, MultiMap.from_labels(desc, space)
    raise StructuralError("map images must be all labels (single-valued) or all lists (set-valued)")


def load_problem(data: dict) -> Problem:
    task = data.get("task")
    if task is not None and task not in TASKS:
        raise StructuralError(f"unknown task {task!r}; expected one of {', '.join(TASKS)}")
    prob = Problem(task=task, raw=data)

    if "interval" in data:
        prob.interval = _load_interval(data)
        if "claim" in data:
            prob.lam = parse_real(data["claim"])
        return prob

    space_desc = data.get("space", data)
    if "labels" in space_desc:
        prob.space = load_space(space_desc)
        tables = space_desc.get("tables", {})
        if not isinstance(tables, dict):
            raise StructuralError("'tables' must be an object")
        prob.tables = {name: load_table(t, prob.space) for name, t in tables.items()}
        if "map" in data:
            prob.single, prob.multi = _load_map(data["map"], prob.space)
    if "phi" in data:
        prob.phi = phi_from_dict(data["phi"])
    if "lambda" in data:
        prob.lam = parse_real(data["lambda"])
    if "class" in data:
        try:
            prob.cls = MultiClass(data["class"])
        except ValueError:
            raise StructuralError(f"unknown class {data['class']!r}") from None
    return prob


def _load_interval(data: dict) -> dict:
    iv = data["interval"]
    try:
        lo, hi = parse_real(iv["lo"]), parse_real(iv["hi"])
        metrics = data["metrics"]
        rules = tuple(rule_from_dict(metrics[k]) for k in ("d1", "d2", "d3"))
        fmap = PiecewiseLinearMap.from_dict(data["map"])
    except KeyError as exc:
        raise StructuralError(f"interval problem is missing {exc.args[0]!r}") from None
    except TypeError as exc:
        raise StructuralError(f"bad interval problem: {exc}") from None
    return {"lo": lo, "hi": hi, "rules": rules, "map": fmap}


def interval_grid(prob: Problem, steps: int) -> SampledDomain:
    return SampledDomain.uniform(prob.interval["lo"], prob.interval["hi"], steps)
