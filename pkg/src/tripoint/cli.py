"""Command-line front end.

    tripoint validate  <problem.json>
    tripoint verify    <problem.json> [--kappa]
    tripoint fixpoints <problem.json>
    tripoint iterate   <problem.json> --from LABEL [--max-iter N] [--tol X]
    tripoint scan      <problem.json> [--grid N]
    tripoint fixture   table1|example35
    tripoint run       <problem.json>        (dispatch on the file's "task")

Every command accepts ``--json``.  Exit codes: 0 positive verdict or
complete run, 1 negative verdict, 2 structural or domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from ._numbers import as_rational
from .errors import TripointError
from .fixtures import (
    FOUR_POINT_LAMBDA,
    TABLE1,
    THREE_POINT_LAMBDA,
    four_point_discrete,
    four_point_example,
    three_point_multi,
)
from .multi import (
    MultiClass,
    check_condition_i_multi,
    class_inclusion_check,
    enumerate_fixed_points_multi,
    multi_orbit,
    verify_nadler,
    verify_three_point_multi,
)
from .phifun import Linear
from .problem import Problem, interval_grid, load_problem, read_json
from .sampled import sampled_ratio_scan
from .single import (
    Termination,
    check_no_two_cycles,
    enumerate_fixed_points_single,
    fit_min_lambda,
    max_triple_ratio,
    picard_orbit,
    triple_lhs_rhs,
    verify_banach,
    verify_three_point_single,
)
from .spaces import Kind, comparability_kappa, validate_distance_table

SCHEMA = 1
KAPPA_WARN = 1e6
FINITE_NOTE = "finite space: every map is continuous on (M, d1)"

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


@dataclass
class Report:
    task: str
    verdicts: dict[str, Any] = field(default_factory=dict)
    tables: dict[str, list[dict]] = field(default_factory=dict)
    traces: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    positive: bool = True

    def to_json(self) -> str:
        payload = {
            "schema": SCHEMA,
            "task": self.task,
            "verdict": "positive" if self.positive else "negative",
            "verdicts": self.verdicts,
            "tables": self.tables,
            "traces": self.traces,
            "warnings": self.warnings,
        }
        return json.dumps(payload, indent=2, allow_nan=False)

    def to_text(self) -> str:
        lines = [f"task: {self.task}", f"verdict: {'positive' if self.positive else 'negative'}"]
        for key, val in self.verdicts.items():
            lines.append(f"{key}: {_text(val)}")
        for name, rows in self.tables.items():
            lines.append(f"table {name}:")
            if rows:
                cols = list(rows[0])
                lines.append("  " + " | ".join(cols))
                for row in rows:
                    lines.append("  " + " | ".join(_text(row[c]) for c in cols))
        for i, tr in enumerate(self.traces):
            lines.append(f"trace {i}:")
            for key, val in tr.items():
                lines.append(f"  {key}: {_text(val)}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines)


def _text(val) -> str:
    if isinstance(val, float):
        rat = as_rational(val)
        return f"{val:.10g}" + (f" ({rat})" if rat and "/" in rat else "")
    if isinstance(val, dict) and set(val) == {"decimal", "rational"}:
        return _text(val["decimal"])
    if isinstance(val, dict):
        return "{" + ", ".join(f"{k}: {_text(v)}" for k, v in val.items()) + "}"
    if isinstance(val, (list, tuple)):
        return "[" + ", ".join(_text(v) for v in val) + "]"
    return str(val)


def _real(x: float | None) -> dict | None:
    if x is None:
        return None
    return {"decimal": x, "rational": as_rational(x)}


def _names(labels, idx):
    return sorted(labels[i] for i in idx)


# -- task handlers ------------------------------------------------------------


def task_validate(prob: Problem) -> Report:
    rep = Report("validate")
    if not prob.tables:
        raise TripointError("nothing to validate: no distance tables")
    for name, table in prob.tables.items():
        vio = validate_distance_table(table)
        rep.verdicts[name] = {
            "kind": table.kind.value,
            "valid": not vio,
            "violations": [v.describe(prob.labels) for v in vio],
        }
        if table.kind is Kind.SEMIMETRIC:
            rep.warnings.append(f"{name}: semimetric kind: triangle inequality not checked")
        if vio:
            rep.positive = False
    return rep


def task_verify(prob: Problem, kappa: bool = False) -> Report:
    rep = Report("verify")
    labels = prob.labels
    if prob.single is not None:
        tri = prob.tri()
        phi = prob.need_phi()
        res = verify_three_point_single(prob.single, tri, phi)
        rep.verdicts["three_point"] = res.to_dict(labels)
        rep.verdicts["three_point"]["phi"] = phi.to_dict()
        if res.max_ratio is not None:
            rep.verdicts["three_point"]["max_ratio"] = _real(res.max_ratio)
        cyc = check_no_two_cycles(prob.single)
        rep.verdicts["no_two_cycles"] = {
            "ok": cyc.ok,
            "witness": None if cyc.witness is None else labels[cyc.witness],
        }
        fit = fit_min_lambda(prob.single, tri)
        rep.verdicts["min_lambda"] = _real(fit) if fit is not None else "not_contractive"
        if kappa:
            k = comparability_kappa(tri)
            rep.verdicts["kappa"] = _real(k)
            if k > KAPPA_WARN:
                rep.warnings.append(f"comparability constant is very large ({k:.3g})")
        for name in ("d1", "d2", "d3"):
            vio = validate_distance_table(getattr(tri, name))
            if vio:
                rep.warnings.append(f"{name} fails its axioms: {vio[0].describe(labels)}")
        rep.warnings.append(FINITE_NOTE)
        rep.positive = res.holds
    elif prob.multi is not None:
        d = prob.table()
        lam, cls = prob.need_lambda()
        res = verify_three_point_multi(prob.multi, d, lam, cls)
        rep.verdicts["three_point"] = res.to_dict(labels)
        rep.verdicts["three_point"]["class"] = cls.value
        rep.verdicts["three_point"]["lambda"] = _real(lam)
        rep.verdicts["three_point"]["max_ratio"] = _real(res.max_ratio)
        ci = check_condition_i_multi(prob.multi)
        rep.verdicts["condition_i"] = {
            "ok": ci.ok,
            "witness": None if ci.witness is None else [labels[i] for i in ci.witness],
        }
        nad = verify_nadler(prob.multi, d, lam)
        rep.verdicts["nadler"] = nad.to_dict(labels)
        rep.verdicts["nadler"]["max_ratio"] = _real(nad.max_ratio)
        if cls is not MultiClass.BAR:
            inc = class_inclusion_check(prob.multi, d, lam)
            rep.verdicts["inclusion_chain"] = {
                "tilde_double_prime": inc.tilde_double_prime.holds,
                "tilde_prime": inc.tilde_prime.holds,
                "tilde": inc.tilde.holds,
                "chain_ok": inc.chain_ok,
            }
        rep.positive = res.holds
    else:
        raise TripointError("verify needs a 'map'")
    return rep


def task_fixpoints(prob: Problem) -> Report:
    rep = Report("fixpoints")
    labels = prob.labels
    if prob.single is not None:
        fix = enumerate_fixed_points_single(prob.single)
        rep.verdicts["fixed_points"] = _names(labels, fix)
        rep.verdicts["count"] = len(fix)
        if len(fix) > 2:
            rep.warnings.append("more than two fixed points: no three-points contraction is possible")
    elif prob.multi is not None:
        fix = enumerate_fixed_points_multi(prob.multi)
        rep.verdicts["fixed_points"] = _names(labels, fix)
        rep.verdicts["count"] = len(fix)
    else:
        raise TripointError("fixpoints needs a 'map'")
    return rep


def task_iterate(prob: Problem, start: str, max_iter: int = 1000, tol: float = 1e-12) -> Report:
    rep = Report("iterate")
    labels = prob.labels
    if prob.space is None:
        raise TripointError("iterate needs a space")
    u0 = prob.space.index(start)
    if prob.single is not None:
        phi = prob.need_phi()
        tr = picard_orbit(prob.single, prob.tri(), u0, phi, max_iter=max_iter, tol=tol)
        rep.traces.append(tr.to_dict(labels))
        bad = tr.bound_violations()
        if bad:
            rep.warnings.append(f"steps {bad} exceed the error bound (map not certified?)")
        if tr.tau0_note == "two_cycle":
            rep.warnings.append("first orbit points form a 2-cycle: no error bound")
    elif prob.multi is not None:
        lam, cls = prob.need_lambda()
        tr = multi_orbit(prob.multi, prob.table(), u0, lam, cls, max_iter=max_iter)
        rep.traces.append(tr.to_dict(labels))
        for name, bad in (
            ("recursion", tr.recursion_violations()),
            ("closed-form", tr.theory_violations()),
        ):
            if bad:
                rep.warnings.append(f"{name} bound exceeded at {bad} (map not certified?)")
    else:
        raise TripointError("iterate needs a 'map'")
    if tr.terminated is Termination.CYCLE:
        rep.warnings.append("cycle, no fixed point reached")
    rep.positive = tr.terminated in (Termination.FIXED_POINT, Termination.BOUND_BELOW_TOL)
    return rep


def task_scan(prob: Problem, steps: int = 128) -> Report:
    rep = Report("scan")
    if prob.interval is None:
        raise TripointError("scan needs an 'interval' problem")
    grid = interval_grid(prob, steps)
    res = sampled_ratio_scan(prob.interval["map"], grid, prob.interval["rules"])
    rep.verdicts["scan"] = res.to_dict()
    rep.verdicts["grid_points"] = len(grid.points)
    rep.warnings.append(res.note)
    claim = prob.lam
    if claim is not None:
        rep.verdicts["claim"] = _real(claim)
        rep.positive = res.max_R <= claim + 1e-12
    else:
        rep.positive = res.max_R < 1.0
    return rep


def fixture_table1() -> Report:
    rep = Report("table1")
    tri, F = four_point_example()
    labels = tri.space.labels
    rows = []
    mismatched = []
    for (i, j, k), A, B, R in TABLE1:
        lhs, rhs = triple_lhs_rhs(F, tri, i - 1, j - 1, k - 1)
        # published decimals carry 4 (R) or 5 (B) places
        r_tol = 5e-5 if isinstance(R, float) else 1e-9
        b_tol = 5e-6 if isinstance(B, float) else 1e-9
        same = abs(lhs - float(A)) <= 1e-9 and abs(rhs - float(B)) <= b_tol and abs(lhs / rhs - float(R)) <= r_tol
        if not same:
            mismatched.append(f"({i},{j},{k})")
        rows.append(
            {
                "triple": f"({i},{j},{k})",
                "A": lhs,
                "B": rhs,
                "R": lhs / rhs,
                "A_rational": as_rational(lhs),
                "B_rational": as_rational(rhs),
                "R_rational": as_rational(lhs / rhs),
                "B_published": str(B) if not isinstance(B, float) else B,
                "R_published": str(R) if not isinstance(R, float) else R,
                "matches_published": same,
            }
        )
    rep.tables["table1"] = rows
    if mismatched:
        rep.warnings.append(
            "rows differing from the published table (recomputed values shown): " + ", ".join(mismatched)
        )
    lam = float(FOUR_POINT_LAMBDA)
    res = verify_three_point_single(F, tri, Linear(lam))
    rep.verdicts["three_point"] = res.to_dict(labels)
    rep.verdicts["three_point"]["max_ratio"] = _real(res.max_ratio)
    rep.verdicts["min_lambda"] = _real(fit_min_lambda(F, tri))
    rep.verdicts["no_two_cycles"] = check_no_two_cycles(F).ok
    rep.verdicts["fixed_points"] = _names(labels, enumerate_fixed_points_single(F))
    disc, _ = four_point_discrete()
    rep.verdicts["discrete_ratio"] = _real(max_triple_ratio(F, disc))
    rep.verdicts["banach_discrete"] = verify_banach(F, disc.d1, 0.99).to_dict(labels)
    tr = picard_orbit(F, tri, 2, Linear(lam))
    rep.traces.append(tr.to_dict(labels))
    rep.warnings.append(FINITE_NOTE)
    rep.positive = res.holds
    return rep


def fixture_example35() -> Report:
    rep = Report("example35")
    space, d, F = three_point_multi()
    labels = space.labels
    lam = float(THREE_POINT_LAMBDA)
    tilde = verify_three_point_multi(F, d, lam, MultiClass.TILDE)
    rep.verdicts["tilde"] = tilde.to_dict(labels)
    rep.verdicts["tilde"]["max_ratio"] = _real(tilde.max_ratio)
    nad = verify_nadler(F, d, 0.99)
    rep.verdicts["nadler"] = nad.to_dict(labels)
    rep.verdicts["nadler"]["max_ratio"] = _real(nad.max_ratio)
    ci = check_condition_i_multi(F)
    rep.verdicts["condition_i"] = ci.ok
    fix = enumerate_fixed_points_multi(F)
    rep.verdicts["fixed_points"] = _names(labels, fix)
    for start in range(F.n):
        rep.traces.append(multi_orbit(F, d, start, lam, MultiClass.TILDE).to_dict(labels))
    rep.positive = tilde.holds and not nad.holds and ci.ok and fix == {0, 2}
    return rep


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")

    parser = argparse.ArgumentParser(
        prog="tripoint",
        description="Three-points contraction checks, orbits and fixed points on finite spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check metric/semimetric axioms")
    p.add_argument("spec")
    p = sub.add_parser("verify", parents=[common], help="check the three-points contraction")
    p.add_argument("spec")
    p.add_argument("--kappa", action="store_true", help="also compute the comparability constant")
    p = sub.add_parser("fixpoints", parents=[common], help="list fixed points")
    p.add_argument("spec")
    p = sub.add_parser("iterate", parents=[common], help="run the Picard/orbit iteration")
    p.add_argument("spec")
    p.add_argument("--from", dest="start", required=True, metavar="LABEL")
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-12)
    p = sub.add_parser("scan", parents=[common], help="grid ratio scan on an interval")
    p.add_argument("spec")
    p.add_argument("--grid", type=int, default=128, help="number of grid steps (points k/N)")
    p = sub.add_parser("fixture", parents=[common], help="run a built-in worked example")
    p.add_argument("name", choices=["table1", "example35"])
    p = sub.add_parser("run", parents=[common], help="dispatch on the problem file's task field")
    p.add_argument("spec")
    p.add_argument("--from", dest="start", metavar="LABEL")
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--kappa", action="store_true")
    return parser


def dispatch(task: str, prob: Problem | None, args: argparse.Namespace) -> Report:
    if task == "table1":
        return fixture_table1()
    if task == "example35":
        return fixture_example35()
    if task == "validate":
        return task_validate(prob)
    if task == "verify":
        return task_verify(prob, kappa=getattr(args, "kappa", False))
    if task == "fixpoints":
        return task_fixpoints(prob)
    if task == "iterate":
        start = getattr(args, "start", None) or prob.raw.get("from")
        if start is None:
            raise TripointError("iterate needs a start point (--from LABEL or \"from\" in the file)")
        return task_iterate(prob, start, args.max_iter, args.tol)
    if task == "scan":
        steps = getattr(args, "grid", None) or int(prob.raw.get("grid", 128))
        return task_scan(prob, steps)
    raise TripointError(f"unknown task {task!r}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fixture":
            report = dispatch(args.name, None, args)
        else:
            prob = load_problem(read_json(args.spec))
            task = args.command
            if task == "run":
                task = prob.task
                if task is None:
                    raise TripointError("problem file has no 'task' field")
            report = dispatch(task, prob, args)
    except (TripointError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.positive else EXIT_NEGATIVE


if __name__ == "__main__":
    raise SystemExit(main())
