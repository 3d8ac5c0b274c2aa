"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 the computation paths disagree,
3 search budget exceeded or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import calculator, limits, plane, tables
from .errors import BNError, BudgetExceededError, InvalidMultiplicityError
from .problem import ClassResult, RamificationProblem
from .symbolic import symbolic_class

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("bnmove")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _sequence(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _points(text: str) -> List[List[int]]:
    return [_sequence(chunk) for chunk in text.split(";") if chunk.strip()]


def _add_instance(p: argparse.ArgumentParser) -> None:
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=_sequence, required=True, help="vanishing sequence, largest first, e.g. 4,2,0")
    p.add_argument("--format", choices=("text", "json"), default="text")


def _instance(args: argparse.Namespace) -> RamificationProblem:
    try:
        return RamificationProblem.parse(args.g, args.r, args.d, args.m)
    except InvalidMultiplicityError as exc:
        raise UsageError(str(exc)) from exc


def _fraction(x: Fraction) -> Dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _class_json(result: ClassResult) -> Dict[str, Any]:
    return {
        "theta_exponent": result.theta_exponent,
        "coefficient_num": str(result.coefficient.numerator),
        "coefficient_den": str(result.coefficient.denominator),
        "count": None if result.count is None else str(result.count),
    }


def _bound_json(b: calculator.BoundReport) -> Dict[str, Any]:
    return {
        "bound": b.bound,
        "nonexistence": b.nonexistence,
        "rule": b.rule,
        "k": b.k,
        "convention_sensitive": b.convention_sensitive,
    }


def _bound_verdict(b: calculator.BoundReport) -> str:
    if b.nonexistence:
        return "no such linear series"
    if b.bound == 0:
        return "finite or empty"
    return f"dimension at most {b.bound}"


def _emit(args: argparse.Namespace, payload: Dict[str, Any], lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _rho_payload(p: RamificationProblem, fixed: Optional[List[List[int]]]) -> Dict[str, Any]:
    rho = {"classical": calculator.rho_classical(p.g, p.r, p.d), "moving": calculator.rho_moving(p)}
    if fixed is not None:
        rho["fixed"] = calculator.rho_fixed(p.g, p.r, p.d, fixed)
    return rho


def cmd_rho(args: argparse.Namespace) -> int:
    p = _instance(args)
    try:
        rho = _rho_payload(p, args.fixed_points)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    b = calculator.dimension_bound(p)
    lines = [f"rho_classical = {rho['classical']}", f"rho_moving = {rho['moving']}"]
    if "fixed" in rho:
        lines.append(f"rho_fixed = {rho['fixed']}")
    lines += [f"k = {b.k}", f"bound: {_bound_verdict(b)} ({b.rule})"]
    payload = {"instance": p.as_dict(), "rho": rho, "k": b.k, "bounds": _bound_json(b), "warnings": []}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    p = _instance(args)
    b = calculator.dimension_bound(p)
    warnings = []
    if b.convention_sensitive:
        warnings.append("verdict depends on whether k counts from 0 or 1")
    lines = [f"rho_moving = {b.rho}", f"k = {b.k}", f"bound: {_bound_verdict(b)} ({b.rule})"] + [f"WARNING: {w}" for w in warnings]
    payload = {"instance": p.as_dict(), "rho": _rho_payload(p, None), "bounds": _bound_json(b), "warnings": warnings}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_class(args: argparse.Namespace) -> int:
    p = _instance(args)
    results: Dict[str, ClassResult] = {}
    if args.path in ("symbolic", "both"):
        results["symbolic"] = symbolic_class(p)
    if args.path in ("closed", "both"):
        results["closed"] = calculator.wrd_closed_form(p)
    primary = results.get("symbolic") or results["closed"]
    warnings: List[str] = []
    status = EXIT_OK
    if len(results) == 2 and not results["symbolic"].same_class(results["closed"]):
        diffs = calculator.per_term_divergence(p)
        detail = ", ".join(f"{d.term}: {d.symbolic} vs {d.closed_form}" for d in diffs)
        warnings.append(f"DISAGREEMENT between symbolic and closed form ({detail})")
        status = EXIT_DISAGREE
    if primary.vacuous:
        warnings.append("every rank condition is vacuous; the locus is all of Pic^d")
    exists = not primary.is_zero
    b = calculator.dimension_bound(p)
    lines = []
    for name, res in results.items():
        if res.vacuous:
            lines.append(f"{name}: vacuous (class 1)")
            continue
        count = res.count
        lines.append(
            f"{name}: {res.coefficient} theta^{res.theta_exponent}" + ("" if count is None else f"  count = {count}")
        )
    lines.append(f"existence: {str(exists).lower()}")
    lines += [f"WARNING: {w}" for w in warnings]
    payload = {
        "instance": p.as_dict(),
        "rho": _rho_payload(p, None),
        "class": _class_json(primary),
        "paths": {name: _class_json(res) for name, res in results.items()},
        "existence": exists,
        "bounds": _bound_json(b),
        "warnings": warnings,
    }
    _emit(args, payload, lines)
    return status


def cmd_table(args: argparse.Namespace) -> int:
    rows = tables.table_rows(args.d_offset, args.max_g)
    text = tables.rows_to_csv(rows) if args.format == "csv" else tables.rows_to_json(rows)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    log.info("wrote %d rows to %s", len(rows), args.out)
    return EXIT_OK


def cmd_limit_enum(args: argparse.Namespace) -> int:
    p = _instance(args)
    try:
        cfg = limits.FlagCurveConfig(p.g, tuple(args.chain_lengths or ()))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    placements = ("tails", "rational") if args.q_placement == "all" else (args.q_placement,)
    try:
        search = limits.LimitSeriesSearch(cfg, p.r, p.d)
    except BudgetExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    window = limits.weight_window(p)
    summary: Dict[str, Any] = {}
    lines = [f"rho_moving = {calculator.rho_moving(p)}", f"weight window [{window.lower}, {window.upper}]"]
    for placement in placements:
        states = limits.enumerate_states(cfg, p, placement, search, args.limit)
        info: Dict[str, Any] = {"states": len(states)}
        if placement == "tails":
            info["window_ok"] = all(limits.weight_window_check(s, p) for s in states)
            orders: Dict[str, List[int]] = {}
            for s in states:
                orders.setdefault(s.q_component, [])
                orders[s.q_component] = sorted(set(orders[s.q_component]) | set(s.torsion_orders()))
            info["torsion_orders"] = orders
            info["tail_weights"] = sorted({s.tail_weight() for s in states})
        summary[placement] = info
        lines.append(f"{placement}: {len(states)} states")
        if placement == "tails":
            lines.append(f"  weight window respected: {str(info['window_ok']).lower()}")
            for comp, o in info["torsion_orders"].items():
                lines.append(f"  {comp}: torsion orders {o}")
    payload = {"instance": p.as_dict(), "rho": _rho_payload(p, None), "window": [window.lower, window.upper],
               "placements": summary, "warnings": []}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_plane_audit(args: argparse.Namespace) -> int:
    p = _instance(args)
    a = plane.dimension_audit(p)
    res = plane.resolution_sequence(*a.m)
    warnings = ["resolution gives a net gain of dimension"] if res.net_gain else []
    lines = [
        f"normalized m = ({a.m[0]}, {a.m[1]}, 0), d = {a.d}",
        f"plane curves of degree {a.d}, genus {a.g}: {a.unramified}",
        f"with the ramification point: {a.total} (gross loss {res.gross_loss}, net {res.net_loss})",
        f"fibres over 3g-3 = {a.moduli} moduli need dimension rho + 8 = {a.fiber_threshold}",
        f"largest possible family: {a.max_family_dimension}",
        f"nonexistence: {str(a.nonexistence).lower()}",
        f"positive-dimensional family ruled out: {str(a.positive_dimensional_ruled_out).lower()}",
    ] + [f"WARNING: {w}" for w in warnings]
    payload = {
        "instance": p.as_dict(),
        "rho": _rho_payload(p, None),
        "audit": {k: v for k, v in a.__dict__.items()},
        "resolution": {
            "steps": [s.__dict__ for s in res.steps],
            "gross_loss": res.gross_loss,
            "net_loss": res.net_loss,
        },
        "warnings": warnings,
    }
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bnmove", description="Brill-Noether loci with a moving ramification point")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rho", help="Brill-Noether numbers and the dimension bound")
    _add_instance(p)
    p.add_argument("--fixed-points", type=_points, help="extra fixed ramification, e.g. '3,1,0;2,1,0'")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("bound", help="dimension bound and nonexistence verdict")
    _add_instance(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("class", help="class of the locus in Pic^d")
    _add_instance(p)
    p.add_argument("--path", choices=("closed", "symbolic", "both"), default="both")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("table", help="rho = 0 counts for r = 2")
    p.add_argument("--d-offset", type=int, choices=(1, 2), required=True)
    p.add_argument("--max-g", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("limit-enum", help="limit linear series on a flag curve")
    _add_instance(p)
    p.add_argument("--q-placement", choices=("tails", "rational", "all"), default="all")
    p.add_argument("--chain-lengths", type=_sequence, default=None, help="rational bridges per tail")
    p.add_argument("--limit", type=int, default=None, help="stop after this many states per placement")
    p.set_defaults(func=cmd_limit_enum)

    p = sub.add_parser("plane-audit", help="plane-model dimension count for r = 2")
    _add_instance(p)
    p.set_defaults(func=cmd_plane_audit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(asctime)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except BNError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
