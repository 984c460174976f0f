"""Command-line front end.

Usage:
    qcomb validate --kind optimal --basis muub --y 0.4
    qcomb tradeoff --samples 1001 --out tradeoff.csv
    qcomb qkd analyze --y 0.25
    qcomb qkd analyze --curve --samples 201 --out fig6.csv
    qcomb qkd simulate --y 0.3 --rounds 1000000 --seed 7
    qcomb qkd threshold --tol 1e-9
    qcomb check

Exit codes: 0 success, 1 failed validation or analysis, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Iterable, Sequence

from .bases import muub_basis, standard_basis
from .biqkd import ThresholdError, alice_eve_mutual_info, enumerate_error_rate, security_curve, security_threshold
from .biqkd.montecarlo import EveConfig, simulate_monte_carlo
from .comb import TESTER_TOL, validate_tester
from .networks import optimal_i_network, projective_network, x_from_y
from .tradeoff import curve

__all__ = ["main", "build_parser"]

SIG_DIGITS = 12


def fmt(v) -> str:
    if isinstance(v, float):
        return f"{v + 0.0:.{SIG_DIGITS}g}"
    return str(v)


def _json_ready(obj):
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    v = float(obj)
    if not math.isfinite(v):
        return None
    return float(f"{v + 0.0:.{SIG_DIGITS}g}")


def dump_json(obj) -> str:
    return json.dumps(_json_ready(obj), indent=2, sort_keys=False) + "\n"


def dump_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def _unit_interval(raw: str) -> float:
    try:
        v = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {raw!r}")
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"y must lie in [0, 1], got {v}")
    return v


def _positive_int(raw: str) -> int:
    v = int(raw)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _positive_float(raw: str) -> float:
    v = float(raw)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {v}")
    return v


def _samples(raw: str) -> int:
    v = int(raw)
    if v < 2:
        raise argparse.ArgumentTypeError("need at least 2 samples")
    return v


def cmd_validate(args) -> int:
    basis = standard_basis() if args.basis == "standard" else muub_basis()
    if args.kind == "projective":
        tester = projective_network(basis)
    else:
        tester = optimal_i_network(basis, x_from_y(args.y))
    report = validate_tester(tester, tol=args.tol if args.tol is not None else TESTER_TOL)
    out = {"kind": args.kind, "basis": args.basis}
    if args.kind == "optimal":
        out["y"] = args.y
    out.update(report.as_dict())
    _emit(dump_json(out), args.out)
    return 0 if report.passed else 1


def cmd_tradeoff(args) -> int:
    points = curve(args.samples)
    if args.format == "json":
        text = dump_json([{"y": p.y, "x": p.x, "I": p.info, "D": p.disturbance, "residual": p.residual} for p in points])
    else:
        text = dump_csv(["y", "x", "I", "D", "residual"], (p.row() for p in points))
    _emit(text, args.out)
    return 0


def cmd_qkd_analyze(args) -> int:
    if args.curve:
        rows = security_curve(args.samples)
        if args.format == "json":
            text = dump_json([{"E_AB": e, "I_AB": iab, "I_AE": iae} for e, iab, iae in rows])
        else:
            text = dump_csv(["E_AB", "I_AB", "I_AE"], rows)
        _emit(text, args.out)
        return 0
    params = x_from_y(args.y)
    a = enumerate_error_rate(params)
    out = {k: getattr(a, k) for k in ("x", "y", "H_AE", "I_AE", "E_AB", "I_AB", "conclusive_rate")}
    if args.diagnostic:
        h_printed, i_printed = alice_eve_mutual_info(params, marginals="printed")
        out["H_AE_printed_marginals"] = h_printed
        out["I_AE_printed_marginals"] = i_printed
    _emit(_render_record(out, args.format), args.out)
    return 0


def _render_record(record: dict, fmt_name: str) -> str:
    if fmt_name == "csv":
        return dump_csv(list(record), [list(record.values())])
    return dump_json(record)


def cmd_qkd_simulate(args) -> int:
    a = simulate_monte_carlo(EveConfig(x_from_y(args.y)), args.rounds, args.seed, workers=args.workers)
    out = {k: getattr(a, k) for k in ("x", "y", "H_AE", "I_AE", "E_AB", "I_AB", "conclusive_rate")}
    out.update({"rounds": a.rounds, "seed": a.seed, "e_ab_defined": a.e_ab_defined})
    out.update({f"stderr_{k}": v for k, v in a.stderr.items()})
    _emit(_render_record(out, args.format), args.out)
    return 0


def cmd_qkd_threshold(args) -> int:
    try:
        t = security_threshold(args.tol if args.tol is not None else 1e-9)
    except ThresholdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = {"y_star": t.y_star, "x_star": t.x_star, "E_star": t.E_star, "I_star": t.I_star}
    _emit(_render_record(out, args.format), args.out)
    return 0


def cmd_check(args) -> int:
    from .reproduce import run_checks

    rows = list(run_checks(perturb=args.perturb))
    if args.format == "json":
        text = dump_json(
            [
                {"name": r.name, "expected": r.expected, "computed": r.computed, "tolerance": r.tolerance, "passed": r.passed}
                for r in rows
            ]
        )
    else:
        width = max(len(r.name) for r in rows)
        lines = [f"{'criterion':<{width}}  {'expected':<32} {'computed':>20} {'tolerance':>10}  result"]
        for r in rows:
            lines.append(
                f"{r.name:<{width}}  {r.expected:<32} {fmt(r.computed):>20} {fmt(r.tolerance):>10}  "
                f"{'PASS' if r.passed else 'FAIL'}"
            )
        failed = [r.name for r in rows if not r.passed]
        lines.append(f"{len(rows) - len(failed)}/{len(rows)} rows passed")
        if failed:
            lines.append("failing: " + ", ".join(failed))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if all(r.passed for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = argparse.ArgumentParser(prog="qcomb", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a tester against causal normalization")
    p.add_argument("--kind", choices=("projective", "optimal"), required=True)
    p.add_argument("--basis", choices=("standard", "muub"), default="standard")
    p.add_argument("--y", type=_unit_interval, default=0.5)
    p.add_argument("--tol", type=_positive_float, default=None)
    p.set_defaults(func=cmd_validate, default_format="json")

    p = sub.add_parser("tradeoff", parents=[common], help="information/disturbance curve")
    p.add_argument("--samples", type=_samples, default=101)
    p.set_defaults(func=cmd_tradeoff, default_format="csv")

    qkd = sub.add_parser("qkd", help="two-way QKD under the optimal-I attack")
    qsub = qkd.add_subparsers(dest="action", required=True)

    p = qsub.add_parser("analyze", parents=[common], help="exact analysis at one y, or the full curve")
    p.add_argument("--y", type=_unit_interval, default=0.0)
    p.add_argument("--curve", action="store_true", help="emit E_AB, I_AB, I_AE over a y grid")
    p.add_argument("--samples", type=_samples, default=101)
    p.add_argument("--diagnostic", action="store_true", help="also report the alternative Eve marginals")
    p.set_defaults(func=cmd_qkd_analyze, default_format="json", curve_format="csv")

    p = qsub.add_parser("simulate", parents=[common], help="Monte Carlo run")
    p.add_argument("--y", type=_unit_interval, default=0.0)
    p.add_argument("--rounds", type=_positive_int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_qkd_simulate, default_format="json")

    p = qsub.add_parser("threshold", parents=[common], help="error rate where I_AB = I_AE")
    p.add_argument("--tol", type=_positive_float, default=None)
    p.set_defaults(func=cmd_qkd_threshold, default_format="json")

    p = sub.add_parser("check", parents=[common], help="run the acceptance table")
    p.add_argument("--perturb", default=None, metavar="ROW", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check, default_format="table")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "curve_format", None) if getattr(args, "curve", False) else args.default_format
    if getattr(args, "seed", 0) < 0:
        parser.error("--seed must be nonnegative")
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
