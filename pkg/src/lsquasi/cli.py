"""Command-line front end.

Usage:
    lsquasi verify
    lsquasi decompose --sin2theta 0.8 [--format json]
    lsquasi scan --s-min 0.7 --s-max 1.0 --steps 16 [--out table.csv]
    lsquasi threshold --resolution 1e-4

Exit codes: 0 success, 1 verification failure, 2 argument error, 3 infeasible instance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from .entanglement import concurrence_pure, entanglement_pure_entropy
from .lsdecomp import (
    SOLVER_TOL,
    SolverOptions,
    concurrence_product,
    entropy_product,
    feasibility_profile,
    solve_quasi_optimal,
    threshold_scan,
)
from .numerics import RejectedInputError
from .states import ThetaParam, psi_theta
from .verify import fixture_checks

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


@dataclass(frozen=True)
class ScanRow:
    theta: float
    sin2theta: float
    feasible: bool
    x_min_numeric: float | None
    x_min_closed: float | None
    delta_max: float | None
    concurrence: float
    concurrence_product: float | None
    entanglement_pure: float
    entropy_product: float | None
    pos_margin: float
    ppt_margin: float


FIELDS = [f.name for f in fields(ScanRow)]


def scan_row(p: ThetaParam, opts: SolverOptions) -> ScanRow:
    """Solve at ``p`` and collect one table row.

    Margins are taken at the numerical x_min when feasible; otherwise at the closed-form
    x_min (if it lies in the search interval), else at x = 0.
    """
    r = solve_quasi_optimal(p, opts)
    psi = psi_theta(r.theta)
    if r.feasible:
        pos, ppt = r.min_eig_at_solution
    else:
        x = r.closed_form_x_min
        pos, ppt = feasibility_profile(r.theta, x if x is not None and x <= opts.x_cap else 0.0)
    return ScanRow(
        theta=r.theta.theta,
        sin2theta=r.theta.sin2theta,
        feasible=r.feasible,
        x_min_numeric=r.x_min,
        x_min_closed=r.closed_form_x_min,
        delta_max=r.delta_max,
        concurrence=concurrence_pure(psi),
        concurrence_product=concurrence_product(r.theta, opts) if r.feasible else None,
        entanglement_pure=entanglement_pure_entropy(psi),
        entropy_product=entropy_product(r.theta, opts) if r.feasible else None,
        pos_margin=pos,
        ppt_margin=ppt,
    )


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return format(value, ".12g")


def _json_value(value):
    if value is None or isinstance(value, bool):
        return value
    return float(format(value, ".12g"))


def render_rows(rows: list[ScanRow], fmt: str) -> str:
    if fmt == "json":
        data = [{k: _json_value(v) for k, v in asdict(row).items()} for row in rows]
        return json.dumps(data, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELDS)
    for row in rows:
        writer.writerow(_fmt(getattr(row, name)) for name in FIELDS)
    return buf.getvalue()


def parse_csv(text: str) -> list[ScanRow]:
    """Inverse of the CSV rendering."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != FIELDS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    rows = []
    for rec in reader:
        values = {}
        for name in FIELDS:
            raw = rec[name]
            if name == "feasible":
                values[name] = raw == "true"
            else:
                values[name] = None if raw == "" else float(raw)
        rows.append(ScanRow(**values))
    return rows


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _options(args) -> SolverOptions:
    return SolverOptions(grid=args.grid, x_cap=args.x_cap, tol=args.tol)


def cmd_verify(args, parser) -> int:
    checks = fixture_checks()
    for check in checks:
        print(check.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_decompose(args, parser) -> int:
    if args.theta is not None:
        if not (0.0 <= args.theta <= math.pi / 2):
            parser.error(f"--theta {args.theta} outside [0, pi/2]")
        p = ThetaParam(args.theta)
    else:
        if not (0.0 <= args.sin2theta <= 1.0):
            parser.error(f"--sin2theta {args.sin2theta} outside [0, 1]")
        p = ThetaParam.from_sin2theta(args.sin2theta)
    row = scan_row(p, _options(args))
    _emit(render_rows([row], args.format), args.out)
    return EXIT_OK if row.feasible else EXIT_INFEASIBLE


def cmd_scan(args, parser) -> int:
    if not (0.0 <= args.s_min < args.s_max <= 1.0):
        parser.error(f"need 0 <= --s-min < --s-max <= 1, got {args.s_min}, {args.s_max}")
    if args.steps < 2:
        parser.error(f"--steps must be >= 2, got {args.steps}")
    opts = _options(args)
    rows = [scan_row(ThetaParam.from_sin2theta(float(s)), opts)
            for s in np.linspace(args.s_min, args.s_max, args.steps)]
    _emit(render_rows(rows, args.format), args.out)
    return EXIT_OK


def cmd_threshold(args, parser) -> int:
    if not (0.0 < args.resolution <= 0.01):
        parser.error(f"--resolution must lie in (0, 0.01], got {args.resolution}")
    report = threshold_scan(resolution=args.resolution, opts=_options(args))
    print(report.render())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsquasi",
        description="Optimal and quasi-optimal Lewenstein-Sanpera decompositions of a two-qubit Werner state.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--grid", type=int, default=4096, help="x grid points (default 4096)")
    solver.add_argument("--x-cap", type=float, default=3.0, help="upper end of the x search (default 3.0)")
    solver.add_argument("--tol", type=float, default=SOLVER_TOL, help=f"margin slack (default {SOLVER_TOL:g})")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=("csv", "json"), default="csv")
    output.add_argument("--out", metavar="PATH", help="write to PATH instead of standard output")

    ver = sub.add_parser("verify", help="reproduce the fixture values and closed forms")
    ver.set_defaults(handler=cmd_verify, subparser=ver)

    dec = sub.add_parser("decompose", parents=[solver, output], help="quasi-optimal decomposition at one angle")
    which = dec.add_mutually_exclusive_group(required=True)
    which.add_argument("--theta", type=float, help="angle in radians, [0, pi/2]")
    which.add_argument("--sin2theta", type=float, help="sin 2theta in [0, 1]")
    dec.set_defaults(handler=cmd_decompose, subparser=dec)

    scan = sub.add_parser("scan", parents=[solver, output], help="table over a uniform sin 2theta grid")
    scan.add_argument("--s-min", type=float, required=True)
    scan.add_argument("--s-max", type=float, required=True)
    scan.add_argument("--steps", type=int, required=True)
    scan.set_defaults(handler=cmd_scan, subparser=scan)

    thr = sub.add_parser("threshold", parents=[solver], help="locate the feasibility boundary in sin 2theta")
    thr.add_argument("--resolution", type=float, default=1e-4)
    thr.set_defaults(handler=cmd_threshold, subparser=thr)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args, args.subparser)
    except RejectedInputError as exc:
        args.subparser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
