"""Command-line interface.

Exit codes: 0 success, 1 numerical or regression failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .errors import DomainError, FraclapError, NoOracleError
from .evaluator import EvalBreakdown, EvalConfig, constancy_gap, eval_grid, eval_point
from .profile import Params
from .reference import convergence_study, p2_exact

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_GRID = (-0.98, 0.98, 99)
P2_S_VALUES = (0.2, 0.4, 0.5, 7.0 / 12.0)
TABLE1_S_VALUES = (2.0 / 15.0, 0.2, 0.4, 0.5, 7.0 / 12.0)
# published four-decimal values: {p: {s: (I(0), I(0.5))}}
TABLE1 = {
    3: {
        2.0 / 15.0: (5.0446, 4.8644),
        0.2: (3.4253, 3.2945),
        0.4: (1.9911, 2.0046),
        0.5: (1.8484, 1.9451),
        7.0 / 12.0: (1.8891, 2.0702),
    },
    4: {
        2.0 / 15.0: (3.7625, 3.4608),
        0.2: (2.5335, 2.3025),
        0.4: (1.4166, 1.3743),
        0.5: (1.2876, 1.3469),
        7.0 / 12.0: (1.2962, 1.4584),
    },
}
TABLE1_GUARD = 1e-3
P2CHECK_GUARD = 1e-4
CSV_COLUMNS = ("x", "I1", "I2", "I34", "I5", "I6", "total", "flag")
TAIL_CHOICES = {"closed": "closed_form", "adaptive": "adaptive", "both": "both"}


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunMetadata:
    command: str
    params: dict | None
    config: dict
    version: str
    wall_time_ms: float
    grid: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def fmt(v: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(v, ".17g")


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _add_config_flags(sp: argparse.ArgumentParser, n: bool = True) -> None:
    if n:
        sp.add_argument("--n", type=int, default=256, help="rule order; n+1 nodes (default 256)")
    sp.add_argument("--eps", type=float, default=0.02, help="singular window half-width")
    sp.add_argument("--tail", choices=sorted(TAIL_CHOICES), default="closed")
    sp.add_argument("--auto-shrink", action="store_true", help="shrink eps near the boundary")


def _add_grid_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--xmin", type=float, default=DEFAULT_GRID[0])
    sp.add_argument("--xmax", type=float, default=DEFAULT_GRID[1])
    sp.add_argument("--points", type=int, default=DEFAULT_GRID[2])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fraclap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("eval", help="evaluate I(x) at one point")
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--x", type=float, required=True)
    _add_config_flags(sp)
    fmt_group = sp.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", dest="format", action="store_const", const="json")
    fmt_group.add_argument("--csv", dest="format", action="store_const", const="csv")
    sp.set_defaults(format="json")

    sp = sub.add_parser("grid", help="evaluate I(x) on an equispaced grid, CSV output")
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    _add_grid_flags(sp)
    _add_config_flags(sp)
    sp.add_argument("--out", help="output path (default: standard output)")

    sp = sub.add_parser("table1", help="reproduce the p=3, p=4 table at x=0 and x=0.5")
    _add_config_flags(sp)

    sp = sub.add_parser("p2check", help="errors against pi/sin(pi s) for p=2")
    sp.add_argument("--s", type=_float_list, default=list(P2_S_VALUES), help="comma-separated")
    _add_grid_flags(sp)
    _add_config_flags(sp)
    sp.add_argument("--out")

    sp = sub.add_parser("convergence", help="error versus rule order")
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--n-list", type=_int_list, default=[8, 16, 32, 64, 128, 256])
    _add_config_flags(sp, n=False)
    sp.add_argument("--out")

    sp = sub.add_parser("constancy", help="is I(x) constant on the grid?")
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    _add_grid_flags(sp)
    _add_config_flags(sp)
    sp.add_argument("--budget", type=float, default=1e-4, help="error budget per point")
    return parser


def _config(args, n: int | None = None) -> EvalConfig:
    return EvalConfig(
        epsilon=args.eps,
        n=args.n if n is None else n,
        tail_mode=TAIL_CHOICES[args.tail],
        auto_shrink_eps=args.auto_shrink,
    )


def _grid(args) -> tuple[np.ndarray, str]:
    if args.points < 1:
        raise UsageError(f"--points must be >= 1, got {args.points}")
    xs = np.linspace(args.xmin, args.xmax, args.points)
    return xs, f"linspace({fmt(args.xmin)}, {fmt(args.xmax)}, {args.points})"


def _meta(args, t0: float, params: Params | None, config: EvalConfig, grid=None) -> dict:
    return RunMetadata(
        command=args.command,
        params=None if params is None else {"s": params.s, "p": params.p, "m": params.m},
        config=config.to_dict(),
        version=__version__,
        wall_time_ms=round((time.perf_counter() - t0) * 1e3, 3),
        grid=grid,
    ).to_dict()


def _meta_comments(meta: dict) -> str:
    return "".join(f"# {k}: {json.dumps(v)}\n" for k, v in meta.items())


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _breakdown_row(b: EvalBreakdown) -> list[str]:
    vals = [b.x, b.I1, b.I2, b.I34, b.I5, b.I6, b.total]
    return [fmt(v) for v in vals] + [";".join(b.flags)]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> int:
    t0 = time.perf_counter()
    params = Params(args.s, args.p)
    config = _config(args)
    b = eval_point(params, args.x, config)
    meta = _meta(args, t0, params, config)
    if args.format == "csv":
        sys.stdout.write(_meta_comments(meta) + _csv_text(CSV_COLUMNS, [_breakdown_row(b)]))
    else:
        doc = b.to_dict()
        doc["meta"] = meta
        sys.stdout.write(json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_grid(args) -> int:
    t0 = time.perf_counter()
    params = Params(args.s, args.p)
    config = _config(args)
    xs, label = _grid(args)
    report = eval_grid(params, xs, config)
    meta = _meta(args, t0, params, config, label)
    rows = [_breakdown_row(b) for b in report.entries]
    _emit(_meta_comments(meta) + _csv_text(CSV_COLUMNS, rows), args.out)
    return EXIT_OK if all(b.ok for b in report.entries) else EXIT_FAIL


def table1_rows(config: EvalConfig) -> list[tuple[int, float, float, float, float]]:
    """(p, s, x, computed, published) for every cell."""
    rows = []
    for p, block in TABLE1.items():
        for s, published in block.items():
            params = Params(s, p)
            for x, ref in zip((0.0, 0.5), published):
                rows.append((p, s, x, eval_point(params, x, config).total, ref))
    return rows


def cmd_table1(args) -> int:
    config = _config(args)
    rows = table1_rows(config)
    worst = 0.0
    for p in TABLE1:
        print(f"p = {p}   (n = {config.n}, eps = {config.epsilon:g})")
        print(f"{'s':>8} {'x':>4} {'computed':>9} {'published':>9} {'|diff|':>9}")
        for rp, s, x, val, ref in rows:
            if rp != p:
                continue
            dev = abs(val - ref)
            worst = max(worst, dev)
            print(f"{s:8.5f} {x:4.1f} {val:9.4f} {ref:9.4f} {dev:9.1e}")
        print()
    ok = worst <= TABLE1_GUARD
    print(f"max deviation {worst:.2e} ({'ok' if ok else 'FAIL'}, guard {TABLE1_GUARD:g})")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_p2check(args) -> int:
    t0 = time.perf_counter()
    config = _config(args)
    xs, label = _grid(args)
    rows, summary = [], []
    status = EXIT_OK
    for s in args.s:
        params = Params(s, 2.0)
        exact = p2_exact(s)
        report = eval_grid(params, xs, config)
        errs = []
        for b in report.entries:
            err = abs(b.total - exact)
            errs.append(err)
            rows.append([fmt(s), fmt(b.x), fmt(b.total), fmt(err), ";".join(b.flags)])
        worst = float(np.max(errs))
        summary.append(f"# max_abs_error s={s!r}: {fmt(worst)}\n")
        if not (s > 0.5 or worst <= P2CHECK_GUARD):
            status = EXIT_FAIL
    meta = _meta(args, t0, None, config, label)
    meta["params"] = {"p": 2.0, "s": list(args.s)}
    text = _meta_comments(meta) + _csv_text(("s", "x", "value", "abs_error", "flag"), rows)
    _emit(text + "".join(summary), args.out)
    return status


def cmd_convergence(args) -> int:
    t0 = time.perf_counter()
    params = Params(args.s, args.p)
    config = _config(args, n=max(args.n_list) if args.n_list else 1)
    report = convergence_study(params, args.x, args.n_list, config)
    meta = _meta(args, t0, params, config)
    meta["x"] = args.x
    meta["oracle"] = {"kind": report.oracle_kind, "value": report.oracle}
    rows = [[str(e.n), fmt(e.value), fmt(e.abs_error)] for e in report.entries]
    rate = "nan" if report.fitted_rate is None else fmt(report.fitted_rate)
    text = _meta_comments(meta) + _csv_text(("n", "value", "abs_error"), rows)
    _emit(text + f"# fitted_rate: {rate}\n", args.out)
    return EXIT_OK


def constancy_verdict(gap: float, budget: float) -> str:
    return "NON_CONSTANT" if gap > 10.0 * budget else "CONSTANT_WITHIN_BUDGET"


def cmd_constancy(args) -> int:
    t0 = time.perf_counter()
    if not args.budget > 0.0:
        raise UsageError(f"--budget must be positive, got {args.budget!r}")
    params = Params(args.s, args.p)
    config = _config(args)
    xs, label = _grid(args)
    report = eval_grid(params, xs, config)
    gap, x_max, x_min = constancy_gap(report)
    doc = {
        "verdict": constancy_verdict(gap, args.budget),
        "gap": gap,
        "argmax_x": x_max,
        "argmin_x": x_min,
        "budget": args.budget,
        "threshold": 10.0 * args.budget,
        "failed_points": sum(not b.ok for b in report.entries),
        "meta": _meta(args, t0, params, config, label),
    }
    sys.stdout.write(json.dumps(doc) + "\n")
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "grid": cmd_grid,
    "table1": cmd_table1,
    "p2check": cmd_p2check,
    "convergence": cmd_convergence,
    "constancy": cmd_constancy,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_USAGE
    except (DomainError, NoOracleError) as exc:
        print(f"fraclap: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FraclapError as exc:
        print(f"fraclap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except Exception as exc:  # noqa: BLE001 - exit code contract allows only 0/1/2
        print(f"fraclap: unexpected failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def entry() -> None:
    sys.exit(main())
