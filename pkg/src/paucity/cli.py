"""Command-line front end.

Exit codes: 0 ok, 2 input error, 3 degenerate system, 4 capacity or
budget exceeded, 5 oracle mismatch (including a failed verify suite).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from . import __version__, sysfile
from .census import (
    DEFAULT_BUDGET,
    CensusReport,
    brute_census,
    count_trivial_exact,
    exponent_fit,
    potentially_diagonal_sweep,
    product_parametrized_solution,
)
from .divsearch import divisor_guided_search, divisor_guided_search_nonlinear
from .errors import (
    CapacityExceeded,
    DegenerateSystem,
    InsufficientData,
    Overflow,
    WorkBudgetExceeded,
)
from .normalize import NonlinearSystem, gen_corollary_system, gen_theta_system, normalize
from .verify import run_suites

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_LIMIT = 4
EXIT_MISMATCH = 5

CSV_HEADER = ("X", "N", "T", "Tstar", "Tdagger")
FIT_SLACK = 0.75


class Mismatch(Exception):
    """The two enumerators disagree."""


@dataclass
class RunConfig:
    command: str
    system: str | None = None
    xs: tuple[int, ...] = ()
    method: str = "brute"
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    fmt: str = "table"
    out: str | None = None
    workers: int = 1
    backend: str | None = None


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _matrix(text: str) -> list[list[int]]:
    return [_int_list(row) for row in text.split(";")]


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def default_budget() -> int:
    env = os.environ.get("PAUCITY_BUDGET")
    if env:
        try:
            return _u64(env)
        except (ValueError, argparse.ArgumentTypeError):
            raise SystemExit(f"paucity: PAUCITY_BUDGET must be an unsigned integer, got {env!r}")
    return DEFAULT_BUDGET


def _xs(args) -> tuple[int, ...]:
    if args.x is not None:
        xs = (args.x,)
    elif args.x_list:
        xs = tuple(args.x_list)
    else:
        raise ValueError("give --x or --x-list")
    if any(X < 1 for X in xs):
        raise ValueError("X values must be positive")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("--x-list must be strictly increasing")
    return xs


def _load_system(path: str | None):
    if not path:
        raise ValueError("--system is required")
    try:
        return sysfile.load(path)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from exc


def _prepare(system):
    return system if isinstance(system, NonlinearSystem) else normalize(system)


# output

def format_rows(rows: Sequence[CensusReport], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow(r.row())
        return buf.getvalue()
    if fmt == "jsonl":
        return "".join(json.dumps(dict(zip(CSV_HEADER, r.row()))) + "\n" for r in rows)
    cells = [CSV_HEADER] + [tuple(str(v) for v in r.row()) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(CSV_HEADER))]
    return "".join("  ".join(c.rjust(wd) for c, wd in zip(line, widths)) + "\n" for line in cells)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands

def divisor_census(system, X: int, cfg: RunConfig) -> CensusReport:
    """Counts assembled without a pair scan: closed-form T, swept T*, searched T-dagger."""
    search = divisor_guided_search_nonlinear if isinstance(system, NonlinearSystem) else divisor_guided_search
    found = search(system, X, budget=cfg.budget, workers=cfg.workers, backend=cfg.backend)
    tstar, _ = potentially_diagonal_sweep(system, X, keep_solutions=False)
    T = count_trivial_exact(system.k, X)
    Td = len(found.pairs)
    return CensusReport(X, T + tstar + Td, T, tstar, Td, found.pairs, found.visited)


def census_rows(cfg: RunConfig, system) -> list[CensusReport]:
    rows = []
    for X in cfg.xs:
        if cfg.method == "divisor":
            rows.append(divisor_census(system, X, cfg))
            continue
        brute = brute_census(system, X, budget=cfg.budget, workers=cfg.workers, backend=cfg.backend)
        if cfg.method == "both":
            div = divisor_census(system, X, cfg)
            if div.nondiagonal() != brute.nondiagonal() or div.row() != brute.row():
                raise Mismatch(f"X={X}: brute {brute.row()} vs divisor {div.row()}")
        rows.append(brute)
    return rows


def cmd_normalize(cfg: RunConfig) -> int:
    system = _prepare(_load_system(cfg.system))
    _emit(system.summary() + "\n", cfg.out)
    return EXIT_OK


def cmd_census(cfg: RunConfig) -> int:
    system = _prepare(_load_system(cfg.system))
    _emit(format_rows(census_rows(cfg, system), cfg.fmt), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, mutate: bool = False) -> int:
    report = run_suites(cfg.seed, mutate=mutate)
    _emit("\n".join(report.lines()) + "\n", cfg.out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def read_points(text: str, column: str) -> list[tuple[int, int]]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise InsufficientData("the CSV is empty")
    if "X" not in reader.fieldnames or column not in reader.fieldnames:
        raise ValueError(f"the CSV needs columns X and {column}")
    return [(int(row["X"]), int(row[column])) for row in reader]


def cmd_fit(cfg: RunConfig, csv_path: str | None, column: str) -> int:
    system = _prepare(_load_system(cfg.system))
    if csv_path:
        try:
            with open(csv_path) as fh:
                points = read_points(fh.read(), column)
        except OSError as exc:
            raise ValueError(f"cannot read {csv_path}: {exc.strerror}") from exc
    else:
        if column not in CSV_HEADER[1:]:
            raise ValueError(f"unknown column {column!r}")
        idx = CSV_HEADER.index(column)
        points = [(r.X, r.row()[idx]) for r in census_rows(cfg, system)]
    fit = exponent_fit(points)
    # the linear error term grows like X^(w+1); the non-linear one like X^(2w+1)
    bound = 2 * system.w + 1 if isinstance(system, NonlinearSystem) else system.w + 1
    flag = "PASS" if fit.slope <= bound + FIT_SLACK else "WARN"
    lines = [
        f"column={column} points={len(fit.used)} dropped={len(fit.dropped)}",
        f"slope={fit.slope:.6f} bound={bound} limit={bound + FIT_SLACK} {flag}",
    ]
    if fit.dropped:
        lines.append("dropped X=" + ",".join(str(X) for X, _ in fit.dropped))
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def cmd_gen(cfg: RunConfig, args) -> int:
    if args.kind == "product-solution":
        if not args.matrix:
            raise ValueError("--matrix is required")
        _emit(str(product_parametrized_solution(_matrix(args.matrix))) + "\n", cfg.out)
        return EXIT_OK
    if args.k is None:
        raise ValueError("--k is required")
    if args.kind == "corollary":
        if args.r is None:
            raise ValueError("--r is required")
        coeffs = _matrix(args.coeffs)
        a = 0 if coeffs == [[0]] else coeffs
        system = gen_corollary_system(args.k, args.r, a)
    else:
        if not args.minpoly:
            raise ValueError("--minpoly is required")
        system = gen_theta_system(_int_list(args.minpoly), args.k)
    _emit(sysfile.dumps(system), cfg.out)
    return EXIT_OK


# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paucity", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")

    sized = argparse.ArgumentParser(add_help=False)
    sized.add_argument("--system", help="system file (JSON)")
    group = sized.add_mutually_exclusive_group()
    group.add_argument("--x", type=_positive, help="box size")
    group.add_argument("--x-list", type=_int_list, help="comma-separated, strictly increasing box sizes")
    sized.add_argument("--method", choices=("brute", "divisor", "both"), default="brute")
    sized.add_argument("--budget", type=_u64, default=None, help="work limit (default $PAUCITY_BUDGET or 10^10)")
    sized.add_argument("--workers", type=_positive, default=1)
    sized.add_argument("--backend", choices=("compiled", "python"), default=None)

    p = sub.add_parser("normalize", parents=[common], help="print the normal form of a system")
    p.add_argument("--system", help="system file (JSON)")

    p = sub.add_parser("census", parents=[common, sized], help="count solutions per X")
    p.add_argument("--format", dest="fmt", choices=("table", "csv", "jsonl"), default="table")

    p = sub.add_parser("verify", parents=[common], help="run the seeded property suites")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--mutate-psi", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("fit", parents=[common, sized], help="fit the growth exponent of a census column")
    p.add_argument("--csv", help="census CSV; without it the census is computed from --x-list")
    p.add_argument("--column", default="Tdagger", choices=CSV_HEADER[1:])

    p = sub.add_parser("gen", parents=[common], help="generate a system file or a solution")
    p.add_argument("kind", choices=("corollary", "theta", "product-solution"))
    p.add_argument("--k", type=_positive)
    p.add_argument("--r", type=_positive)
    p.add_argument("--coeffs", default="0", help="r x (k-r) matrix as '1,2;3,4', or 0")
    p.add_argument("--minpoly", help="monic minimal polynomial, highest degree first, e.g. 1,0,1")
    p.add_argument("--matrix", help="positive k x k matrix as '1,2;3,4'")
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(command=args.command, system=getattr(args, "system", None), out=args.out)
    if hasattr(args, "method"):
        cfg.method = args.method
        cfg.budget = args.budget if args.budget is not None else default_budget()
        cfg.workers = args.workers
        cfg.backend = args.backend
    cfg.fmt = getattr(args, "fmt", "table")
    cfg.seed = getattr(args, "seed", 0)
    return cfg


def run(args) -> int:
    cfg = _config(args)
    if args.command == "normalize":
        return cmd_normalize(cfg)
    if args.command == "census":
        cfg.xs = _xs(args)
        return cmd_census(cfg)
    if args.command == "verify":
        return cmd_verify(cfg, mutate=args.mutate_psi)
    if args.command == "fit":
        if not args.csv:
            cfg.xs = _xs(args)
        return cmd_fit(cfg, args.csv, args.column)
    return cmd_gen(cfg, args)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except DegenerateSystem as exc:
        print(f"paucity: degenerate system: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (CapacityExceeded, WorkBudgetExceeded, Overflow) as exc:
        print(f"paucity: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except Mismatch as exc:
        print(f"paucity: enumerators disagree: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, InsufficientData) as exc:
        print(f"paucity: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
