"""Command-line harness: orbit inspection, parent searches, censuses,
and variance tables.

Exit codes: 0 success, 1 domain/usage error, 2 cap or table limit
exceeded, 3 I/O or cache error.  Configuration precedence is CLI flag,
then environment (WDYN_CACHE_DIR, WDYN_WORKERS), then default.  All
reports are deterministic for fixed inputs and any worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass
from math import isqrt
from pathlib import Path

from .dynamics import CapExceeded, TripleClass, classify, trajectory
from .errors import CacheError, CapExceededError, CoverageError
from .parents import ParentQuery, census_b3, census_c3, find_parents
from .primes import PrimeTable, build_prime_table
from .variance import SequenceSample, prime_progression_variance, residue_count_variance

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10_000
CENSUS_X_CAP_C3 = 3000  # triple censuses blow up cubically past this


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved settings for a grid experiment (census or variance)."""

    x_grid: tuple[int, ...]
    mode: str
    workers: int = 1
    cap: int = DEFAULT_CAP
    cache_dir: str | None = None
    output: str | None = None
    format: str | None = None

    def __post_init__(self):
        if not self.x_grid or list(self.x_grid) != sorted(self.x_grid):
            raise ValueError("x grid must be ascending")
        if min(self.x_grid) < 10:
            raise ValueError("every x in the grid must be >= 10")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are exit code 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _cache_dir(args) -> str | None:
    return args.cache_dir or os.environ.get("WDYN_CACHE_DIR") or None


def _workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get("WDYN_WORKERS")
    return max(1, int(env)) if env else 1


def _grid(text: str) -> list[int]:
    try:
        grid = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad x grid {text!r}; expected a,b,c")
    if not grid or any(x < 10 for x in grid) or grid != sorted(grid):
        raise argparse.ArgumentTypeError("x grid must be ascending integers, each >= 10")
    return grid


def _build(limit: int, args) -> PrimeTable:
    logger.info("building prime table to %d ...", limit)
    return build_prime_table(limit, cache_dir=_cache_dir(args))


def _write_report(args, json_payload: dict, csv_rows: list, csv_header: list[str]) -> None:
    if not args.output:
        return
    path = Path(args.output)
    fmt = args.format or ("csv" if path.suffix.lower() == ".csv" else "json")
    if fmt == "json":
        path.write_text(json.dumps(json_payload, sort_keys=True, indent=2) + "\n")
    else:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(csv_header)
            writer.writerows(csv_rows)
    logger.info("wrote %s", path)


def cmd_sieve(args) -> int:
    table = _build(args.limit, args)
    print(f"limit={table.limit} primes={len(table)}")
    return 0


def cmd_classify(args) -> int:
    n = args.n
    table = _build(max(1000, isqrt(n) + 1), args)
    t = classify(table, n)
    if t is None:
        print(f"{n}: not a product of three primes")
    else:
        print(f"{n} = {t.p1}*{t.p2}*{t.p3} ({t.cls.value})")
    return 0


def cmd_traj(args) -> int:
    n = args.n
    table = _build(max(1000, isqrt(n) + 1), args)
    traj = trajectory(table, n, cap=args.cap)
    if args.json:
        print(json.dumps(traj.to_json_dict(), sort_keys=True))
    else:
        print(" -> ".join(str(t.n) for t in traj.steps))
        if traj.reached:
            print(f"ind = {traj.terminal.index}")
        else:
            print(f"did not reach 20 within cap {traj.terminal.cap}")
    return 0 if traj.reached else 2


def cmd_ind(args) -> int:
    n = args.n
    table = _build(max(1000, isqrt(n) + 1), args)
    traj = trajectory(table, n, cap=args.cap)
    if isinstance(traj.terminal, CapExceeded):
        raise CapExceededError(f"orbit of {n} did not reach 20 within cap {args.cap}", cap=args.cap)
    print(f"ind({n}) = {traj.terminal.index}")
    return 0


def cmd_parents(args) -> int:
    n, x = args.target, args.x
    boot = _build(max(1000, isqrt(n) + 1), args)
    target = classify(boot, n)
    if target is None or not target.in_a3:
        raise ValueError(f"target {n} is not in A3")
    limit = max(1000, 4 * x, isqrt(n) + 1)
    if args.parent_class in ("b3", "any") and target.cls == TripleClass.B3:
        a, b, c = target.primes
        q = c if a == b else a
        limit = max(limit, 2 * x + q)
    table = _build(limit, args)
    query = ParentQuery(target=target, x=x, parent_class=args.parent_class)
    parents = find_parents(table, query, use_oracle=args.oracle)
    print(f"target {n} = {target.p1}*{target.p2}*{target.p3} ({target.cls.value})")
    print(f"{args.parent_class}-parents in ({x}, {2 * x}]: count={len(parents)}")
    if args.list:
        for t in parents:
            print(f"  {t.p1}*{t.p2}*{t.p3} = {t.n} ({t.cls.value})")
    return 0


def cmd_census(args) -> int:
    mode = args.mode
    grid = args.x_grid if args.x_grid is not None else (
        [300, 1000, 3000, 10000] if mode == "thm3" else [300, 1000, 3000]
    )
    if mode in ("thm1", "thm2") and not args.allow_large:
        too_big = [x for x in grid if x > CENSUS_X_CAP_C3]
        if too_big:
            raise ValueError(
                f"x={too_big[0]} exceeds the default cap {CENSUS_X_CAP_C3} for triple "
                f"censuses ({mode}); pass --allow-large to run anyway"
            )
    config = ExperimentConfig(
        x_grid=tuple(grid), mode=mode, workers=_workers(args),
        cache_dir=_cache_dir(args), output=args.output, format=args.format,
    )
    table = _build(4 * max(config.x_grid) + 1, args)
    print(f"{'x':>8} {'target':>20} {'count':>7} {'bound':>16} {'ratio':>12}")
    censuses = []
    for x in config.x_grid:
        logger.info("census mode=%s x=%d workers=%d ...", mode, x, config.workers)
        if mode == "thm3":
            census = census_b3(table, x, workers=config.workers)
        else:
            census = census_c3(table, x, mode=mode, workers=config.workers)
        censuses.append(census)
        const = census.constant()
        target, count = census.argmax
        print(
            f"{x:>8} {target:>20} {count:>7} {const.bound_value:>16.6f} "
            f"{const.ratio:>12.6f}"
        )
    payload = {"mode": mode, "results": [c.to_json_dict() for c in censuses]}
    csv_rows = [(c.x, t, n) for c in censuses for t, n in c.to_csv_rows()]
    _write_report(args, payload, csv_rows, ["x", "target", "count"])
    return 0


def cmd_lemma2(args) -> int:
    try:
        lines = Path(args.file).read_text().split()
    except OSError as exc:
        raise CacheError(f"cannot read {args.file}: {exc}") from exc
    values = [int(tok) for tok in lines]
    sample = SequenceSample.from_values(values, bound=args.N)
    report = residue_count_variance(sample, args.X)
    print(
        f"X={args.X} N={sample.bound} Z={sample.size} lhs={report.lhs} "
        f"bound={report.bound_value} ratio={report.ratio!r}"
    )
    _write_report(args, report.to_json_dict(), [report.to_csv_row()], ["X", "lhs", "bound", "ratio"])
    return 0


def cmd_lemma3(args) -> int:
    grid = args.x_grid if args.x_grid is not None else [1000, 10000, 100000]
    config = ExperimentConfig(
        x_grid=tuple(grid), mode=args.method,
        cache_dir=_cache_dir(args), output=args.output, format=args.format,
    )
    table = _build(2 * max(config.x_grid), args)
    print(f"{'x':>8} {'lhs':>24} {'bound':>18} {'ratio':>12}")
    reports = []
    for x in config.x_grid:
        logger.info("progression variance x=%d ...", x)
        report = prime_progression_variance(table, x, method=args.method)
        reports.append(report)
        print(f"{x:>8} {str(report.lhs):>24} {report.bound_value:>18.4f} {report.ratio:>12.6f}")
    payload = {"results": [r.to_json_dict() for r in reports]}
    _write_report(args, payload, [r.to_csv_row() for r in reports], ["x", "lhs", "bound", "ratio"])
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="wdyn", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None, help="sieve cache directory (or WDYN_CACHE_DIR)")
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--output", default=None, help="write a JSON/CSV report here")
    output.add_argument("--format", choices=("json", "csv"), default=None, help="report format (default: by extension)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", parents=[common], help="build (and cache) a prime table")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("classify", parents=[common], help="class of n: c3, b3, d3, or not a triple")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("traj", parents=[common], help="orbit of n under w")
    p.add_argument("n", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--json", action="store_true", help="print the trajectory as JSON")
    p.set_defaults(func=cmd_traj)

    p = sub.add_parser("ind", parents=[common], help="steps for the orbit of n to reach 20")
    p.add_argument("n", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_ind)

    p = sub.add_parser("parents", parents=[common], help="enumerate parents of a target")
    p.add_argument("target", type=int)
    p.add_argument("--x", type=int, required=True, help="parents drawn from primes in (x, 2x]")
    p.add_argument("--class", dest="parent_class", choices=("c3", "b3", "any"), default="any")
    p.add_argument("--list", action="store_true", help="print every parent")
    p.add_argument("--oracle", action="store_true", help="force the brute-force reference path")
    p.set_defaults(func=cmd_parents)

    p = sub.add_parser("census", parents=[common, output], help="parent census over an x grid")
    p.add_argument("--mode", choices=("thm1", "thm2", "thm3"), required=True)
    p.add_argument("--x-grid", type=_grid, default=None, help="comma-separated ascending x values")
    p.add_argument("--workers", type=int, default=None, help="parallel workers (or WDYN_WORKERS)")
    p.add_argument("--allow-large", action="store_true", help="lift the x cap on triple censuses")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("lemma2", parents=[common, output], help="residue-count variance of a sample file")
    p.add_argument("--file", required=True, help="input file, one integer per line")
    p.add_argument("--X", type=int, required=True, help="modulus cutoff")
    p.add_argument("--N", type=int, default=None, help="universe bound (default: max value)")
    p.set_defaults(func=cmd_lemma2)

    p = sub.add_parser("lemma3", parents=[common, output], help="prime progression variance over an x grid")
    p.add_argument("--x-grid", type=_grid, default=None)
    p.add_argument("--method", choices=("auto", "exact", "float"), default="auto")
    p.set_defaults(func=cmd_lemma3)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CoverageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
