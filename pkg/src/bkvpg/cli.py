"""Command-line interface: ``bkvpg {validate,solve,exact,gen,bench,render}``.

Exit codes: 0 success, 1 invalid instance / certificate failure / bad
highlight, 2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction

from .graph import build_graph, build_point_index, edge_list_text
from .grid import (
    DEFAULT_BBOX,
    EmptyInstance,
    Instance,
    InstanceError,
    dumps_instance,
    load_instance,
    point_bound,
)
from .instgen import GenerationFailed, GenParams, default_grid, generate
from .localratio import PIVOT_RULES, MIN_ID, CertificationFailed, SolveReport, fmt_number, solve
from .lp import DEFAULT_TOL, EXACT, FLOAT, lp_text
from .oracle import DEFAULT_CAP, TooLarge, exact_mwis
from .render import UnknownPath, render_svg

log = logging.getLogger("bkvpg")

EXIT_OK, EXIT_INVALID, EXIT_PARSE = 0, 1, 2
BENCH_EXACT_CAP = 18


class _ParseFailure(Exception):
    pass


def _bbox(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) == 1:
        parts = parts * 2
    try:
        w, h = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad bounding box {text!r}, want W or W,H")
    return w, h


def _int_list(text: str) -> list[int]:
    """``"1,2,5"``, ``"1..5"`` or a mix like ``"1..3,8"``; empty string gives []."""
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _int_list_arg(text: str) -> list[int]:
    try:
        return _int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")


def _weights(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight range {text!r}, want lo:hi")
    return lo, hi


def _load(path: str, bbox) -> Instance:
    try:
        return load_instance(path, bbox)
    except (OSError, InstanceError) as e:
        raise _ParseFailure(f"{path}: {e}") from e


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json(doc) -> str:
    return json.dumps(doc) + "\n"


# --- validate ---------------------------------------------------------------

def cmd_validate(args) -> int:
    inst = _load(args.input, args.bbox)
    bad = inst.validate()
    for pid, res in bad.items():
        for v in res.violations:
            print(f"path {pid}: {v}")
    if bad:
        return EXIT_INVALID
    if inst.paths:
        print(f"n={inst.n} k={inst.k} c={inst.c} B={inst.bound}")
    else:
        print(f"n=0 k={inst.k} c=- B=-")
    return EXIT_OK


# --- solve / exact ----------------------------------------------------------

def _empty_report(inst: Instance, rule) -> SolveReport:
    return SolveReport((), Fraction(0), Fraction(0), point_bound(1, inst.k), True, rule)


def cmd_solve(args) -> int:
    inst = _load(args.input, args.bbox)
    bad = inst.validate()
    if bad:
        pid, res = next(iter(bad.items()))
        print(f"path {pid}: {res.violations[0]}", file=sys.stderr)
        return EXIT_INVALID
    if not inst.paths:
        _emit(_json(_empty_report(inst, args.pivot).to_dict()), args.output)
        return EXIT_OK
    try:
        pipe = solve(inst, args.pivot, args.arith, args.tolerance)
    except CertificationFailed as e:
        print(_json({"error": "CertificationFailed", **e.report.to_dict()}), end="")
        return EXIT_INVALID
    if args.lp_dump:
        _emit(lp_text(pipe.lp), args.lp_dump)
    if args.edges:
        _emit(edge_list_text(pipe.graph), args.edges)
    _emit(_json(pipe.report.to_dict()), args.output)
    return EXIT_OK


def cmd_exact(args) -> int:
    inst = _load(args.input, args.bbox)
    bad = inst.validate()
    if bad:
        pid, res = next(iter(bad.items()))
        print(f"path {pid}: {res.violations[0]}", file=sys.stderr)
        return EXIT_INVALID
    graph = build_graph(build_point_index(inst))
    try:
        res = exact_mwis(graph, inst.weights(), cap=args.cap)
    except TooLarge as e:
        print(str(e), file=sys.stderr)
        return EXIT_INVALID
    bound = inst.bound if inst.paths else point_bound(1, inst.k)
    doc = SolveReport(res.best_set, res.best_weight, None, bound, True, None).to_dict()
    _emit(_json(doc), args.output)
    return EXIT_OK


# --- gen --------------------------------------------------------------------

def _gen_params(n, k, c, grid, weights, seed) -> GenParams:
    if grid is None:
        side = default_grid(n, k, c)
        grid = (side, side)
    return GenParams(n, k, c, grid[0], grid[1], weights[0], weights[1], seed)


def cmd_gen(args) -> int:
    try:
        params = _gen_params(args.n, args.k, args.c, args.grid, args.weights, args.seed)
        inst = generate(params)
    except (ValueError, GenerationFailed) as e:
        print(f"gen: {e}", file=sys.stderr)
        return EXIT_INVALID
    _emit(dumps_instance(inst), args.output)
    return EXIT_OK


# --- bench ------------------------------------------------------------------

@dataclass
class BenchRow:
    seed: int
    n: int
    k: int
    c: int | None = None
    bound: int | None = None
    lp_objective: str = ""
    alg_weight: str = ""
    exact_weight: str = ""
    ratio_lp: str = ""
    ratio_opt: str = ""
    runtime_ms: str = ""
    error: str = ""


BENCH_COLUMNS = [f.name for f in fields(BenchRow)]


def _ratio(num, den) -> str:
    if den == 0:
        return "1" if num == 0 else "inf"
    return f"{float(Fraction(num) / Fraction(den)):.9g}"


def bench_cell(cell) -> BenchRow:
    """Generate, solve and (if small enough) solve exactly one instance."""
    n, k, c, grid, weights, seed, arith, exact_cap, pivot, timing = cell
    row = BenchRow(seed, n, k)
    try:
        inst = generate(_gen_params(n, k, c, grid, weights, seed))
        row.c, row.bound = inst.c, inst.bound
        t0 = time.perf_counter()
        pipe = solve(inst, pivot, arith)
        elapsed = (time.perf_counter() - t0) * 1000
        rep = pipe.report
        row.lp_objective = fmt_number(rep.lp_objective)
        row.alg_weight = fmt_number(rep.weight)
        row.ratio_lp = _ratio(rep.lp_objective, rep.weight)
        if n <= exact_cap:
            opt = exact_mwis(pipe.graph, inst.weights(), cap=exact_cap).best_weight
            row.exact_weight = fmt_number(opt)
            row.ratio_opt = _ratio(opt, rep.weight)
        if timing:
            row.runtime_ms = f"{elapsed:.1f}"
    except Exception as e:  # one bad cell must not abort the sweep
        row.error = f"{type(e).__name__}: {e}"
    return row


def bench_rows(ns, ks, cs, seeds, grid=None, weights=(1, 100), arith=None,
               exact_cap=BENCH_EXACT_CAP, pivot=MIN_ID, timing=False, workers=1):
    cells = [
        (n, k, c, grid, weights, seed, arith, exact_cap, pivot, timing)
        for n in ns for k in ks for c in cs for seed in seeds
    ]
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(bench_cell, cells))
    return [bench_cell(cell) for cell in cells]


def bench_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_COLUMNS)
    for r in rows:
        w.writerow(["" if getattr(r, f) is None else getattr(r, f) for f in BENCH_COLUMNS])
    return buf.getvalue()


def cmd_bench(args) -> int:
    rows = bench_rows(
        args.n, args.k, args.c, args.seeds, args.grid, args.weights, args.arith,
        args.exact_cap, args.pivot, args.timing, args.workers,
    )
    _emit(bench_csv(rows), args.output)
    failed = sum(1 for r in rows if r.error)
    if failed:
        log.warning("%d of %d bench cells failed", failed, len(rows))
    return EXIT_OK


# --- render -----------------------------------------------------------------

def cmd_render(args) -> int:
    inst = _load(args.input, args.bbox)
    highlight = list(args.highlight)
    if args.highlight_from:
        try:
            with open(args.highlight_from, encoding="utf-8") as fh:
                highlight += json.load(fh)["selected"]
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise _ParseFailure(f"{args.highlight_from}: {e}") from e
    try:
        svg = render_svg(inst, highlight, args.scale)
    except UnknownPath as e:
        print(e.args[0], file=sys.stderr)
        return EXIT_INVALID
    _emit(svg, args.output)
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--arith", choices=[EXACT, FLOAT], default=None,
                        help="LP arithmetic (default: exact for n <= 64, float beyond)")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOL,
                        help="float-mode feasibility and certificate tolerance")
    common.add_argument("--bbox", type=_bbox, default=DEFAULT_BBOX,
                        help="coordinate bounding box W[,H] (default 1000000)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="bkvpg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check an instance file")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", parents=[common], help="LP + local-ratio rounding")
    s.add_argument("input")
    s.add_argument("--pivot", choices=PIVOT_RULES, default=MIN_ID)
    s.add_argument("--lp-dump", metavar="FILE", help="write the LP in CPLEX LP format")
    s.add_argument("--edges", metavar="FILE", help="write the intersection graph edge list")
    s.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("exact", parents=[common], help="exact branch-and-bound solve")
    s.add_argument("input")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum path count")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("gen", parents=[common], help="generate a random instance")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--c", type=int, default=2)
    s.add_argument("--grid", type=_bbox, default=None,
                   help="grid size W[,H] (default scales with n, k, c)")
    s.add_argument("--weights", type=_weights, default=(1, 100), metavar="LO:HI")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", parents=[common], help="sweep generated instances into CSV")
    s.add_argument("--n", type=_int_list_arg, required=True, metavar="LIST")
    s.add_argument("--k", type=_int_list_arg, default=[1], metavar="LIST")
    s.add_argument("--c", type=_int_list_arg, default=[2], metavar="LIST")
    s.add_argument("--seeds", type=_int_list_arg, default=[1], metavar="LIST",
                   help="e.g. 1..5 or 1,2,7")
    s.add_argument("--grid", type=_bbox, default=None)
    s.add_argument("--weights", type=_weights, default=(1, 100), metavar="LO:HI")
    s.add_argument("--exact-cap", type=int, default=BENCH_EXACT_CAP)
    s.add_argument("--pivot", choices=PIVOT_RULES, default=MIN_ID)
    s.add_argument("--timing", action="store_true",
                   help="fill runtime_ms (makes the CSV non-reproducible)")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("render", parents=[common], help="draw an instance as SVG")
    s.add_argument("input")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--highlight", type=_int_list_arg, default=[], metavar="IDS")
    s.add_argument("--highlight-from", metavar="REPORT",
                   help="highlight the 'selected' ids of a solve report")
    s.add_argument("--scale", type=int, default=24, help="pixels per grid unit")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _ParseFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except EmptyInstance as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
