"""Command-line interface.

    hypack eval --p 5.1955          density report as JSON
    hypack optimize [--tol T]       location of the density maximum
    hypack sweep --out FILE         density table as CSV
    hypack geometry --s 1.2         coordinates, forms and Gram matrices
    hypack decompose FIXTURE.json   cut a cell into truncated simplices
    hypack verify                   run the self-checks

Exit codes: 0 success, 1 failed check, 2 usage or domain error, 3 I/O error.
JSON floats are written in shortest round-trip form, CSV floats with 17
significant digits.
"""

import argparse
import csv
import json
import sys

from . import checks, packing
from .errors import DecompositionError, DomainError, GeometryError
from .fixtures import FixtureError, load_fixture
from .montecarlo import DEFAULT_SAMPLES, DEFAULT_SEED
from .simplex import DOMAIN_TEXT, P_MAX, P_MIN, build_simplex, s_to_p
from .truncation import (
    decompose,
    is_truncated_simplex,
    outer_vertex_count,
    truncate_outer_vertices,
)

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def _fmt(x):
    return "%.17g" % x


def _sample_count(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v >= 1 or v != int(v):
        raise argparse.ArgumentTypeError("sample count must be a positive integer")
    return int(v)


def build_parser():
    ap = argparse.ArgumentParser(prog="hypack", description="Hyperball packing densities in truncated 4-simplices")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="density report at one parameter")
    g = ev.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", type=float, help="Coxeter parameter p")
    g.add_argument("--s", type=float, help="vertex radius s in the Klein model")

    op = sub.add_parser("optimize", help="maximise the density over p")
    op.add_argument("--tol", type=float, default=1e-10)

    sw = sub.add_parser("sweep", help="density table over a range of p")
    sw.add_argument("--from", dest="p_from", type=float, default=P_MIN)
    sw.add_argument("--to", dest="p_to", type=float, default=P_MAX)
    sw.add_argument("--steps", type=int, default=1000)
    sw.add_argument("--out", default="-", help="CSV path, '-' for standard output")

    ge = sub.add_parser("geometry", help="simplex coordinates and Gram matrices")
    ge.add_argument("--s", type=float, required=True)
    ge.add_argument("--format", choices=("json",), default="json")

    de = sub.add_parser("decompose", help="decompose a fixture cell")
    de.add_argument("fixture_path")

    ve = sub.add_parser("verify", help="run the self-checks")
    ve.add_argument("--mc_samples", type=_sample_count, default=DEFAULT_SAMPLES)
    ve.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return ap


def cmd_eval(args, out):
    p = args.p if args.p is not None else s_to_p(args.s)
    _emit(packing.density(p).to_dict(), out)
    return EXIT_OK


def cmd_optimize(args, out):
    if not 1e-14 <= args.tol <= 1e-3:
        raise UsageError(f"--tol must lie in [1e-14, 1e-3], got {args.tol!r}")
    _emit(packing.maximize(args.tol).to_dict(), out)
    return EXIT_OK


def _write_sweep(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(packing.CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(x) for x in r.csv_row()])


def cmd_sweep(args, out):
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    rows = packing.sweep(args.p_from, args.p_to, args.steps)
    if args.out == "-":
        _write_sweep(rows, out)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            _write_sweep(rows, fh)
    return EXIT_OK


def cmd_geometry(args, out):
    _emit(build_simplex(args.s).to_dict(), out)
    return EXIT_OK


def cmd_decompose(args, out):
    fx = load_fixture(args.fixture_path)
    P = fx.polytope()
    if outer_vertex_count(P):
        n = outer_vertex_count(P)
        P = truncate_outer_vertices(P)
        _emit({"event": "truncate", "outer_vertices": n}, out)
    trace = []
    try:
        pieces = decompose(P, fx.height, trace=trace)
    except DecompositionError as exc:
        for e in exc.trace:
            _emit({"event": "cut", **e}, out)
        raise
    for e in trace:
        _emit({"event": "cut", **e}, out)
    _emit({
        "event": "result",
        "cuts": len(trace),
        "pieces": len(pieces),
        "vertex_counts": [len(q.vertices) for q in pieces],
        "truncated_simplices": [is_truncated_simplex(q) for q in pieces],
    }, out)
    return EXIT_OK


def cmd_verify(args, out):
    results = checks.run_all(args.mc_samples, args.seed)
    for r in results:
        _emit(r.to_dict(), out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK


COMMANDS = {
    "eval": cmd_eval,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "geometry": cmd_geometry,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except FixtureError as exc:
        print(f"hypack: invalid fixture at {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        msg = str(exc)
        if DOMAIN_TEXT not in msg:
            msg += f" (p must lie in the {DOMAIN_TEXT})"
        print(f"hypack: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, GeometryError, DecompositionError) as exc:
        print(f"hypack: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"hypack: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
