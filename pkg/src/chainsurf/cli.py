"""Command-line interface.

Exit codes: 0 success, 2 domain error, 3 certification refused, 4 numerical
non-convergence.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import formats, hypgeom
from .certify import certify_systole
from .counting import girth_probability_limit, pairing_girth_probability
from .errors import ChainsurfError
from .graphs import build_small_eps_chain, girth
from .pipeline import bound_report, certificate_fields, construct_chain, rows_to_csv, sweep
from .surface import assemble


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_gen_graph(args) -> int:
    if args.small_eps:
        graph = build_small_eps_chain(args.genus)
        meta = {"genus": args.genus, "family": "small-eps", "girth": 1, "seed": args.seed}
    else:
        built = construct_chain(args.genus, args.epsilon, args.seed, args.v0)
        graph = built.graph
        meta = built.meta
        meta["girth"] = girth(graph)
    meta["epsilon"] = args.epsilon
    formats.write_graph(args.out, graph, meta) if args.out else _emit(formats.dumps(formats.graph_document(graph, meta)), None)
    return 0


def cmd_certify(args) -> int:
    graph, _ = formats.read_graph(args.graph)
    cert = certify_systole(assemble(graph, args.epsilon))
    _emit(formats.dumps(formats.certificate_document(certificate_fields(cert), graph)), args.out)
    return 0 if cert.certified else 3


def cmd_bound(args) -> int:
    report = bound_report(args.genus, args.k, args.epsilon, args.v0, args.seed, not args.no_pants)
    if args.format == "csv":
        _emit(rows_to_csv([report.csv_row()]), args.out)
    else:
        _emit(formats.dumps(report.to_dict()), args.out)
    return 0


def cmd_sweep(args) -> int:
    rows = sweep(args.epsilon, args.k, args.genus, args.seed, args.v0, not args.no_pants, args.workers)
    _emit(rows_to_csv(rows), args.out)
    return 0


def cmd_montecarlo(args) -> int:
    p, se = pairing_girth_probability(args.vertices, args.girth, args.trials, args.seed, args.workers)
    limit = girth_probability_limit(args.girth)
    doc = {
        "vertices": args.vertices,
        "min_girth": args.girth,
        "trials": args.trials,
        "seed": args.seed,
        "estimate": p,
        "stderr": se,
        "wormald_limit": limit,
        "z_score": (p - limit) / se if se > 0 else 0.0,
    }
    _emit(formats.dumps(doc), args.out)
    return 0


def cmd_minimize_collar(args) -> int:
    w = args.half_width if args.half_width is not None else hypgeom.collar_half_width(args.length)
    profile = hypgeom.CollarProfile(args.length, w, args.a, args.b)
    closed = hypgeom.collar_energy_min(profile)
    brute = hypgeom.collar_energy_bruteforce(profile, args.grid)
    gap = abs(brute - closed) / closed if closed else abs(brute)
    doc = {
        "length": args.length,
        "half_width": w,
        "a": args.a,
        "b": args.b,
        "grid": args.grid,
        "closed_form": closed,
        "bruteforce": brute,
        "relative_gap": gap,
    }
    _emit(formats.dumps(doc), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainsurf", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-graph", help="build the chained cubic graph G_g")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--v0", type=int, default=None, help="override the block size")
    p.add_argument("--small-eps", action="store_true", help="use the loop/double-edge path family (girth 1)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_graph)

    p = sub.add_parser("certify", help="systole certificate for a graph file")
    p.add_argument("graph")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bound", help="upper and lower bounds on lambda_k")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--v0", type=int, default=None)
    p.add_argument("--no-pants", action="store_true", help="skip the pants-level model")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="bounds over a list of genera, as CSV")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--genus", type=int, nargs="*", default=[])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--v0", type=int, default=None)
    p.add_argument("--no-pants", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("montecarlo-girth", help="girth probability of random cubic pairings")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--girth", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("minimize-collar", help="closed-form vs brute-force collar energy")
    p.add_argument("--length", type=float, required=True, help="central geodesic length")
    p.add_argument("--half-width", type=float, default=None, help="defaults to the standard collar width")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--out")
    p.set_defaults(func=cmd_minimize_collar)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ChainsurfError as exc:
        print(f"chainsurf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
