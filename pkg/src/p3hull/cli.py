"""Command line entry point: ``p3hull {gauss,graph,hull,verify,search}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
cap hit, 4 seed vertex not found.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from . import verify as V
from .errors import InvalidParams, LimitExceeded, NotPrimePower, P3HullError
from .gfq import factor_prime_power
from .graphgen import Caps, Family, build_graph, degree_report, export_edge_list
from .hull import Strategy, find_hull_pair, hull, trace_to_dict
from .qcomb import gaussian_binomial
from .subspace import Subspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP, EXIT_NOT_FOUND = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class NotFound(Exception):
    pass


def _caps(args) -> Caps:
    return Caps(max_vertices=args.max_vertices, max_edge_checks=args.max_edge_checks)


def _emit(args, payload: dict, table_lines: list[str]) -> None:
    if args.format == "json":
        json.dump(payload, sys.stdout, indent=2, default=str)
        sys.stdout.write("\n")
    else:
        for line in table_lines:
            print(line)


def _validate_graph_params(args) -> None:
    if args.q < 2:
        raise UsageError("q must be a prime power >= 2")
    if not 1 <= args.k <= args.n:
        raise UsageError(f"need 1 <= k <= n, got n={args.n}, k={args.k}")


# -- subcommands ---------------------------------------------------------------


def cmd_gauss(args) -> int:
    if args.n < 0 or args.k < 0:
        raise UsageError("n and k must be nonnegative")
    factor_prime_power(args.q)
    print(gaussian_binomial(args.n, args.k, args.q))
    return EXIT_OK


def cmd_graph(args) -> int:
    _validate_graph_params(args)
    g = build_graph(args.family, args.q, args.n, args.k, caps=_caps(args), threads=args.threads)
    rep = degree_report(g)
    payload = {"graph": g.name, **rep.as_dict()}
    if args.out:
        edges, sidecar = export_edge_list(g, args.out)
        payload.update(edges_file=str(edges), vertices_file=str(sidecar))
    lines = [f"{g.name}: {rep.vertices} vertices, {rep.edge_count} edges",
             f"degree min={rep.min} max={rep.max} regular={rep.is_regular}"]
    if args.out:
        lines.append(f"wrote {payload['edges_file']} and {payload['vertices_file']}")
    _emit(args, payload, lines)
    return EXIT_OK


def _parse_seed(args, g) -> list[int]:
    if args.seed_forms:
        ids = []
        for text in args.seed_forms:
            try:
                sub = Subspace.from_canonical(text, g.field, g.n)
            except ValueError as exc:
                raise UsageError(f"malformed subspace {text!r}: {exc}") from exc
            v = g.id_of(sub)
            if v is None or sub.dim != g.k:
                raise NotFound(f"{text!r} is not a vertex of {g.name}")
            ids.append(v)
        return ids
    if args.seed == "paper":
        from .constructions import paper_pair

        return [g.id_of(s) for s in paper_pair(g.family, g.q, g.n, g.k)]
    try:
        ids = [int(x) for x in args.seed.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"malformed seed {args.seed!r}; use 'paper' or 'id,id'") from exc
    for v in ids:
        if not 0 <= v < g.num_vertices:
            raise NotFound(f"vertex id {v} not in [0, {g.num_vertices})")
    return ids


def cmd_hull(args) -> int:
    _validate_graph_params(args)
    g = build_graph(args.family, args.q, args.n, args.k, caps=_caps(args), threads=args.threads)
    seed = _parse_seed(args, g)
    H, trace = hull(g, seed)
    info = trace_to_dict(g, trace)
    if args.trace:
        Path(args.trace).write_text(json.dumps(info, indent=1))
    payload = dict(info)
    if not args.full_trace:
        payload.pop("rounds")
        payload["round_sizes"] = [len(r) for r in trace.rounds]
    lines = [f"{g.name} seed {' | '.join(info['seed'])}",
             f"hull = {info['hull_size']}/{g.num_vertices}  is_hull_set={info['is_hull_set']}",
             f"rounds = {info['converged_at']}  sizes = {[len(r) for r in trace.rounds]}"]
    _emit(args, payload, lines)
    return EXIT_OK


def _verify_reports(args):
    t = args.target
    q, n, k = args.q, args.n, args.k
    caps = _caps(args)

    def need(*names):
        missing = [x for x in names if getattr(args, x) is None]
        if missing:
            raise UsageError(f"target {t} needs --{' --'.join(missing)}")

    if t == "all":
        if not args.small:
            raise UsageError("only the --small preset is available for --target all")
        return list(V.small_suite(seed=args.seed))
    if t == "lemma21":
        need("q", "n", "k")
        return [V.verify_counts(q, n, k, None if args.m is None else [args.m])]
    if t == "regularity":
        need("q", "n", "k")
        return [V.verify_regularity(q, n, k, caps=caps)]
    if t == "lemma22":
        need("q", "k")
        if n is None:
            n_values = range(2 * k + 1, 2 * k + 6)
        elif n < 2 * k + 1:
            raise UsageError("lemma22 needs n >= 2k+1")
        else:
            n_values = [n]
        return [V.verify_lemma22(q, k, n_values)]
    if t == "lemma23":
        need("q", "n", "k")
        return [V.verify_lemma23(q, n, k, None if args.m is None else [args.m], caps=caps)]
    if t == "lemma24":
        need("q", "k")
        reps = [V.verify_lemma24(q, k, samples=args.samples, seed=args.seed, caps=caps)]
        return reps
    if t == "lemma25":
        need("q", "k")
        return [V.verify_lemma25(q, k, samples=args.samples, seed=args.seed, caps=caps)]
    if t == "case2count":
        need("q", "k")
        return [V.verify_case2count(q, k, samples=args.samples, seed=args.seed, caps=caps)]
    if t == "thm11":
        need("q", "n", "k")
        return [V.verify_thm11(q, n, k, samples=args.samples, seed=args.seed, caps=caps)]
    if t == "thm12":
        need("q", "n", "k")
        return [V.verify_thm12(q, n, k, caps=caps)]
    if t == "chain":
        need("q", "n", "k")
        return [V.verify_chain(q, n, k, caps=caps)]
    raise UsageError(f"unknown target {t}")


def cmd_verify(args) -> int:
    try:
        reports = _verify_reports(args)
    except InvalidParams as exc:
        raise UsageError(str(exc)) from exc
    ok = all(r.passed for r in reports)
    if args.format == "json":
        json.dump([r.as_dict() for r in reports], sys.stdout, indent=2, default=str)
        sys.stdout.write("\n")
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["target", "params", "pass", "checked", "counterexamples"])
        for r in reports:
            w.writerow([r.target, json.dumps(r.params, default=str), r.passed, r.checked, len(r.counterexamples)])
    else:
        for r in reports:
            print(r.summary())
            for key, val in r.details.items():
                print(f"    {key}: {val}")
            for ce in r.counterexamples:
                print(f"    counterexample: {ce}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search(args) -> int:
    _validate_graph_params(args)
    g = build_graph(args.family, args.q, args.n, args.k, caps=_caps(args), threads=args.threads)
    res = find_hull_pair(g, args.strategy, max_pairs=args.max_pairs, collect_all=args.all,
                         threads=args.threads)
    if res.pair is None:
        _emit(args, {"graph": g.name, "strategy": res.strategy.value, "pair": None,
                     "pairs_checked": res.pairs_checked},
              [f"{g.name}: no hull pair found after {res.pairs_checked} candidates"])
        return EXIT_FAIL
    a, b = res.pair
    payload = {"graph": g.name, "strategy": res.strategy.value, "pair": [a, b],
               "subspaces": [g.vertex(a).canonical(), g.vertex(b).canonical()],
               "rounds": res.trace.converged_at, "pairs_checked": res.pairs_checked}
    if args.all:
        payload["witness_count"] = len(res.witnesses)
        payload["witnesses"] = res.witnesses
    lines = [f"{g.name} [{res.strategy.value}] witness ids {a}, {b}",
             f"  {g.vertex(a).canonical()}", f"  {g.vertex(b).canonical()}",
             f"  rounds={res.trace.converged_at} pairs_checked={res.pairs_checked}"]
    if args.all:
        lines.append(f"  working pairs: {len(res.witnesses)}")
    _emit(args, payload, lines)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def _add_graph_args(p, required=True):
    p.add_argument("--family", type=Family.parse, required=required,
                   help="qkneser or grassmann")
    p.add_argument("--q", type=int, required=required)
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--k", type=int, required=required)


def _add_common(p):
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--max-vertices", type=int, default=Caps.max_vertices)
    p.add_argument("--max-edge-checks", type=int, default=Caps.max_edge_checks)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="p3hull", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gauss", help="Gaussian binomial [n, k]_q")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("graph", help="build a graph, report degrees, export edge list")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--out", help="edge-list path; a .vertices.json sidecar is written next to it")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("hull", help="P3 hull of a seed set")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--seed", default="paper", help="'paper' or comma separated vertex ids")
    p.add_argument("--seed-forms", nargs="+", metavar="FORM",
                   help="seed vertices in canonical form, e.g. '1 0 0 0;0 1 0 0'")
    p.add_argument("--trace", metavar="PATH", help="write the full trace JSON here")
    p.add_argument("--full-trace", action="store_true", help="include round members in the report")
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("verify", help="closed form versus brute force checks")
    p.add_argument("--target", required=True,
                   choices=["lemma21", "lemma22", "lemma23", "lemma24", "lemma25", "case2count",
                            "thm11", "thm12", "chain", "regularity", "all"])
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--samples", type=int, help="random sample size instead of an exhaustive sweep")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for sampled sweeps")
    p.add_argument("--small", action="store_true", help="desk-scale preset (with --target all)")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="search for a hull set of size 2")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--strategy", type=Strategy.parse, default=Strategy.FULL,
                   help="paper, fix-first or full")
    p.add_argument("--max-pairs", type=int, help="budget of hull computations")
    p.add_argument("--all", action="store_true", help="list every working pair (full search)")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, NotPrimePower, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LimitExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except P3HullError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
