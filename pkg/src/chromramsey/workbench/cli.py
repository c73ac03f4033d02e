"""Command-line workbench.

Exit codes: 0 ok, 1 bad input or failed precondition, 2 internal invariant
failure (including campaign failures), 3 size cap or time limit.
"""

from __future__ import annotations

import argparse
import signal
import sys

from ..errors import ChromRamseyError, InputError, InvariantError, ResourceError
from ..hypercore import DEFAULT_VERTEX_CAP, EdgePartition, chromatic_number, greedy_coloring_with_witnesses
from ..intersect import one_intersection_graph, partition_from_igraph_coloring, structure_decompose
from ..lift import color_via_intersection, lift_details
from ..ramsey import assemble_lower_witness, gen_matching_extremal, gen_star_witness, gen_two_factor_split, witness_errors
from ..skeleton import build_skeleton
from . import campaigns, fileio, oracles
from .enumerate import enumerate_hypergraphs


def _load(args) -> fileio.HypergraphFile:
    if not args.input:
        raise InputError("an input file is required (-i FILE, or -i - for stdin)")
    return fileio.read_file(args.input)


def _need_partition(f: fileio.HypergraphFile) -> EdgePartition:
    if f.partition is None:
        raise InputError("input file has no 'colors t' partition block")
    return f.partition


def _emit(args, text_lines, payload) -> None:
    if args.format == "json":
        print(fileio.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def cmd_chi(args):
    H = _load(args).H
    if args.greedy:
        order = list(range(H.n))
        if args.greedy == "random":
            import random

            random.Random(args.seed).shuffle(order)
        elif args.greedy == "maxdeg":
            order.sort(key=lambda v: (-H.degree(v), v))
        gw = greedy_coloring_with_witnesses(H, order)
        _emit(
            args,
            [f"greedy {gw.p}", " ".join(map(str, gw.coloring))],
            {
                "greedy_colors": gw.p,
                "coloring": list(gw.coloring),
                "witnesses": [{"i": i, "j": j, "edge": e} for (i, j), e in sorted(gw.witnesses.items())],
            },
        )
        return 0
    chi, c = chromatic_number(H, cap=args.cap)
    _emit(args, [f"chi {chi}", " ".join(map(str, c))], {"chi": chi, "coloring": list(c)})
    return 0


def cmd_igraph(args):
    G = one_intersection_graph(_load(args).H)
    if args.format == "json":
        print(fileio.dumps(fileio.hypergraph_to_json(G)))
    else:
        sys.stdout.write(fileio.format_text(G))
    return 0


def cmd_decompose(args):
    dec = structure_decompose(_load(args).H)
    lines = []
    for p in dec.parts:
        if p.kind == "B":
            lines.append(f"B{p.k} base {p.base[0]} {p.base[1]} edges {' '.join(map(str, p.edges))}")
        elif p.kind == "K":
            lines.append(f"K on {' '.join(map(str, p.vertices))} edges {' '.join(map(str, p.edges))}")
        else:
            lines.append(f"trivial {p.vertices[0]}")
    payload = [
        {"kind": p.kind, "vertices": list(p.vertices), "edges": list(p.edges), **({"base": list(p.base)} if p.base else {})}
        for p in dec.parts
    ]
    _emit(args, lines, {"parts": payload})
    return 0


def _partition_or_optimal(f: fileio.HypergraphFile, cap: int) -> EdgePartition:
    if f.partition is not None:
        return f.partition
    t, c = chromatic_number(one_intersection_graph(f.H), cap=cap)
    return partition_from_igraph_coloring(f.H, c)


def cmd_skeleton(args):
    f = _load(args)
    S = build_skeleton(f.H, _partition_or_optimal(f, args.cap))
    print(fileio.dumps(fileio.skeleton_to_json(S)))
    return 0


def cmd_lift(args):
    f = _load(args)
    if f.partition is None:
        t, c = color_via_intersection(f.H, cap=args.cap)
        extra = {}
    else:
        res = lift_details(f.H, f.partition)
        t, c = res.t, res.coloring
        extra = {"switches": res.skeleton.switches, "odd_branch": res.context is not None}
    payload = {"t": t, "colors_used": c.m, "coloring": list(c), "certificate": fileio.coloring_certificate(f.H, c), **extra}
    if args.format == "json":
        print(fileio.dumps(payload))
    else:
        sys.stdout.write(fileio.format_text(f.H, f.partition, c))
    return 0


def cmd_find(args):
    f = _load(args)
    P = _need_partition(f)
    params = {"k": args.k, "t": P.t, "r": f.H.r, "shape": args.shape}
    kind = {"matching": "matching", "matching2": "matching2", "star": "star", "tree": "tree", "two-star": "two-star"}[args.what]
    chi = None if kind in ("matching", "two-star") else chromatic_number(f.H, cap=args.cap)[0]
    w, T = campaigns.run_finder(kind, f.H, P, params, chi)
    errs = witness_errors(f.H, P, w, T)
    if errs:
        raise InvariantError(f"finder output failed validation: {errs}")
    payload = fileio.witness_to_json(w)
    _emit(args, [f"{w.kind} class {w.class_index}"] + [" ".join(map(str, f.H.edges[i])) for i in w.edge_indices], payload)
    return 0


def cmd_witness(args):
    if args.what == "matching-extremal":
        H, P = gen_matching_extremal(args.r, args.k, args.t)
    elif args.what == "star":
        H = gen_star_witness(args.r, args.k)
        P = EdgePartition.single(H.m)
    elif args.what == "two-factor":
        H, P = gen_two_factor_split(args.k)
    else:
        params = {"r": args.r, "k": args.k, "t": args.t}
        if args.lower_kind == "two-factor":
            params = {"k": args.k}
        elif args.lower_kind == "star":
            params = {"r": args.r, "k": args.k}
        elif args.lower_kind == "searched":
            params = {"N": args.N, "r": args.r, "tree": args.tree_kind, "k": args.k, "t": args.t}
        lw = assemble_lower_witness(args.lower_kind, **params)
        H, P = lw.H, lw.P
        if args.format == "json":
            print(fileio.dumps({
                "kind": lw.kind, "params": lw.params, "chi_host": lw.chi, "lower_bound": lw.lower,
                "hypergraph": fileio.hypergraph_to_json(H), "partition": fileio.partition_to_json(P),
            }))
        else:
            print(f"# chi(K_{H.n}^{H.r}) = {lw.chi}, so the chromatic Ramsey number is at least {lw.lower}")
            sys.stdout.write(fileio.format_text(H, P))
        return 0
    if args.format == "json":
        print(fileio.dumps({"hypergraph": fileio.hypergraph_to_json(H), "partition": fileio.partition_to_json(P)}))
    else:
        sys.stdout.write(fileio.format_text(H, P))
    return 0


def cmd_oracle(args):
    f = _load(args)
    T = campaigns.tree_from_spec(args.shape, f.H.r, args.k) if args.kind == "tree" else None
    if args.what == "mono":
        found, where = oracles.oracle_has_mono(f.H, _need_partition(f), args.kind, args.k, T)
        payload = {"found": found}
        if found:
            payload.update({"class": where[0], "edges": where[1]})
        _emit(args, [f"found {str(found).lower()}"] + ([f"class {where[0]} edges {' '.join(map(str, where[1]))}"] if found else []), payload)
        return 0
    found, P = oracles.oracle_exists_avoiding_partition(f.H, args.kind, args.k, args.t, T)
    if args.format == "json":
        print(fileio.dumps({"exists": found, **({"partition": fileio.partition_to_json(P)} if found else {})}))
    else:
        print(f"# avoiding {args.t}-coloring exists: {str(found).lower()}")
        if found:
            sys.stdout.write(fileio.format_text(f.H, P))
    return 0


def cmd_verify(args):
    if args.what in ("lift", "thm6"):
        rep = campaigns.verify_lift_exhaustive(args.n_max, jobs=args.jobs, n_min=args.n_min, timeout=args.timeout_sec)
    else:
        params = {"r": args.r, "k": args.k, "t": args.t, "shape": args.shape}
        if args.source == "complete":
            corpus = {"source": "complete", "N": args.N, "partitions": args.partitions}
        elif args.source == "enumerate":
            corpus = {"source": "enumerate", "n": args.n_max, "partitions": "all" if args.partitions <= 0 else args.partitions}
        else:
            corpus = {"source": "random", "hosts": args.hosts, "partitions": args.partitions, "n_min": args.n_min, "n_max": args.n_max}
        rep = campaigns.verify_bound(args.bound, params, corpus, seed=args.seed, jobs=args.jobs, timeout=args.timeout_sec)
    d = rep.to_dict(timing=args.timing)
    if args.format == "json":
        print(fileio.dumps(d))
    else:
        print(f"{d['campaign']}: {d['instances']} instances, {len(d['failures'])} failures")
        for key, val in d["tallies"].items():
            print(f"  {key}: {val}")
        for fail in d["failures"][:20]:
            print(f"  FAIL {fail['instance']}: {fail['message']}")
    return 0 if rep.ok else 2


def cmd_enum(args):
    count = 0
    for H in enumerate_hypergraphs(args.r, args.n, dedup=args.dedup):
        count += 1
        if not args.count_only:
            sys.stdout.write(fileio.format_text(H))
            print("---")
    if args.count_only or args.format == "json":
        _emit(args, [str(count)], {"r": args.r, "n": args.n, "count": count, "dedup": args.dedup})
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="hypergraph file ('-' for stdin)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=campaigns.default_jobs(), help=f"worker processes (env {campaigns.JOBS_ENV})")
    common.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP, help="vertex cap for exact coloring")
    common.add_argument("--timeout-sec", type=float, default=None)

    parser = argparse.ArgumentParser(prog="chromramsey", description="Chromatic Ramsey workbench for uniform hypergraphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", parents=[common], help="exact chromatic number")
    p.add_argument("--greedy", choices=("input", "random", "maxdeg"), help="greedy coloring with witnesses instead")
    p.set_defaults(func=cmd_chi)
    sub.add_parser("igraph", parents=[common], help="1-intersection graph").set_defaults(func=cmd_igraph)
    sub.add_parser("decompose", parents=[common], help="B/K structure of a 1-intersection-free triple system").set_defaults(func=cmd_decompose)
    sub.add_parser("skeleton", parents=[common], help="matching skeleton (JSON)").set_defaults(func=cmd_skeleton)
    sub.add_parser("lift", parents=[common], help="color a triple system through its 1-intersection graph").set_defaults(func=cmd_lift)

    p = sub.add_parser("find", parents=[common], help="monochromatic copy finders")
    p.add_argument("what", choices=("matching", "matching2", "star", "tree", "two-star"))
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--shape", choices=("star", "path", "matching"), default="star", help="tree shape for 'tree'")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("witness", parents=[common], help="extremal colorings")
    p.add_argument("what", choices=("matching-extremal", "star", "two-factor", "lower"))
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--N", type=int, default=5)
    p.add_argument("--lower-kind", choices=("matching", "star", "two-factor", "searched"), default="matching")
    p.add_argument("--tree-kind", choices=oracles.KINDS[:2], default="star")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("oracle", parents=[common], help="brute-force oracles")
    p.add_argument("what", choices=("mono", "avoid"))
    p.add_argument("--kind", choices=oracles.KINDS, default="matching")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--shape", choices=("star", "path", "matching"), default="star")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="verification campaigns")
    p.add_argument("what", choices=("lift", "thm6", "bounds"), help="lift: exhaustive lift check (alias thm6); bounds: finder campaigns")
    p.add_argument("--bound", choices=campaigns.BOUNDS, default="matching2")
    p.add_argument("--source", choices=("random", "complete", "enumerate"), default="random")
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--N", type=int, default=7)
    p.add_argument("--shape", choices=("star", "path", "matching"), default="star")
    p.add_argument("--hosts", type=int, default=20)
    p.add_argument("--partitions", type=int, default=10, help="per host; 0 means all (enumerate source)")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enum", parents=[common], help="enumerate all r-uniform edge sets on n vertices")
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enum)
    return parser


def _alarm(signum, frame):
    raise ResourceError("time limit exceeded")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.timeout_sec and hasattr(signal, "SIGALRM"):
        signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, args.timeout_sec)
    try:
        return args.func(args)
    except ChromRamseyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    finally:
        if args.timeout_sec and hasattr(signal, "SIGALRM"):
            signal.setitimer(signal.ITIMER_REAL, 0)


if __name__ == "__main__":
    sys.exit(main())
