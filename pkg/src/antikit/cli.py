"""Command-line entry points.

Subcommands mirror the library: reachability (`ood`), antimatchings,
tree decomposition and packing, generators for the stock constructions,
exact embedding, and the verification harness.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .antimatching import AntimatchingRequest, find_antimatching, find_bounded_antimatching
from .antiwalk import reach_from
from .digraph import GraphError, format_oedge, load_graph, parse_oedge
from .embed import embed_exact
from .gadgets import (
    AntiSubdivisionSpec,
    blowup,
    build_antisubdivision,
    burr_graph,
    directed_triangle,
    four_copy,
    peel_pseudo,
    transitive_tournament,
)
from .harness import VerificationJob, report_emit, run
from .packing import PackingInstance, pack
from .treedecomp import RootedAntiTree, beta_decompose


def _fmt_dist(x) -> str:
    return "inf" if math.isinf(x) else str(x)


def _parse_range(text: str) -> tuple[int, ...]:
    """Accept '4', '2..5' (inclusive), or '1,3,5'."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(part) for part in text.split(",") if part)


def _cmd_ood(args) -> int:
    g = load_graph(args.graph)
    report = reach_from(g, args.source)
    for v in range(g.n):
        print(f"{v} {_fmt_dist(report.ood[v])} {_fmt_dist(report.oid[v])}")
    return 0


def _cmd_antimatching(args) -> int:
    g = load_graph(args.graph)
    req = AntimatchingRequest(t=args.t, anchor=args.anchor)
    finder = find_bounded_antimatching if args.bound else find_antimatching
    got = finder(g, req)
    report = reach_from(g, args.anchor)
    for a, b in got.edges:
        print(f"{a} {b} ood={_fmt_dist(report.ood[a])}")
    return 0


def _cmd_decompose(args) -> int:
    with open(args.tree) as fh:
        tree = RootedAntiTree.from_json(fh.read())
    decomp = beta_decompose(tree, args.beta)
    decomp.validate(tree)
    obj = {
        "beta": decomp.beta,
        "w": sorted(decomp.w_set),
        "pieces": [
            {"root": piece.root, "vertices": sorted(piece.vertices)}
            for piece in decomp.trees
        ],
    }
    print(json.dumps(obj, sort_keys=True, indent=2))
    return 0


def _cmd_pack(args) -> int:
    with open(args.instance) as fh:
        inst = PackingInstance.from_json(fh.read())
    plan = pack(inst, check=not args.no_check)
    obj = plan.to_json_obj()
    obj["bin_sums"] = [list(pq) for pq in plan.bin_sums(inst)]
    print(json.dumps(obj, sort_keys=True, indent=2))
    return 0


def _parse_lengths(h: int, text: str) -> dict[tuple[int, int], int]:
    values = [int(part) for part in text.split(",") if part]
    pairs = [(i, j) for i in range(h) for j in range(i + 1, h)]
    if len(values) != len(pairs):
        raise ValueError(
            f"need {len(pairs)} lengths for h={h} (pairs in sorted order), got {len(values)}"
        )
    return dict(zip(pairs, values))


def _cmd_gen(args) -> int:
    if args.kind == "triangle-blowup":
        g = blowup(directed_triangle(), args.ell)
    elif args.kind == "burr":
        g = burr_graph(args.k)
    elif args.kind == "tt":
        g = transitive_tournament(args.order)
    elif args.kind == "antisubdivision":
        spec = AntiSubdivisionSpec.make(
            args.order, _parse_lengths(args.order, args.lengths), args.root_role
        )
        built = build_antisubdivision(spec)
        g = built.graph
        print(
            f"branch vertices: {' '.join(map(str, built.branch_vertices))}; "
            f"long: {built.long}"
        )
    elif args.kind == "gadget":
        d_prime = load_graph(args.input)
        g, gmap = four_copy(d_prime)
        with open(args.out + ".map.json", "w") as fh:
            fh.write(gmap.to_json() + "\n")
    elif args.kind == "peel":
        with open(args.input) as fh:
            d = parse_oedge(fh.read(), allow_two_cycles=True)
        g = peel_pseudo(d, args.k)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(args.kind)
    with open(args.out, "w") as fh:
        fh.write(format_oedge(g))
    print(f"wrote {args.out}: {g.n} vertices, {g.edge_count()} edges")
    return 0


def _cmd_embed(args) -> int:
    pattern = load_graph(args.pattern)
    host = load_graph(args.host)
    pin = None
    if args.pin is not None:
        if args.vstar is None:
            raise ValueError("--pin needs --vstar")
        with open(args.vstar) as fh:
            vstar = [int(tok) for tok in fh.read().split()]
        pin = (args.pin, vstar)
    found = embed_exact(pattern, host, pin)
    if found is None:
        print("NOT FOUND")
        return 1
    for p, v in enumerate(found.image):
        print(f"{p} {v}")
    return 0


def _cmd_verify(args) -> int:
    job = VerificationJob(
        statement=args.statement,
        n_range=_parse_range(args.n),
        k_range=_parse_range(args.k),
        mode="exhaustive" if args.exhaustive else "sampled",
        seed=args.seed,
        sample_count=args.samples,
        edge_prob=args.edge_prob,
        eta=args.eta,
        canonical=args.canonical,
    )
    report = run(job)
    if args.out:
        report_emit(report, args.out)
    verdict = "PASS" if report.passed else "FAIL"
    print(
        f"{verdict} {job.statement}: {report.instances_checked} instances, "
        f"{len(report.counterexamples)} counterexamples, {report.elapsed_ms} ms"
    )
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antikit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ood", help="out-out / out-in walk distances from a source")
    p.add_argument("graph")
    p.add_argument("source", type=int)
    p.set_defaults(func=_cmd_ood)

    p = sub.add_parser("antimatching", help="anchored connected antimatching")
    p.add_argument("graph")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--anchor", type=int, required=True)
    p.add_argument("--bound", action="store_true", help="enforce the 8t distance bound")
    p.set_defaults(func=_cmd_antimatching)

    p = sub.add_parser("decompose", help="separator decomposition of a rooted antitree")
    p.add_argument("tree", help="RootedAntiTree JSON file")
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("pack", help="two-dimensional balanced packing")
    p.add_argument("instance", help="PackingInstance JSON file")
    p.add_argument("--no-check", action="store_true", help="skip hypothesis checks")
    p.set_defaults(func=_cmd_pack)

    p = sub.add_parser("gen", help="write a stock construction as an oedge file")
    gensub = p.add_subparsers(dest="kind", required=True)
    q = gensub.add_parser("triangle-blowup")
    q.add_argument("--ell", type=int, required=True)
    q.add_argument("--out", required=True)
    q = gensub.add_parser("burr")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--out", required=True)
    q = gensub.add_parser("tt")
    q.add_argument("--order", type=int, required=True, help="number of vertices")
    q.add_argument("--out", required=True)
    q = gensub.add_parser("antisubdivision")
    q.add_argument("--order", type=int, required=True, help="branch vertex count")
    q.add_argument(
        "--lengths",
        required=True,
        help="comma list over branch pairs in sorted order, e.g. 1,2,3",
    )
    q.add_argument("--root-role", choices=("source", "sink"), default="source")
    q.add_argument("--out", required=True)
    q = gensub.add_parser("gadget")
    q.add_argument("--input", required=True, help="oedge file for the base graph")
    q.add_argument("--out", required=True)
    q = gensub.add_parser("peel")
    q.add_argument("--input", required=True, help="oedge file, 2-cycles allowed")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--out", required=True)
    for q in gensub.choices.values():
        q.set_defaults(func=_cmd_gen)

    p = sub.add_parser("embed", help="exact embedding search")
    p.add_argument("pattern")
    p.add_argument("host")
    p.add_argument("--pin", type=int, default=None, help="pattern vertex to pin")
    p.add_argument("--vstar", default=None, help="file of allowed host vertices")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("verify", help="run a verification job")
    p.add_argument("statement")
    p.add_argument("--n", default="4", help="vertex counts: '4', '3..5', or '3,5'")
    p.add_argument("--k", default="1,2,3", help="edge parameter range")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edge-prob", type=float, default=0.6)
    p.add_argument("--eta", type=float, default=0.1)
    p.add_argument("--canonical", action="store_true", help="filter isomorphic hosts")
    p.add_argument("--out", default=None, help="directory for report emission")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
