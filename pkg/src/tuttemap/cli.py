"""Command line front end.

Exit status: 0 on success, 1 on any input problem (unreadable file, parse
failure, violated precondition), 2 when an internal invariant breaks (a
non-cyclic tour, or evaluators that should agree but do not).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .activity import MotionNotCyclicError, motion_function
from .cmap import CombinatorialMap, MapError, embed
from .engines import (
    tutte_deletion_contraction,
    tutte_embedding_activities,
    tutte_order_activities,
    tutte_recursive_map,
    tutte_subgraph_expansion,
)
from .graph import Multigraph
from .mapenum import enumerate_rooted_maps, partition_function
from .poly import BivariatePolynomial
from .spanning import enumerate_spanning_trees

DEFAULT_SEED = 1729

METHODS = ("expansion", "delcon", "order", "embedding", "recursive")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_graph(path: str) -> Multigraph:
    return Multigraph.from_text(_read(path))


def _load_map(path: str, root: str | None) -> CombinatorialMap:
    m = CombinatorialMap.from_text(_read(path))
    if root is not None:
        m = m.with_root(root)
    if m.root is None:
        raise MapError("this command needs a rooted map (root: record or --root)")
    m.validate()
    return m


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _method_polynomials(graph: Multigraph, methods, root: str | None):
    out: dict[str, BivariatePolynomial] = {}
    needs_map = any(m in methods for m in ("embedding", "recursive"))
    emb = embed(graph, root=root) if needs_map else None
    for method in methods:
        if method == "expansion":
            out[method] = tutte_subgraph_expansion(graph)
        elif method == "delcon":
            out[method] = tutte_deletion_contraction(graph)
        elif method == "order":
            out[method] = tutte_order_activities(graph)
        elif method == "embedding":
            out[method] = tutte_embedding_activities(emb)
        else:
            out[method] = tutte_recursive_map(emb)
    return out


def _cmd_tutte(args) -> int:
    graph = _load_graph(args.graph)
    methods = METHODS if args.method == "all" else (args.method,)
    polys = _method_polynomials(graph, methods, args.root)
    lines = [f"{m}: {polys[m]}" for m in methods]
    payload: dict = {"polynomials": {m: polys[m].json_terms() for m in methods}}
    status = 0
    if args.method == "all":
        values = list(polys.values())
        agree = all(v == values[0] for v in values[1:])
        lines.append(f"agreement: {'yes' if agree else 'NO'}")
        payload["agreement"] = agree
        if not agree:
            status = 2
    _emit(args, payload, "\n".join(lines))
    return status


def _resolve_tree(m: CombinatorialMap, tree_arg: str) -> list[str]:
    tokens = [t for t in tree_arg.split(",") if t]
    return [m.edge_ids[m.edge_index(t)] for t in tokens]


def _cmd_tour(args) -> int:
    m = _load_map(args.map, args.root)
    tree = _resolve_tree(m, args.tree)
    order = motion_function(m, tree)
    text = "\n".join([
        "(" + " ".join(order.cycle) + ")",
        "half-edges: " + " < ".join(order.half_edge_order),
        "edges: " + " < ".join(order.edge_order),
    ])
    payload = {
        "tour": list(order.cycle),
        "half_edge_order": list(order.half_edge_order),
        "edge_order": list(order.edge_order),
    }
    _emit(args, payload, text)
    return 0


def _cmd_activities(args) -> int:
    from .activity import embedding_activities
    from .poly import X, Y, ZERO

    m = _load_map(args.map, args.root)
    graph = m.underlying_graph()
    lines = []
    rows = []
    total = ZERO
    for st in enumerate_spanning_trees(graph):
        act = embedding_activities(m, st)
        tree_ids = sorted(st.internal_edges)
        mono = X ** act.internal_count * Y ** act.external_count
        total = total + mono
        lines.append(
            "tree {%s}: internal-active {%s} external-active {%s} -> %s"
            % (
                ",".join(tree_ids),
                ",".join(sorted(act.internal_active)),
                ",".join(sorted(act.external_active)),
                mono,
            )
        )
        rows.append({
            "tree": tree_ids,
            "internal_active": sorted(act.internal_active),
            "external_active": sorted(act.external_active),
            "monomial": mono.json_terms(),
        })
    lines.append(f"total: {total}")
    _emit(args, {"trees": rows, "total": total.json_terms()}, "\n".join(lines))
    return 0


def _cmd_minor(args) -> int:
    m = _load_map(args.map, args.root)
    if args.delete is not None:
        result = m.delete_edge(m.edge_index(args.delete))
    else:
        result = m.contract_edge(m.edge_index(args.contract))
    if result.is_empty:
        raise MapError("the minor is the single-vertex map; nothing to print")
    _emit(args, result.to_json_obj(), result.to_text())
    return 0


def _cmd_euler(args) -> int:
    m = CombinatorialMap.from_text(_read(args.map))
    if args.root is not None:
        m = m.with_root(args.root)
    m.validate()
    chi = m.euler_characteristic()
    _emit(args, {"chi": chi, "genus": m.genus()},
          f"chi: {chi}\ngenus: {m.genus()}")
    return 0


def _cmd_census(args) -> int:
    census = enumerate_rooted_maps(args.edges, args.genus)
    text = "\n".join(m.to_text(line_separator="; ") for m in census)
    _emit(args, {"count": len(census),
                 "maps": [m.to_json_obj() for m in census]}, text)
    return 0


def _cmd_zpoly(args) -> int:
    z = partition_function(args.edges, args.genus)
    _emit(args, {"z": z.json_terms()}, str(z))
    return 0


def _random_embedding(graph: Multigraph, rng: random.Random) -> CombinatorialMap:
    at_vertex = {}
    for e in graph.edge_ids:
        u, v = graph.endpoints(e)
        at_vertex.setdefault(u, []).append(str(e))
        at_vertex.setdefault(v, []).append(str(e) + "'")
    for names in at_vertex.values():
        rng.shuffle(names)
    m = embed(graph, rotations=at_vertex)
    return m.with_root(rng.choice(m.names))


def _cmd_check(args) -> int:
    graph = _load_graph(args.graph)
    rng = random.Random(args.seed)
    failures = 0
    lines: list[str] = []
    rows: list[dict] = []

    def report(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        if not ok:
            failures += 1
        tail = f" ({detail})" if detail and not ok else ""
        lines.append(f"{'ok' if ok else 'FAIL'}: {name}{tail}")
        rows.append({"name": name, "ok": ok})

    emb = embed(graph)
    polys = _method_polynomials(graph, METHODS, None)
    values = list(polys.values())
    report("five evaluator methods agree",
           all(v == values[0] for v in values[1:]),
           " / ".join(f"{k}={v}" for k, v in polys.items()))
    reference = polys["expansion"]

    trees = list(enumerate_spanning_trees(graph))
    report("T(1,1) equals the spanning tree count",
           reference.evaluate(1, 1) == len(trees),
           f"T(1,1)={reference.evaluate(1, 1)}, trees={len(trees)}")
    report("T(2,2) equals 2^|E|",
           reference.evaluate(2, 2) == 2 ** graph.edge_count)

    map_trees = list(enumerate_spanning_trees(emb.underlying_graph()))
    try:
        for st in map_trees:
            motion_function(emb, st)
        report("every tree tour is a single cycle", True)
    except MotionNotCyclicError as exc:
        report("every tree tour is a single cycle", False, str(exc))

    from .activity import erase_check
    ok = all(
        erase_check(emb, st, eid)
        for st in map_trees
        for eid in emb.edge_ids
    )
    report("minor tours equal the original tour with two half-edges erased", ok)

    if graph.edge_count:
        ok = True
        bad = ""
        for _ in range(args.trials):
            m = _random_embedding(graph, rng)
            val = tutte_embedding_activities(m)
            if val != reference:
                ok = False
                bad = f"{val} != {reference}"
                break
        report(f"embedding independence over {args.trials} random rooted embeddings",
               ok, bad)

        ok = True
        bad = ""
        for _ in range(args.trials):
            order = list(graph.edge_ids)
            rng.shuffle(order)
            val = tutte_order_activities(graph, order)
            if val != reference:
                ok = False
                bad = f"{val} != {reference}"
                break
        report(f"order independence over {args.trials} random edge orders", ok, bad)

    lines.append(
        f"{failures} check(s) failed" if failures else "all checks passed"
    )
    _emit(args, {"checks": rows, "ok": not failures}, "\n".join(lines))
    return 2 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tuttemap",
        description="Tutte polynomials of multigraphs and embedded graphs, "
                    "computed by independent cross-checking methods.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_root: bool = False) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text",
                       help="output format (default: text)")
        if with_root:
            p.add_argument("--root", default=None,
                           help="override the root half-edge")

    p = sub.add_parser("tutte", help="Tutte polynomial of a graph file")
    p.add_argument("--graph", required=True, help="graph file (v/e line format)")
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    common(p, with_root=True)
    p.set_defaults(func=_cmd_tutte)

    p = sub.add_parser("tour", help="tour of a spanning tree of a rooted map")
    p.add_argument("--map", required=True, help="map file (sigma/alpha/root format)")
    p.add_argument("--tree", required=True,
                   help="comma-separated edge ids of the spanning tree")
    common(p, with_root=True)
    p.set_defaults(func=_cmd_tour)

    p = sub.add_parser("activities",
                       help="per-tree active edges and monomials of a rooted map")
    p.add_argument("--map", required=True)
    common(p, with_root=True)
    p.set_defaults(func=_cmd_activities)

    p = sub.add_parser("minor", help="delete or contract one edge of a map")
    p.add_argument("--map", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--delete", metavar="EDGE")
    group.add_argument("--contract", metavar="EDGE")
    common(p, with_root=True)
    p.set_defaults(func=_cmd_minor)

    p = sub.add_parser("euler", help="Euler characteristic and genus of a map")
    p.add_argument("--map", required=True)
    common(p, with_root=True)
    p.set_defaults(func=_cmd_euler)

    p = sub.add_parser("census", help="all rooted maps with n edges")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--genus", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("zpoly",
                       help="activity generating function summed over the census")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--genus", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_zpoly)

    p = sub.add_parser("check", help="run the invariant suite on one graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"random seed (default: {DEFAULT_SEED})")
    p.add_argument("--trials", type=int, default=20,
                   help="random embeddings/orders to try (default: 20)")
    common(p)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        # argparse exits 2 on usage errors; those are input errors here
        return 0 if not ex.code else 1
    try:
        return args.func(args)
    except MotionNotCyclicError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
