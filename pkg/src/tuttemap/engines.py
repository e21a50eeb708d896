"""Tutte polynomial evaluators and the cross-checking harness.

Five routes to the same polynomial: the explicit sum over all spanning
subgraphs, the loop/isthmus recursion on abstract graphs, the activity sum
for a linear edge order, the activity sum for a rooted embedding, and a
deletion/contraction recursion carried out on the map itself (pivoting on
the edge just before the root, the one place where rerooting rules are
needed). Agreement across routes on the same graph is the package's
correctness argument, so the routes deliberately share as little code as
possible.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .activity import embedding_activities, order_activities
from .cmap import CombinatorialMap, MapError
from .graph import GraphError, Multigraph
from .poly import ONE, X, Y, ZERO, BivariatePolynomial
from .spanning import enumerate_spanning_trees

__all__ = [
    "tutte_subgraph_expansion",
    "tutte_deletion_contraction",
    "tutte_order_activities",
    "tutte_embedding_activities",
    "tutte_recursive_map",
    "cross_check",
    "EvaluationReport",
    "graph_certificate",
    "graphs_isomorphic",
    "MEMO_CAP_ENV",
    "DEFAULT_MEMO_CAP",
]

MEMO_CAP_ENV = "TUTTEMAP_MEMO_CAP"
DEFAULT_MEMO_CAP = 200_000


def _require_connected(graph: Multigraph) -> None:
    if not graph.is_connected():
        raise GraphError(
            "Tutte evaluation is defined here for connected graphs only"
        )


def tutte_subgraph_expansion(graph: Multigraph) -> BivariatePolynomial:
    """Direct sum of (x-1)^(c(S)-1) (y-1)^(c(S)+|S|-|V|) over all 2^|E|
    spanning subgraphs S."""
    _require_connected(graph)
    ids = graph.edge_ids
    nv = graph.vertex_count
    xm, ym = X - 1, Y - 1
    xpow = [ONE]
    for _ in range(nv):
        xpow.append(xpow[-1] * xm)
    ypow = [ONE]
    for _ in range(len(ids) + 1):
        ypow.append(ypow[-1] * ym)
    total = ZERO
    for mask in range(1 << len(ids)):
        subset = [ids[i] for i in range(len(ids)) if mask >> i & 1]
        c = graph.component_count(subset)
        total = total + xpow[c - 1] * ypow[c + len(subset) - nv]
    return total


def _memo_cap() -> int:
    raw = os.environ.get(MEMO_CAP_ENV)
    if raw is None:
        return DEFAULT_MEMO_CAP
    try:
        return max(int(raw), 0)
    except ValueError:
        return DEFAULT_MEMO_CAP


def tutte_deletion_contraction(graph: Multigraph,
                               cache: dict | None = None) -> BivariatePolynomial:
    """Loop/isthmus recursion, memoized on an isomorphism-aware certificate.

    The memo key is the refined-color certificate; certificate collisions
    between non-isomorphic graphs are resolved by a full isomorphism check.
    A fresh cache is used per call unless the caller passes one in; its
    size is capped by the TUTTEMAP_MEMO_CAP environment variable.
    """
    _require_connected(graph)
    memo = {} if cache is None else cache
    cap = _memo_cap()
    entries = sum(len(bucket) for bucket in memo.values())

    def rec(g: Multigraph) -> BivariatePolynomial:
        nonlocal entries
        if g.edge_count == 0:
            return ONE
        key = graph_certificate(g)
        for g2, val in memo.get(key, ()):
            if graphs_isomorphic(g, g2):
                return val
        e = g.edge_ids[0]
        if g.is_loop(e):
            val = Y * rec(g.delete(e))
        elif g.is_isthmus(e):
            val = X * rec(g.contract(e))
        else:
            val = rec(g.delete(e)) + rec(g.contract(e))
        if entries < cap:
            memo.setdefault(key, []).append((g, val))
            entries += 1
        return val

    return rec(graph)


def _order_tree_terms(graph: Multigraph, order: Sequence):
    for st in enumerate_spanning_trees(graph):
        yield st, order_activities(graph, order, st)


def tutte_order_activities(graph: Multigraph,
                           order: Sequence | None = None) -> BivariatePolynomial:
    """Sum of x^i y^e over spanning trees, activities taken with respect to
    a linear order on the edge ids (default: sorted ids)."""
    _require_connected(graph)
    if order is None:
        order = graph.edge_ids
    total = ZERO
    for _, act in _order_tree_terms(graph, order):
        total = total + X ** act.internal_count * Y ** act.external_count
    return total


def _embedding_tree_terms(m: CombinatorialMap):
    for st in enumerate_spanning_trees(m.underlying_graph()):
        yield st, embedding_activities(m, st)


def tutte_embedding_activities(m: CombinatorialMap) -> BivariatePolynomial:
    """Sum of x^I y^E over spanning trees, activities from the rooted tour."""
    if m.is_empty or m.root is None:
        raise MapError("a rooted map with at least one edge is required")
    m.validate()
    total = ZERO
    for _, act in _embedding_tree_terms(m):
        total = total + X ** act.internal_count * Y ** act.external_count
    return total


def tutte_recursive_map(m: CombinatorialMap, on_pivot=None) -> BivariatePolynomial:
    """Deletion/contraction performed on the rooted map itself.

    The pivot is always the edge carrying the half-edge just before the
    root in its rotation. The root only ever sits on the pivot when that
    pivot is an isthmus (root is a rotation fixed point) or a loop (root is
    the pivot's partner), and each case moves the root to the uniquely
    determined surviving half-edge. Activities are never consulted, so
    agreement with the activity sum is a genuine check.

    ``on_pivot(map, edge_id, case, depth)`` is called per recursion step
    when supplied; tests use it to watch the pivot discipline.
    """
    if m.is_empty or m.root is None:
        raise MapError("a rooted map with at least one edge is required")
    m.validate()
    return _recurse_map(m, 1, on_pivot)


def _recurse_map(m: CombinatorialMap, depth: int, on_pivot) -> BivariatePolynomial:
    graph = m.underlying_graph()
    if m.edge_count == 1:
        eid = m.edge_ids[0]
        case = "loop-base" if graph.is_loop(eid) else "isthmus-base"
        if on_pivot is not None:
            on_pivot(m, eid, case, depth)
        return Y if graph.is_loop(eid) else X
    h0 = m.root
    hstar = m.sigma_inverse(h0)
    k = hstar >> 1
    eid = m.edge_ids[k]
    if graph.is_loop(eid):
        if on_pivot is not None:
            on_pivot(m, eid, "loop", depth)
        reroot = m.sigma(h0) if h0 == (hstar ^ 1) else None
        return Y * _recurse_map(m.delete_edge(k, reroot=reroot), depth + 1, on_pivot)
    if graph.is_isthmus(eid):
        if on_pivot is not None:
            on_pivot(m, eid, "isthmus", depth)
        reroot = m.sigma(hstar ^ 1) if h0 == hstar else None
        return X * _recurse_map(m.contract_edge(k, reroot=reroot), depth + 1, on_pivot)
    if h0 >> 1 == k:
        raise RuntimeError(
            "ordinary pivot unexpectedly contains the root; map recursion is broken"
        )
    if on_pivot is not None:
        on_pivot(m, eid, "ordinary", depth)
    return (
        _recurse_map(m.contract_edge(k), depth + 1, on_pivot)
        + _recurse_map(m.delete_edge(k), depth + 1, on_pivot)
    )


# -- multigraph certificates and isomorphism --------------------------------


def _adjacency(graph: Multigraph):
    nb: dict = {v: Counter() for v in graph.vertices}
    loops: Counter = Counter()
    for e in graph.edge_ids:
        u, v = graph.endpoints(e)
        if u == v:
            loops[u] += 1
        else:
            nb[u][v] += 1
            nb[v][u] += 1
    return nb, loops


def _refined_colors(graph: Multigraph) -> dict:
    """Iterated neighborhood refinement; colors are dense ints."""
    nb, loops = _adjacency(graph)
    sig = {
        v: (sum(nb[v].values()) + 2 * loops[v], loops[v]) for v in graph.vertices
    }
    palette = {s: i for i, s in enumerate(sorted(set(sig.values())))}
    color = {v: palette[sig[v]] for v in graph.vertices}
    classes = len(palette)
    while True:
        sig2 = {
            v: (color[v], tuple(sorted((color[w], mult) for w, mult in nb[v].items())))
            for v in graph.vertices
        }
        palette = {s: i for i, s in enumerate(sorted(set(sig2.values())))}
        if len(palette) == classes:
            return color
        classes = len(palette)
        color = {v: palette[sig2[v]] for v in graph.vertices}


def graph_certificate(graph: Multigraph) -> tuple:
    """Isomorphism-invariant (not complete) fingerprint: refined vertex
    color counts plus the edge multiset over color pairs."""
    colors = _refined_colors(graph)
    vpart = tuple(sorted(Counter(colors.values()).items()))
    epart = []
    for e in graph.edge_ids:
        u, v = graph.endpoints(e)
        cu, cv = colors[u], colors[v]
        epart.append((cu, cv) if cu <= cv else (cv, cu))
    return (graph.vertex_count, graph.edge_count, vpart, tuple(sorted(epart)))


def graphs_isomorphic(g1: Multigraph, g2: Multigraph) -> bool:
    """Exact multigraph isomorphism by color-respecting backtracking."""
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return False
    c1, c2 = _refined_colors(g1), _refined_colors(g2)
    if sorted(Counter(c1.values()).items()) != sorted(Counter(c2.values()).items()):
        return False
    nb1, loops1 = _adjacency(g1)
    nb2, loops2 = _adjacency(g2)
    order = sorted(g1.vertices, key=lambda v: (c1[v], str(v)))
    candidates = {}
    for w in g2.vertices:
        candidates.setdefault(c2[w], []).append(w)
    assignment: dict = {}
    used: set = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates.get(c1[v], ()):
            if w in used or loops1[v] != loops2[w]:
                continue
            ok = True
            for u, image in assignment.items():
                if nb1[v][u] != nb2[w][image]:
                    ok = False
                    break
            if not ok:
                continue
            assignment[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del assignment[v]
            used.discard(w)
        return False

    return extend(0)


# -- the cross-check harness --------------------------------------------------


@dataclass
class EvaluationReport:
    """Results of one cross-check run.

    ``polynomials`` maps a method label to its result; ``tree_tables`` maps
    activity-based method labels to {sorted tree edge tuple: (i, e)}.
    """

    polynomials: dict[str, BivariatePolynomial]
    tree_tables: dict[str, dict[tuple, tuple[int, int]]]

    @property
    def agreement(self) -> bool:
        vals = list(self.polynomials.values())
        return all(v == vals[0] for v in vals[1:])


def cross_check(graph: Multigraph,
                embeddings: Iterable[CombinatorialMap] = (),
                orders: Iterable[Sequence] = ()) -> EvaluationReport:
    """Run every evaluator over the supplied embeddings and edge orders.

    Each embedding's underlying graph must be isomorphic to ``graph``; a
    mismatch is rejected up front.
    """
    _require_connected(graph)
    embeddings = list(embeddings)
    orders = list(orders)
    for i, m in enumerate(embeddings):
        if m.is_empty or m.root is None:
            raise MapError(f"embedding #{i} must be a rooted nonempty map")
        if not graphs_isomorphic(graph, m.underlying_graph()):
            raise GraphError(f"embedding #{i} is not an embedding of this graph")

    polys = {
        "expansion": tutte_subgraph_expansion(graph),
        "delcon": tutte_deletion_contraction(graph),
    }
    tables: dict[str, dict[tuple, tuple[int, int]]] = {}
    for i, order in enumerate(orders):
        label = f"order[{i}]"
        total = ZERO
        table = {}
        for st, act in _order_tree_terms(graph, order):
            table[tuple(sorted(st.internal_edges, key=str))] = (
                act.internal_count, act.external_count,
            )
            total = total + X ** act.internal_count * Y ** act.external_count
        polys[label] = total
        tables[label] = table
    for i, m in enumerate(embeddings):
        label = f"embedding[{i}]"
        total = ZERO
        table = {}
        for st, act in _embedding_tree_terms(m):
            table[tuple(sorted(st.internal_edges, key=str))] = (
                act.internal_count, act.external_count,
            )
            total = total + X ** act.internal_count * Y ** act.external_count
        polys[label] = total
        tables[label] = table
        polys[f"recursive[{i}]"] = tutte_recursive_map(m)
    return EvaluationReport(polys, tables)
