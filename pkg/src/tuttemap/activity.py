"""Tours of spanning trees in an embedded graph, and edge activities.

Walking around a spanning tree (follow the pairing across tree edges, just
turn at the others) visits every half-edge exactly once. Anchoring that
single cycle at the root linearly orders the half-edges, and edges inherit
the order of their earlier half-edge. An edge is active when it is
order-minimal in its fundamental cycle (external edges) or cocycle
(internal edges). The classical notion, minimality for a fixed linear
order on the edge set, is provided alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .cmap import CombinatorialMap, MapError
from .graph import GraphError, Multigraph
from .spanning import SpanningTree

__all__ = [
    "MotionNotCyclicError",
    "TourOrder",
    "ActivitySummary",
    "motion_function",
    "erase_check",
    "embedding_activities",
    "order_activities",
]


class MotionNotCyclicError(RuntimeError):
    """The tree tour failed to close into a single cycle.

    This cannot happen for a valid map and spanning tree; it is raised
    defensively so a structural bug cannot silently corrupt activities.
    """


@dataclass(frozen=True)
class TourOrder:
    """The tour of one spanning tree: successor map, the cycle anchored at
    the root, and the induced ranks on half-edges and edges."""

    motion: Mapping[str, str]
    cycle: tuple[str, ...]
    half_edge_rank: Mapping[str, int]
    edge_rank: Mapping[str, int]

    @property
    def half_edge_order(self) -> tuple[str, ...]:
        return self.cycle

    @property
    def edge_order(self) -> tuple[str, ...]:
        return tuple(sorted(self.edge_rank, key=self.edge_rank.__getitem__))


@dataclass(frozen=True)
class ActivitySummary:
    """Active edge sets of one spanning tree."""

    internal_active: frozenset
    external_active: frozenset

    @property
    def internal_count(self) -> int:
        return len(self.internal_active)

    @property
    def external_count(self) -> int:
        return len(self.external_active)


def _as_spanning_tree(m: CombinatorialMap, tree) -> SpanningTree:
    graph = m.underlying_graph()
    if isinstance(tree, SpanningTree) and tree.parent is graph:
        return tree
    ids = tree.internal_edges if isinstance(tree, SpanningTree) else tree
    return SpanningTree(graph, ids)


def motion_function(m: CombinatorialMap, tree) -> TourOrder:
    """Tour the given spanning tree of a rooted map.

    The successor of a half-edge h is the next half-edge in h's rotation
    when h's edge is external, and the next after h's partner when it is
    internal. A single cycle through all half-edges is asserted.
    """
    if m.is_empty:
        raise MapError("the empty map has no tour")
    if m.root is None:
        raise MapError("the tour order needs a rooted map")
    st = _as_spanning_tree(m, tree)
    n = m.n_half_edges
    internal = [m.edge_ids[k] in st.internal_edges for k in range(m.edge_count)]
    motion = [
        m.sigma(h ^ 1) if internal[h >> 1] else m.sigma(h) for h in range(n)
    ]
    seq = []
    h = m.root
    for _ in range(n):
        seq.append(h)
        h = motion[h]
    if h != m.root or len(set(seq)) != n:
        raise MotionNotCyclicError(
            f"tour closed after {len(set(seq))} of {n} half-edges"
        )
    names = m.names
    cycle = tuple(names[h] for h in seq)
    he_rank = {names[h]: r for r, h in enumerate(seq)}
    rank_of = [0] * n
    for r, h in enumerate(seq):
        rank_of[h] = r
    by_min = sorted(
        range(m.edge_count), key=lambda k: min(rank_of[2 * k], rank_of[2 * k + 1])
    )
    edge_rank = {m.edge_ids[k]: r for r, k in enumerate(by_min)}
    motion_names = {names[h]: names[motion[h]] for h in range(n)}
    return TourOrder(motion_names, cycle, he_rank, edge_rank)


def _active_sets(st: SpanningTree, rank: Mapping) -> ActivitySummary:
    internal_active = set()
    external_active = set()
    for e in st.parent.edge_ids:
        if st.is_internal(e):
            region = st.fundamental_cocycle(e)
            bucket = internal_active
        else:
            region = st.fundamental_cycle(e)
            bucket = external_active
        if rank[e] == min(rank[f] for f in region):
            bucket.add(e)
    return ActivitySummary(frozenset(internal_active), frozenset(external_active))


def embedding_activities(m: CombinatorialMap, tree) -> ActivitySummary:
    """Activities of one spanning tree w.r.t. the rooted tour order."""
    st = _as_spanning_tree(m, tree)
    order = motion_function(m, st)
    return _active_sets(st, order.edge_rank)


def order_activities(graph: Multigraph, order: Sequence, tree) -> ActivitySummary:
    """Classical activities w.r.t. a total order on the edge ids (given as
    the full edge list, smallest first)."""
    order = list(order)
    if len(order) != graph.edge_count or set(order) != set(graph.edge_ids):
        raise GraphError("order must list every edge id exactly once")
    if isinstance(tree, SpanningTree) and tree.parent is graph:
        st = tree
    else:
        ids = tree.internal_edges if isinstance(tree, SpanningTree) else tree
        st = SpanningTree(graph, ids)
    rank = {e: i for i, e in enumerate(order)}
    return _active_sets(st, rank)


def erase_check(m: CombinatorialMap, tree, edge) -> bool:
    """Check that the minor's tour is the original tour with the removed
    edge's two half-edges erased.

    External edges are deleted (same tree), internal edges contracted (tree
    loses the edge); the comparison is cyclic, so it does not depend on
    where the minor is rooted.
    """
    st = _as_spanning_tree(m, tree)
    k = m.edge_index(edge) if isinstance(edge, str) else int(edge)
    eid = m.edge_ids[k]
    before = motion_function(m, st)
    h1, h2 = 2 * k, 2 * k + 1
    removed = {m.name(h1), m.name(h2)}
    reroot = None
    if m.root in (h1, h2) and m.n_half_edges > 2:
        reroot = next(h for h in range(m.n_half_edges) if h not in (h1, h2))
    if st.is_internal(eid):
        minor = m.contract_edge(k, reroot=reroot)
        minor_tree: Iterable = st.internal_edges - {eid}
    else:
        minor = m.delete_edge(k, reroot=reroot)
        minor_tree = st.internal_edges
    expected = [nm for nm in before.cycle if nm not in removed]
    if minor.is_empty:
        return not expected
    after = motion_function(minor, minor_tree)
    cyc = list(after.cycle)
    if len(cyc) != len(expected) or set(cyc) != set(expected):
        return False
    i = cyc.index(expected[0])
    return cyc[i:] + cyc[:i] == expected
