"""Shared fixtures and independent oracles for the test suite.

Oracles here deliberately avoid the package's own code paths: components
are counted by BFS, spanning trees by raw subset enumeration, fundamental
sets by the swap test, isomorphism by relabeling search, determinants by
Bareiss elimination. Expected values in the tests are frozen from these.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter

from tuttemap import CombinatorialMap, Multigraph

# -- worked-example fixtures -------------------------------------------------

TORUS_MAP_TEXT = """\
sigma: (a f' b d)(d')(a' e f c)(e' b' c')
alpha: (a a')(b b')(c c')(d d')(e e')(f f')
root: a
"""

# same graph, rotation at one vertex altered
TORUS_MAP_ALT_TEXT = """\
sigma: (a f' b d)(d')(a' e c f)(e' b' c')
alpha: (a a')(b b')(c c')(d d')(e e')(f f')
root: a
"""

TORUS_TREE = ("aa'", "bb'", "dd'")

SINGLE_LOOP_TEXT = "sigma: (h h')\nalpha: (h h')\nroot: h\n"
SINGLE_ISTHMUS_TEXT = "sigma: (h)(h')\nalpha: (h h')\nroot: h\n"


def torus_map() -> CombinatorialMap:
    return CombinatorialMap.from_text(TORUS_MAP_TEXT)


def torus_map_alt() -> CombinatorialMap:
    return CombinatorialMap.from_text(TORUS_MAP_ALT_TEXT)


def single_loop_map() -> CombinatorialMap:
    return CombinatorialMap.from_text(SINGLE_LOOP_TEXT)


def single_isthmus_map() -> CombinatorialMap:
    return CombinatorialMap.from_text(SINGLE_ISTHMUS_TEXT)


def k3() -> Multigraph:
    return Multigraph([1, 2, 3], {"a": (1, 2), "b": (2, 3), "c": (1, 3)})


def k4() -> Multigraph:
    verts = [1, 2, 3, 4]
    edges = {}
    for u, v in itertools.combinations(verts, 2):
        edges[f"e{u}{v}"] = (u, v)
    return Multigraph(verts, edges)


def loop_graph() -> Multigraph:
    return Multigraph([1], {"l": (1, 1)})


def isthmus_graph() -> Multigraph:
    return Multigraph([1, 2], {"i": (1, 2)})


def double_edge_graph() -> Multigraph:
    return Multigraph([1, 2], {"e1": (1, 2), "e2": (1, 2)})


# -- permutation oracles ----------------------------------------------------


def compose(p: dict, q: dict) -> dict:
    """p after q, on names."""
    return {h: p[q[h]] for h in q}


def cycles_of(perm: dict) -> list[tuple]:
    seen = set()
    out = []
    for start in sorted(perm, key=str):
        if start in seen:
            continue
        cyc = []
        h = start
        while h not in seen:
            seen.add(h)
            cyc.append(h)
            h = perm[h]
        out.append(tuple(cyc))
    return out


def name_sigma(m: CombinatorialMap) -> dict:
    return {m.name(h): m.name(m.sigma(h)) for h in range(m.n_half_edges)}


def name_alpha(m: CombinatorialMap) -> dict:
    return {m.name(h): m.name(h ^ 1) for h in range(m.n_half_edges)}


def cyclic_equal(a, b) -> bool:
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    if a[0] not in b:
        return False
    i = b.index(a[0])
    return b[i:] + b[:i] == a


# -- graph oracles ------------------------------------------------------------


def bfs_components(vertices, endpoint_pairs) -> int:
    verts = set(vertices)
    adj = {v: set() for v in verts}
    for u, v in endpoint_pairs:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    seen = set()
    comps = 0
    for v in verts:
        if v in seen:
            continue
        comps += 1
        frontier = [v]
        seen.add(v)
        while frontier:
            w = frontier.pop()
            for w2 in adj[w]:
                if w2 not in seen:
                    seen.add(w2)
                    frontier.append(w2)
    return comps


def subgraph_components(g: Multigraph, edge_subset) -> int:
    return bfs_components(g.vertices, [g.endpoints(e) for e in edge_subset])


def is_spanning_tree_subset(g: Multigraph, subset) -> bool:
    subset = set(subset)
    return (
        len(subset) == g.vertex_count - 1
        and subgraph_components(g, subset) == 1
    )


def brute_force_trees(g: Multigraph) -> list[frozenset]:
    """Every spanning tree, found by scanning all edge subsets."""
    ids = g.edge_ids
    out = []
    for r in range(len(ids) + 1):
        for subset in itertools.combinations(ids, r):
            if is_spanning_tree_subset(g, subset):
                out.append(frozenset(subset))
    return out


def swap_cycle_oracle(g: Multigraph, tree: frozenset, e) -> frozenset:
    """{e} plus the internal f whose swap keeps a tree (the literal test)."""
    members = {e}
    for f in tree:
        if is_spanning_tree_subset(g, (tree - {f}) | {e}):
            members.add(f)
    return frozenset(members)


def swap_cocycle_oracle(g: Multigraph, tree: frozenset, e) -> frozenset:
    members = {e}
    for f in g.edge_ids:
        if f in tree:
            continue
        if is_spanning_tree_subset(g, (tree - {e}) | {f}):
            members.add(f)
    return frozenset(members)


def expansion_coeffs_oracle(g: Multigraph) -> dict[tuple[int, int], int]:
    """Tutte coefficients straight from the subgraph sum, expanding the
    (x-1)/(y-1) powers with binomials; shares nothing with the package's
    polynomial or component code."""
    ids = g.edge_ids
    nv = g.vertex_count
    coeffs: Counter = Counter()
    for r in range(len(ids) + 1):
        for subset in itertools.combinations(ids, r):
            c = subgraph_components(g, subset)
            a, b = c - 1, c + r - nv
            for i in range(a + 1):
                for j in range(b + 1):
                    sign = (-1) ** ((a - i) + (b - j))
                    coeffs[(i, j)] += sign * math.comb(a, i) * math.comb(b, j)
    return {k: v for k, v in coeffs.items() if v}


def bareiss_det(rows: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Gaussian elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for swap in range(k + 1, n):
                if m[swap][k] != 0:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def matrix_tree_count(g: Multigraph) -> int:
    """Spanning tree count by the Kirchhoff determinant (loops stripped)."""
    verts = sorted(g.vertices, key=str)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    lap = [[0] * n for _ in range(n)]
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        if u == v:
            continue
        iu, iv = idx[u], idx[v]
        lap[iu][iu] += 1
        lap[iv][iv] += 1
        lap[iu][iv] -= 1
        lap[iv][iu] -= 1
    minor = [row[1:] for row in lap[1:]]
    return bareiss_det(minor)


# -- map isomorphism oracles -----------------------------------------------


def rooted_iso_oracle(m1: CombinatorialMap, m2: CombinatorialMap) -> bool:
    """Grow the unique candidate relabeling from root to root and verify the
    two intertwining identities on all half-edges."""
    if m1.n_half_edges != m2.n_half_edges:
        return False
    pi = {m1.root: m2.root}
    stack = [m1.root]
    while stack:
        h = stack.pop()
        for img, img2 in (
            (m1.sigma(h), m2.sigma(pi[h])),
            (m1.alpha(h), m2.alpha(pi[h])),
        ):
            if img in pi:
                if pi[img] != img2:
                    return False
            else:
                pi[img] = img2
                stack.append(img)
    if len(pi) != m1.n_half_edges or len(set(pi.values())) != len(pi):
        return False
    return all(
        pi[m1.sigma(h)] == m2.sigma(pi[h]) and pi[m1.alpha(h)] == m2.alpha(pi[h])
        for h in pi
    )


def unrooted_iso_oracle(m1: CombinatorialMap, m2: CombinatorialMap) -> bool:
    """Exhaustive relabeling search; only usable for tiny maps."""
    n = m1.n_half_edges
    if n != m2.n_half_edges:
        return False
    for perm in itertools.permutations(range(n)):
        if all(
            perm[m1.sigma(h)] == m2.sigma(perm[h])
            and perm[m1.alpha(h)] == m2.alpha(perm[h])
            for h in range(n)
        ):
            return True
    return False


def relabel_map(m: CombinatorialMap, rng: random.Random) -> CombinatorialMap:
    """A structurally identical map under a random renaming of half-edges."""
    fresh = [f"z{i}" for i in range(m.n_half_edges)]
    rng.shuffle(fresh)
    rename = {m.name(h): fresh[h] for h in range(m.n_half_edges)}
    sigma = {rename[m.name(h)]: rename[m.name(m.sigma(h))] for h in range(m.n_half_edges)}
    alpha = {rename[m.name(h)]: rename[m.name(h ^ 1)] for h in range(m.n_half_edges)}
    root = None if m.root is None else rename[m.root_name]
    return CombinatorialMap.from_permutations(sigma, alpha, root)


# -- corpora -------------------------------------------------------------------


def _transitive(sigma: tuple[int, ...]) -> bool:
    n = len(sigma)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        h = stack.pop()
        for nxt in (sigma[h], h ^ 1):
            if not seen[nxt]:
                seen[nxt] = True
                count += 1
                stack.append(nxt)
    return count == n


def all_rooted_sigmas(n_edges: int):
    """Every transitive rotation on 2n normalized half-edges."""
    for perm in itertools.permutations(range(2 * n_edges)):
        if _transitive(perm):
            yield perm


def make_map(sigma: tuple[int, ...], root: int | None = 0) -> CombinatorialMap:
    names = tuple(f"h{i}" for i in range(len(sigma)))
    return CombinatorialMap(sigma, names, root)


def random_rooted_map(rng: random.Random, n_edges: int) -> CombinatorialMap:
    while True:
        perm = list(range(2 * n_edges))
        rng.shuffle(perm)
        if _transitive(tuple(perm)):
            return make_map(tuple(perm))


def map_corpus(seed: int = 20546, per_size: int = 120,
               max_edges: int = 6) -> list[CombinatorialMap]:
    """At least 500 distinct valid rooted maps with <= max_edges edges:
    exhaustive for 1 and 2 edges, seeded random beyond."""
    rng = random.Random(seed)
    corpus = [make_map(s) for n in (1, 2) for s in all_rooted_sigmas(n)]
    for n in range(3, max_edges + 1):
        chosen = set()
        while len(chosen) < per_size:
            m = random_rooted_map(rng, n)
            if m._sigma not in chosen:
                chosen.add(m._sigma)
                corpus.append(m)
    return corpus


def connected_multigraphs(max_vertices: int, max_edges: int):
    """Every connected multigraph on labeled vertices 0..nv-1 with at most
    max_edges edges (loops and parallel edges included); edge ids e0, e1...
    follow the sorted endpoint-pair order."""
    for nv in range(1, max_vertices + 1):
        verts = list(range(nv))
        pairs = [(u, v) for u in verts for v in verts[u:]]
        for ne in range(max_edges + 1):
            if ne < nv - 1:
                continue
            for combo in itertools.combinations_with_replacement(pairs, ne):
                g = Multigraph(verts, {f"e{i}": uv for i, uv in enumerate(combo)})
                if g.is_connected():
                    yield g
