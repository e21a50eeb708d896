"""Tours, tour orders, and both activity notions."""

import random

import pytest

from tuttemap import (
    GraphError,
    MapError,
    Multigraph,
    SpanningTree,
    embed,
    embedding_activities,
    enumerate_spanning_trees,
    erase_check,
    motion_function,
    order_activities,
    tutte_subgraph_expansion,
)

from helpers import (
    TORUS_TREE,
    cyclic_equal,
    torus_map,
    k3,
    map_corpus,
    random_rooted_map,
    single_isthmus_map,
    single_loop_map,
)


def test_torus_map_tour_cycle():
    order = motion_function(torus_map(), TORUS_TREE)
    assert order.cycle == (
        "a", "e", "f", "c", "a'", "f'", "b", "c'", "e'", "b'", "d", "d'",
    )


def test_torus_map_half_edge_order():
    order = motion_function(torus_map(), TORUS_TREE)
    assert order.half_edge_order == (
        "a", "e", "f", "c", "a'", "f'", "b", "c'", "e'", "b'", "d", "d'",
    )
    assert order.half_edge_rank["a"] == 0
    assert order.half_edge_rank["d'"] == 11


def test_torus_map_edge_order():
    order = motion_function(torus_map(), TORUS_TREE)
    assert order.edge_order == ("aa'", "ee'", "ff'", "cc'", "bb'", "dd'")


def test_motion_follows_rank():
    order = motion_function(torus_map(), TORUS_TREE)
    n = len(order.cycle)
    for h, nxt in order.motion.items():
        assert order.half_edge_rank[nxt] == (order.half_edge_rank[h] + 1) % n


def test_motion_requires_root_and_tree():
    m = torus_map().with_root(None)
    with pytest.raises(MapError, match="root"):
        motion_function(m, TORUS_TREE)
    with pytest.raises(GraphError, match="not a spanning tree"):
        motion_function(torus_map(), ["aa'", "bb'"])


def test_torus_map_embedding_activities():
    act = embedding_activities(torus_map(), TORUS_TREE)
    assert act.internal_active == frozenset({"aa'", "dd'"})
    assert act.external_active == frozenset()
    assert (act.internal_count, act.external_count) == (2, 0)


def test_single_edge_maps_are_active():
    act = embedding_activities(single_isthmus_map(), ["hh'"])
    assert act.internal_active == frozenset({"hh'"})
    act = embedding_activities(single_loop_map(), [])
    assert act.external_active == frozenset({"hh'"})


def test_torus_map_erase_checks_worked_example():
    m = torus_map()
    # deleting the external edge ee' leaves (a f c a' f' b c' b' d d')
    k = m.edge_index("ee'")
    minor = m.delete_edge(k)
    tour = motion_function(minor, TORUS_TREE)
    assert tour.cycle == ("a", "f", "c", "a'", "f'", "b", "c'", "b'", "d", "d'")
    assert erase_check(m, TORUS_TREE, "ee'")
    # contracting the internal edge bb' leaves (a e f c a' f' c' e' d d')
    minor = m.contract_edge(m.edge_index("bb'"))
    tour = motion_function(minor, ("aa'", "dd'"))
    assert tour.cycle == ("a", "e", "f", "c", "a'", "f'", "c'", "e'", "d", "d'")
    assert erase_check(m, TORUS_TREE, "bb'")


def test_erase_check_random_maps():
    rng = random.Random(61)
    for _ in range(40):
        m = random_rooted_map(rng, rng.randint(1, 6))
        for st in enumerate_spanning_trees(m.underlying_graph()):
            for eid in m.edge_ids:
                assert erase_check(m, st, eid)


def test_tour_is_single_cycle_everywhere():
    rng = random.Random(62)
    for _ in range(60):
        m = random_rooted_map(rng, rng.randint(1, 6))
        for st in enumerate_spanning_trees(m.underlying_graph()):
            order = motion_function(m, st)
            assert len(order.cycle) == m.n_half_edges
            assert len(set(order.cycle)) == m.n_half_edges
            assert order.cycle[0] == m.root_name


def test_loops_and_isthmuses_always_active():
    rng = random.Random(63)
    for _ in range(40):
        m = random_rooted_map(rng, rng.randint(1, 5))
        g = m.underlying_graph()
        loops = {e for e in g.edge_ids if g.is_loop(e)}
        isthmuses = {e for e in g.edge_ids if g.is_isthmus(e)}
        for st in enumerate_spanning_trees(g):
            act = embedding_activities(m, st)
            assert loops <= act.external_active
            assert isthmuses <= act.internal_active


def test_order_activities_k3():
    g = k3()
    order = ["a", "b", "c"]
    monomials = []
    for st in enumerate_spanning_trees(g):
        act = order_activities(g, order, st)
        monomials.append((act.internal_count, act.external_count))
    # trees {a,b}, {a,c}, {b,c} contribute x^2, x, y in that order
    assert monomials == [(2, 0), (1, 0), (0, 1)]


def test_order_activities_tree_graph_all_internal():
    g = Multigraph([1, 2, 3], {"p": (1, 2), "q": (2, 3)})
    st = SpanningTree(g, ["p", "q"])
    act = order_activities(g, ["p", "q"], st)
    assert act.internal_active == frozenset({"p", "q"})
    assert act.external_active == frozenset()


def test_order_activities_single_loop():
    g = Multigraph([1], {"l": (1, 1)})
    st = SpanningTree(g, [])
    act = order_activities(g, ["l"], st)
    assert act.external_active == frozenset({"l"})


def test_partial_order_rejected():
    g = k3()
    st = SpanningTree(g, ["a", "b"])
    with pytest.raises(GraphError, match="every edge"):
        order_activities(g, ["a", "b"], st)
    with pytest.raises(GraphError, match="every edge"):
        order_activities(g, ["a", "b", "c", "c"], st)


def test_k3_embedding_monomial_multiset():
    # some rooted embedding of the triangle distributes {x, x^2, y}
    m = embed(k3(), root="a")
    monomials = sorted(
        (act.internal_count, act.external_count)
        for act in (
            embedding_activities(m, st)
            for st in enumerate_spanning_trees(m.underlying_graph())
        )
    )
    assert monomials == [(0, 1), (1, 0), (2, 0)]


def test_generating_function_root_invariant_but_terms_move():
    corpus = [m for m in map_corpus(per_size=6, max_edges=4) if m.edge_count >= 2]
    rng = random.Random(64)
    moved = 0
    for m in rng.sample(corpus, 12):
        reference = tutte_subgraph_expansion(m.underlying_graph())
        base_terms = _tree_terms(m)
        for root in range(m.n_half_edges):
            m2 = m.with_root(root)
            total = sum_terms(_tree_terms(m2))
            assert total == reference
            if _tree_terms(m2) != base_terms:
                moved += 1
    assert moved > 0  # individual activities do depend on the root


def _tree_terms(m):
    out = {}
    for st in enumerate_spanning_trees(m.underlying_graph()):
        act = embedding_activities(m, st)
        out[tuple(sorted(st.internal_edges))] = (
            act.internal_count, act.external_count,
        )
    return out


def sum_terms(table):
    from tuttemap import X, Y, ZERO

    total = ZERO
    for i, e in table.values():
        total = total + X**i * Y**e
    return total


def test_erase_check_when_root_on_removed_edge():
    m = torus_map()
    # the root a sits on aa'; erase_check must still decide (cyclically)
    assert erase_check(m, TORUS_TREE, "aa'")


def test_cyclic_equal_helper():
    assert cyclic_equal("abc", "cab")
    assert not cyclic_equal("abc", "acb")
