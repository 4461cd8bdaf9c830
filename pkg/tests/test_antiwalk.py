from __future__ import annotations

import random

import pytest

from antikit.antiwalk import (
    INF,
    NEEDS_IN,
    NEEDS_OUT,
    is_anticonnected,
    is_antiwalk,
    oracle_reach,
    reach_from,
    shortest_out_out_walk,
)
from antikit.digraph import OrientedGraph, VertexOutOfRangeError


def _random_graph(n: int, rng: random.Random, p: float = 0.35) -> OrientedGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            roll = rng.random()
            if roll < p:
                edges.append((u, v))
            elif roll < 2 * p:
                edges.append((v, u))
    return OrientedGraph.from_edges(n, edges)


def test_trivial_walk_is_out_out():
    g = OrientedGraph.from_edges(2, [(0, 1)])
    rep = reach_from(g, 0)
    assert rep.ood[0] == 0
    assert rep.oid == (INF, 1)
    # the head of a single edge has no outgoing edge, so no out-out-walk
    # can end there
    assert rep.ood[1] == INF
    assert rep.out_set == frozenset({0})
    assert rep.in_set == frozenset({1})


def test_triangle_distances():
    # 0 -> 1 -> 2 -> 0: from 0 the only move is the out-edge to 1, and from
    # there every continuation needs an in-edge of 1 (only 0 -> 1 again).
    g = OrientedGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    rep = reach_from(g, 0)
    assert rep.ood == (0, INF, INF)
    assert rep.oid == (INF, 1, INF)


def test_hand_checked_four_vertices():
    # 0 -> 1 <- 2 -> 3: alternating walks reach everything from 0.
    g = OrientedGraph.from_edges(4, [(0, 1), (2, 1), (2, 3)])
    rep = reach_from(g, 0)
    assert rep.ood == (0, INF, 2, INF)
    assert rep.oid == (INF, 1, INF, 3)


def test_walk_may_reuse_edges():
    # out-in to the far end of a path with one reversal: 0 -> 1 <- 2 needs
    # the walk 0,1,2 and then 2,1 reuses nothing; but reaching oid of 1
    # again through 2 -> 1 shows edge reuse is allowed.
    g = OrientedGraph.from_edges(3, [(0, 1), (2, 1)])
    rep = reach_from(g, 0)
    assert rep.ood[2] == 2
    assert rep.oid[1] == 1
    walk = shortest_out_out_walk(g, 0, 2)
    assert walk == [0, 1, 2]
    assert is_antiwalk(g, walk)


def test_shortest_walk_endpoints_and_length():
    rng = random.Random(4)
    for _ in range(40):
        g = _random_graph(rng.randint(2, 10), rng)
        rep = reach_from(g, 0)
        for z in range(g.n):
            walk = shortest_out_out_walk(g, 0, z)
            if rep.ood[z] is INF:
                assert walk is None
            else:
                assert walk is not None
                assert walk[0] == 0 and walk[-1] == z
                assert len(walk) - 1 == rep.ood[z]
                assert is_antiwalk(g, walk)


def test_is_antiwalk():
    g = OrientedGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert is_antiwalk(g, [0])
    assert is_antiwalk(g, [0, 1])
    assert not is_antiwalk(g, [0, 1, 2])  # 0->1->2 is a directed path
    assert is_antiwalk(g, [0, 1, 0])  # reuses the edge 0->1 in both roles
    assert is_antiwalk(g, [0, 2])  # single edge traversed against its arrow
    assert is_antiwalk(g, [2, 0])
    assert not is_antiwalk(g, [])
    assert not is_antiwalk(g, [5])


def test_is_antiwalk_alternation():
    g = OrientedGraph.from_edges(4, [(0, 1), (2, 1), (2, 3)])
    assert is_antiwalk(g, [0, 1, 2, 3])
    assert is_antiwalk(g, [3, 2, 1, 0])
    # both edges at 2 leave it, so 2 acts as a source: still antidirected
    assert is_antiwalk(g, [1, 2, 3])
    # a directed 2-path is not
    h = OrientedGraph.from_edges(3, [(0, 1), (1, 2)])
    assert not is_antiwalk(h, [0, 1, 2])


def test_ood_is_symmetric():
    """Reversing an out-out-walk from a to z gives one from z to a."""
    rng = random.Random(9)
    for _ in range(60):
        g = _random_graph(rng.randint(2, 9), rng)
        reps = [reach_from(g, v) for v in range(g.n)]
        for a in range(g.n):
            for z in range(g.n):
                assert reps[a].ood[z] == reps[z].ood[a]


def test_oracle_equivalence_random():
    rng = random.Random(7)
    for _ in range(120):
        g = _random_graph(rng.randint(1, 14), rng)
        a = rng.randrange(g.n)
        rep = reach_from(g, a)
        end_out, end_in = oracle_reach(g, a)
        assert rep.ood == end_out
        assert rep.oid == end_in


def test_oracle_start_mode_in():
    # starting on an in-edge is the reverse-graph problem
    rng = random.Random(13)
    for _ in range(40):
        g = _random_graph(rng.randint(2, 8), rng)
        a = rng.randrange(g.n)
        end_out, end_in = oracle_reach(g, a, start_mode=NEEDS_IN)
        rev_out, rev_in = oracle_reach(g.reverse(), a, start_mode=NEEDS_OUT)
        assert end_out == rev_in
        assert end_in == rev_out


def test_is_anticonnected():
    assert is_anticonnected(OrientedGraph.from_edges(4, [(0, 1), (2, 1), (2, 3)]), 0)
    assert not is_anticonnected(OrientedGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)]), 0)
    assert is_anticonnected(OrientedGraph.from_edges(1, []), 0)


def test_source_out_of_range():
    g = OrientedGraph.from_edges(2, [(0, 1)])
    with pytest.raises(VertexOutOfRangeError):
        reach_from(g, 2)
    with pytest.raises(VertexOutOfRangeError):
        shortest_out_out_walk(g, 0, 9)
