from __future__ import annotations

import random

import pytest

from antikit.antimatching import (
    AnchorHasNoOutEdgeError,
    AntimatchingRequest,
    ConnectedAntiMatching,
    ExchangeStuckError,
    SizeNotReachedError,
    TooLargeForOracleError,
    find_antimatching,
    find_bounded_antimatching,
    oracle_max_antimatching,
)
from antikit.antiwalk import reach_from
from antikit.digraph import OrientedGraph, degree_profile


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


def test_single_edge():
    g = OrientedGraph.from_edges(2, [(0, 1)])
    am = find_antimatching(g, AntimatchingRequest(t=1, anchor=0))
    assert am.edges == ((0, 1),)
    assert am.anchor == 0
    assert am.size() == 1
    assert am.vertices() == frozenset({0, 1})
    am.validate(g)


def test_anchor_without_out_edge():
    g = OrientedGraph.from_edges(2, [(0, 1)])
    with pytest.raises(AnchorHasNoOutEdgeError):
        find_antimatching(g, AntimatchingRequest(t=1, anchor=1))


def test_size_not_reached_carries_best():
    g = OrientedGraph.from_edges(3, [(0, 1), (0, 2)])
    with pytest.raises(SizeNotReachedError) as exc:
        find_antimatching(g, AntimatchingRequest(t=2, anchor=0))
    assert exc.value.best.size() == 1


def test_lexicographic_choice():
    # both (0,1),(2,3) and (0,3),(2,1) are valid; lexicographic wins
    g = OrientedGraph.from_edges(4, [(0, 1), (0, 3), (2, 1), (2, 3)])
    am = find_antimatching(g, AntimatchingRequest(t=2, anchor=0))
    assert am.edges == ((0, 1), (2, 3))


def test_validate_rejects_junk():
    g = OrientedGraph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        ConnectedAntiMatching(edges=()).validate(g)
    with pytest.raises(ValueError):
        # not an edge
        ConnectedAntiMatching(edges=((1, 0),)).validate(g)
    with pytest.raises(ValueError):
        # endpoint reuse
        ConnectedAntiMatching(edges=((0, 1), (0, 1))).validate(g)
    with pytest.raises(ValueError):
        # tail 2 is not anti-reachable from 0 in this host
        ConnectedAntiMatching(edges=((0, 1), (2, 3))).validate(g)


def test_exchange_fires():
    """A far tail gets swapped for one on a shorter witness walk.

    In 0->1<-4->5<-2->3 the greedy lexicographic pick is (0,1),(2,3) with
    tail distances 0 and 4; under a distance bound of 2 the exchange must
    replace (2,3) by (4,5).
    """
    g = OrientedGraph.from_edges(6, [(0, 1), (4, 1), (4, 5), (2, 5), (2, 3)])
    rep = reach_from(g, 0)
    assert rep.ood[2] == 4 and rep.ood[4] == 2

    greedy = find_antimatching(g, AntimatchingRequest(t=2, anchor=0))
    assert greedy.edges == ((0, 1), (2, 3))

    trace: list = []
    bounded = find_bounded_antimatching(
        g, AntimatchingRequest(t=2, anchor=0, distance_bound=2), trace
    )
    assert bounded.edges == ((0, 1), (4, 5))
    assert trace  # at least one exchange happened
    bounded.validate(g)


def test_exchange_stuck():
    # size 2 forces tails {0, 2}, and ood(0, 2) = 2 can never meet bound 1
    g = OrientedGraph.from_edges(4, [(0, 1), (2, 1), (2, 3)])
    with pytest.raises(ExchangeStuckError) as exc:
        find_bounded_antimatching(g, AntimatchingRequest(t=2, anchor=0, distance_bound=1))
    assert exc.value.best.size() == 2


def test_default_bound_is_8t():
    g = OrientedGraph.from_edges(6, [(0, 1), (4, 1), (4, 5), (2, 5), (2, 3)])
    # 8t = 16 already admits the greedy answer, so no exchange happens
    am = find_bounded_antimatching(g, AntimatchingRequest(t=2, anchor=0))
    assert am.edges == ((0, 1), (2, 3))


def test_oracle_small_cases():
    g = OrientedGraph.from_edges(6, [(0, 1), (4, 1), (4, 5), (2, 5), (2, 3)])
    assert oracle_max_antimatching(g, 0) == 3
    assert oracle_max_antimatching(OrientedGraph.from_edges(2, [(0, 1)]), 0) == 1
    # the oracle reports 0 for an anchor with no out-edge (the finder raises)
    assert oracle_max_antimatching(OrientedGraph.from_edges(2, [(0, 1)]), 1) == 0
    with pytest.raises(TooLargeForOracleError):
        oracle_max_antimatching(OrientedGraph.from_edges(13, []), 0)


def test_finder_matches_oracle():
    """find_antimatching reaches t exactly when the oracle says t is feasible."""
    rng = random.Random(21)
    for _ in range(120):
        g = _random_graph(rng.randint(2, 8), rng)
        anchors = [v for v in range(g.n) if g.out_degree(v) > 0]
        if not anchors:
            continue
        anchor = rng.choice(anchors)
        best = oracle_max_antimatching(g, anchor)
        for t in range(1, best + 1):
            am = find_antimatching(g, AntimatchingRequest(t=t, anchor=anchor))
            am.validate(g)
            assert am.size() == t
        with pytest.raises(SizeNotReachedError):
            find_antimatching(g, AntimatchingRequest(t=best + 1, anchor=anchor))


def test_semidegree_guarantee_random():
    # t <= min semidegree always succeeds, any anchor
    rng = random.Random(3)
    done = 0
    while done < 40:
        g = _random_graph(rng.randint(3, 9), rng, p=0.45)
        delta = degree_profile(g).min_semidegree
        if delta < 1:
            continue
        done += 1
        for anchor in range(g.n):
            for t in range(1, delta + 1):
                am = find_bounded_antimatching(g, AntimatchingRequest(t=t, anchor=anchor))
                am.validate(g)
                assert am.size() == t
                rep = reach_from(g, anchor)
                assert all(rep.ood[a] <= 8 * t for a, _ in am.edges)
