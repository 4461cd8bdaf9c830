from __future__ import annotations

import json
import random

import pytest

from antikit.digraph import Digraph, OrientedGraph, degree_profile, is_antidirected
from antikit.gadgets import (
    AntiSubdivisionSpec,
    EmptyInputError,
    InfeasibleSplitError,
    NotRealizableError,
    anticycle,
    antipath,
    blowup,
    branch_roles,
    build_antisubdivision,
    burr_graph,
    directed_triangle,
    four_copy,
    is_long,
    peel_pseudo,
    strip_isolated,
    transitive_tournament,
)


def _random_oriented(n: int, rng: random.Random, p: float = 0.35) -> OrientedGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            roll = rng.random()
            if roll < p:
                edges.append((u, v))
            elif roll < 2 * p:
                edges.append((v, u))
    return OrientedGraph.from_edges(n, edges)


# ---- stock graphs ----------------------------------------------------


def test_blowup_triangle():
    g = blowup(directed_triangle(), 2)
    assert g.n == 6
    assert g.edge_count() == 12
    prof = degree_profile(g)
    assert prof.min_semidegree == 2
    # copies of vertex 0 both point at both copies of vertex 1
    for c in (0, 1):
        assert set(g.out_neighbors(c)) == {2, 3}


def test_blowup_identity_and_errors():
    tri = directed_triangle()
    assert blowup(tri, 1) == tri
    with pytest.raises(ValueError):
        blowup(tri, 0)


def test_blowup_semidegree_scales():
    rng = random.Random(5)
    for _ in range(20):
        g = _random_oriented(rng.randint(2, 7), rng)
        ell = rng.randint(1, 3)
        b = blowup(g, ell)
        assert b.n == g.n * ell
        assert b.edge_count() == g.edge_count() * ell * ell
        assert degree_profile(b).min_semidegree == ell * degree_profile(g).min_semidegree


def test_transitive_tournament():
    tt = transitive_tournament(4)
    assert sorted(tt.edges()) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert degree_profile(tt).min_semidegree == 0


def test_burr_graph_even():
    for k in (4, 6, 8):
        g = burr_graph(k)
        s = k - 2
        assert g.n == 2 * s
        assert g.edge_count() == s * s
        prof = degree_profile(g)
        assert prof.min_out == prof.min_in == s // 2
    assert sorted(burr_graph(4).edges()) == [(0, 2), (1, 3), (2, 1), (3, 0)]


def test_burr_graph_odd_is_infeasible():
    with pytest.raises(InfeasibleSplitError):
        burr_graph(5)
    with pytest.raises(ValueError):
        burr_graph(3)


def test_antipath_and_anticycle():
    p = antipath(5)
    assert sorted(p.edges()) == [(0, 1), (2, 1), (2, 3), (4, 3)]
    assert is_antidirected(p)
    q = antipath(5, first_out=False)
    assert sorted(q.edges()) == [(1, 0), (1, 2), (3, 2), (3, 4)]

    c = anticycle(6)
    assert c.edge_count() == 6
    assert is_antidirected(c)
    for bad in (3, 5, 2):
        with pytest.raises(ValueError):
            anticycle(bad)


# ---- antisubdivisions ------------------------------------------------


def test_spec_validation():
    with pytest.raises(ValueError):
        AntiSubdivisionSpec.make(3, {(0, 1): 1, (0, 2): 2})  # missing (1,2)
    with pytest.raises(ValueError):
        AntiSubdivisionSpec.make(3, {(0, 1): 0, (0, 2): 2, (1, 2): 2})
    with pytest.raises(ValueError):
        AntiSubdivisionSpec.make(3, {(0, 1): 1, (0, 2): 2, (1, 2): 3}, "middle")
    spec = AntiSubdivisionSpec.make(3, {(0, 1): 1, (0, 2): 2, (1, 2): 3})
    assert spec.total_edges() == 6
    assert spec.length_map()[(1, 2)] == 3


def test_branch_roles_parity():
    spec = AntiSubdivisionSpec.make(3, {(0, 1): 1, (0, 2): 2, (1, 2): 3})
    assert branch_roles(spec) == ["source", "sink", "source"]
    flipped = AntiSubdivisionSpec.make(
        3, {(0, 1): 1, (0, 2): 2, (1, 2): 3}, root_role="sink"
    )
    assert branch_roles(flipped) == ["sink", "source", "sink"]


def test_unrealizable_parities():
    # an odd cycle of odd lengths can never alternate
    spec = AntiSubdivisionSpec.make(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    with pytest.raises(NotRealizableError):
        branch_roles(spec)
    with pytest.raises(NotRealizableError):
        build_antisubdivision(spec)


def test_is_long():
    assert is_long(AntiSubdivisionSpec.make(3, {(0, 1): 1, (0, 2): 2, (1, 2): 3}))
    # all three short pairs close a cycle on the branch vertices
    assert not is_long(AntiSubdivisionSpec.make(3, {(0, 1): 2, (0, 2): 2, (1, 2): 2}))
    assert is_long(AntiSubdivisionSpec.make(3, {(0, 1): 4, (0, 2): 4, (1, 2): 4}))


def test_build_antisubdivision_triangle():
    spec = AntiSubdivisionSpec.make(3, {(0, 1): 1, (0, 2): 2, (1, 2): 3})
    built = build_antisubdivision(spec)
    assert built.branch_vertices == (0, 1, 2)
    assert built.long
    g = built.graph
    assert g.n == 6
    assert g.edge_count() == 6
    assert is_antidirected(g)
    # a subdivided triangle is a closed curve: every vertex has degree 2
    assert all(g.out_degree(v) + g.in_degree(v) == 2 for v in range(g.n))


def test_build_even_subdivision_is_anticycle_shaped():
    spec = AntiSubdivisionSpec.make(3, {(0, 1): 2, (0, 2): 2, (1, 2): 2})
    built = build_antisubdivision(spec)
    assert not built.long
    g = built.graph
    assert g.n == 6 and g.edge_count() == 6
    assert is_antidirected(g)
    ref = anticycle(6)
    assert sorted(g.out_degree(v) for v in range(6)) == sorted(
        ref.out_degree(v) for v in range(6)
    )


def test_build_respects_roles():
    spec = AntiSubdivisionSpec.make(2, {(0, 1): 3}, root_role="sink")
    g = build_antisubdivision(spec).graph
    assert g.out_degree(0) == 0 and g.in_degree(0) > 0


# ---- peeling ----------------------------------------------------------


def test_peel_star_collapses():
    g = OrientedGraph.from_edges(6, [(0, v) for v in range(1, 6)])
    peeled = peel_pseudo(g, 3)
    assert peeled.n == 6  # numbering survives
    assert peeled.edge_count() == 0


def test_peel_triangle_stable():
    tri = directed_triangle()
    assert peel_pseudo(tri, 2) == tri
    assert peel_pseudo(tri, 3).edge_count() == 0


def test_peel_keeps_digraph_type():
    d = Digraph.from_edges(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1)])
    peeled = peel_pseudo(d, 2)
    assert isinstance(peeled, Digraph)
    assert peeled == d  # every side has degree >= 1 > 1/2

    with pytest.raises(ValueError):
        peel_pseudo(d, 0)


def test_peel_guarantee_random():
    """|E| > (k-1) * n forces a non-empty peel with pseudo-semidegree >= k/2."""
    rng = random.Random(23)
    done = 0
    while done < 80:
        n = rng.randint(4, 30)
        k = rng.randint(2, 5)
        need = (k - 1) * n + 1
        if need > n * (n - 1):
            continue
        pool = [(u, v) for u in range(n) for v in range(n) if u != v]
        edges = rng.sample(pool, need)
        d = Digraph.from_edges(n, edges)
        peeled = peel_pseudo(d, k)
        assert peeled.edge_count() > 0
        assert 2 * degree_profile(peeled).min_pseudo_semidegree >= k
        done += 1


def test_strip_isolated():
    g = OrientedGraph.from_edges(5, [(1, 3)])
    stripped, labels = strip_isolated(g)
    assert stripped.n == 2
    assert labels == [1, 3]
    assert sorted(stripped.edges()) == [(0, 1)]


# ---- four-copy gadget -------------------------------------------------


def test_four_copy_single_edge_is_four_cycle():
    g, gmap = four_copy(OrientedGraph.from_edges(2, [(0, 1)]))
    assert g.n == 4
    assert sorted(g.edges()) == [(0, 1), (1, 3), (2, 0), (3, 2)]
    assert not gmap.input_reversed
    assert gmap.v_star() == frozenset({0})
    assert gmap.d1_vertices() == frozenset({0, 1})
    assert degree_profile(g).min_semidegree == 1


def test_four_copy_rejects_empty():
    with pytest.raises(EmptyInputError):
        four_copy(OrientedGraph.from_edges(3, []))


def test_four_copy_reverses_source_heavy_input():
    # two pure sinks vs one pure source: builds on the reversed graph
    g, gmap = four_copy(OrientedGraph.from_edges(3, [(0, 1), (0, 2)]))
    assert gmap.input_reversed
    # the reversal swaps the roles, so the gadget still repairs semidegrees
    assert degree_profile(g).min_semidegree >= 1


def test_four_copy_drops_isolated_vertices():
    g, gmap = four_copy(OrientedGraph.from_edges(4, [(0, 3)]))
    assert g.n == 4  # the two isolated input vertices appear in no copy
    assert set(gmap.origin) == {0, 3}


def test_four_copy_semidegree_meets_pseudo():
    rng = random.Random(41)
    done = 0
    while done < 60:
        base = _random_oriented(rng.randint(2, 9), rng)
        if base.edge_count() == 0:
            continue
        g, gmap = four_copy(base)
        stripped, _ = strip_isolated(base)
        pseudo = degree_profile(stripped).min_pseudo_semidegree
        assert degree_profile(g).min_semidegree >= pseudo
        done += 1


def test_four_copy_edges_project_to_input():
    """Every gadget edge maps through origin to an edge of the (possibly
    reversed) input, in one direction or the other."""
    rng = random.Random(43)
    done = 0
    while done < 40:
        base = _random_oriented(rng.randint(2, 8), rng)
        if base.edge_count() == 0:
            continue
        g, gmap = four_copy(base)
        ref = base.reverse() if gmap.input_reversed else base
        for u, v in g.edges():
            ou, ov = gmap.origin[u], gmap.origin[v]
            assert ref.has_edge(ou, ov) or ref.has_edge(ov, ou)
        done += 1


def test_pull_back():
    g, gmap = four_copy(OrientedGraph.from_edges(2, [(0, 1)]))
    assert gmap.pull_back({0: 0, 1: 1}) == {0: 0, 1: 1}
    with pytest.raises(ValueError):
        gmap.pull_back({0: 3})  # vertex 3 lives in a far copy


def test_gadget_map_json():
    _, gmap = four_copy(OrientedGraph.from_edges(2, [(0, 1)]))
    obj = json.loads(gmap.to_json())
    assert obj["input_reversed"] is False
    assert obj["v_star"] == [0]
    assert len(obj["tags"]) == len(obj["origin"]) == 4
