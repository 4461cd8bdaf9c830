"""Antidirected walk reachability.

A walk is antidirected when consecutive edges alternate orientation, so each
shared vertex either receives both edges or emits both.  Walks here always
start with an edge leaving the source ("out" walks).  A walk to z is an
out-out-walk when its last edge leaves z, and an out-in-walk when its last
edge enters z; the trivial single-vertex walk counts as an out-out-walk.

Reachability runs as a BFS over the doubled state space (vertex, mode) where
mode records the direction the next edge must have:

    (v, NEEDS_OUT) --edge v->u--> (u, NEEDS_IN)
    (v, NEEDS_IN)  --edge u->v--> (u, NEEDS_OUT)

Reaching (z, NEEDS_OUT) means the walk just used an edge leaving z, i.e. an
out-out-walk; reaching (z, NEEDS_IN) means an out-in-walk.  The BFS therefore
touches at most 2n states and all distances are below 2n.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import inf

from .digraph import OrientedGraph, VertexOutOfRangeError, iter_bits

NEEDS_OUT = 0
NEEDS_IN = 1

INF = inf


@dataclass(frozen=True)
class ReachReport:
    """Anti-reachability from a fixed source.

    ``ood[z]``: length of a shortest out-out-walk from source to z (0 for the
    source itself), ``oid[z]``: shortest out-in-walk length (always >= 1).
    Unreachable entries hold ``math.inf``.  ``out_set``/``in_set`` are the
    vertices with finite ``ood``/``oid``.
    """

    source: int
    ood: tuple[float, ...]
    oid: tuple[float, ...]

    @property
    def out_set(self) -> frozenset[int]:
        return frozenset(z for z, d in enumerate(self.ood) if d < INF)

    @property
    def in_set(self) -> frozenset[int]:
        return frozenset(z for z, d in enumerate(self.oid) if d < INF)


def _bfs_states(g: OrientedGraph, a: int):
    """Distance arrays (per mode) plus predecessor states for witnesses."""
    n = g.n
    dist = [[INF] * n, [INF] * n]
    pred: list[list[tuple[int, int] | None]] = [[None] * n, [None] * n]
    dist[NEEDS_OUT][a] = 0
    q = deque([(a, NEEDS_OUT)])
    while q:
        v, mode = q.popleft()
        d = dist[mode][v] + 1
        if mode == NEEDS_OUT:
            nxt, mask = NEEDS_IN, g.out_mask(v)
        else:
            nxt, mask = NEEDS_OUT, g.in_mask(v)
        for u in iter_bits(mask):
            if dist[nxt][u] is INF:
                dist[nxt][u] = d
                pred[nxt][u] = (v, mode)
                q.append((u, nxt))
    return dist, pred


def reach_from(g: OrientedGraph, a: int) -> ReachReport:
    """BFS anti-reachability report from vertex ``a``."""
    if not (0 <= a < g.n):
        raise VertexOutOfRangeError(f"source {a} outside 0..{g.n - 1}")
    dist, _ = _bfs_states(g, a)
    return ReachReport(source=a, ood=tuple(dist[NEEDS_OUT]), oid=tuple(dist[NEEDS_IN]))


def shortest_out_out_walk(g: OrientedGraph, a: int, z: int) -> list[int] | None:
    """A shortest out-out-walk from a to z as a vertex sequence, or None.

    Diagnostic helper; the walk is rebuilt from BFS predecessor states.
    """
    if not (0 <= a < g.n and 0 <= z < g.n):
        raise VertexOutOfRangeError(f"endpoints ({a}, {z}) outside 0..{g.n - 1}")
    dist, pred = _bfs_states(g, a)
    if dist[NEEDS_OUT][z] is INF:
        return None
    seq = []
    state: tuple[int, int] | None = (z, NEEDS_OUT)
    while state is not None:
        seq.append(state[0])
        state = pred[state[1]][state[0]]
    seq.reverse()
    return seq


def is_antiwalk(g: OrientedGraph, seq: list[int] | tuple[int, ...]) -> bool:
    """True iff ``seq`` traces an antidirected walk in ``g``.

    Consecutive vertices must be joined by an edge (either direction) and
    the edge orientations must alternate along the sequence.  A single
    vertex is a valid (trivial) walk; vertices and edges may repeat.
    """
    if len(seq) == 0:
        return False
    for v in seq:
        if not (0 <= v < g.n):
            return False
    if len(seq) == 1:
        return True
    # prev_into: whether the previous edge points into the current vertex.
    prev_into = None
    for a, b in zip(seq, seq[1:]):
        if g.has_edge(a, b):
            into_b = True
        elif g.has_edge(b, a):
            into_b = False
        else:
            return False
        # The edge points into b iff it points out of a, so alternation at a
        # requires the previous edge to point the same way at a as this one.
        if prev_into is not None and prev_into == into_b:
            return False
        prev_into = into_b
    return True


def is_anticonnected(g: OrientedGraph, a: int) -> bool:
    """True iff every vertex is the end of some out-out- or out-in-walk
    from ``a`` (the source itself counts via the trivial walk)."""
    rep = reach_from(g, a)
    return len(rep.out_set | rep.in_set) == g.n


def oracle_reach(g: OrientedGraph, a: int, *, start_mode: int = NEEDS_OUT):
    """Layered dynamic program over all antiwalks of length <= 2n.

    Independent re-derivation of :func:`reach_from` used as a test oracle:
    layer L holds the set of (vertex, mode) states reachable by walks of
    exactly L edges, with first-hit lengths recorded.  Returns an
    ``(end_out, end_in)`` pair of distance tuples, where ``end_out[z]`` is
    the shortest walk whose last edge leaves z (plus the trivial walk when
    z == a and the start mode is NEEDS_OUT).
    """
    if not (0 <= a < g.n):
        raise VertexOutOfRangeError(f"source {a} outside 0..{g.n - 1}")
    n = g.n
    first = [[INF] * n, [INF] * n]
    first[start_mode][a] = 0
    cur = [0, 0]
    cur[start_mode] = 1 << a
    for length in range(1, 2 * n + 1):
        nxt = [0, 0]
        for v in iter_bits(cur[NEEDS_OUT]):
            nxt[NEEDS_IN] |= g.out_mask(v)
        for v in iter_bits(cur[NEEDS_IN]):
            nxt[NEEDS_OUT] |= g.in_mask(v)
        for mode in (NEEDS_OUT, NEEDS_IN):
            for v in iter_bits(nxt[mode]):
                if first[mode][v] is INF:
                    first[mode][v] = length
        cur = nxt
    return tuple(first[NEEDS_OUT]), tuple(first[NEEDS_IN])
