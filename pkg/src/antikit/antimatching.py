"""Connected antimatchings: anchored families of disjoint directed edges.

A connected antimatching in a host g is an ordered list of edges
(a_1, b_1), ..., (a_t, b_t) whose 2t endpoints are distinct and whose tails
are all ends of out-out-walks from the first tail a_1 (a_1 trivially so).

``find_antimatching`` reduces the search to one maximum-matching question:
collect every edge whose tail is anti-reachable from the anchor, then find a
maximum matching among those edges that covers the anchor by one of its own
out-edges.  Among valid answers the lexicographically smallest edge list is
produced, so results are reproducible.

``find_bounded_antimatching`` additionally drives every tail within a given
out-out-distance of the anchor by exchanging far edges for edges found on
shortest witness walks; each exchange strictly lowers the total tail
distance, so at most n^2 rounds are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

from .antiwalk import reach_from, shortest_out_out_walk
from .digraph import OrientedGraph, VertexOutOfRangeError, iter_bits
from .matching import maximum_matching_size


class AnchorHasNoOutEdgeError(ValueError):
    pass


class SizeNotReachedError(RuntimeError):
    """Target size unattainable; carries the best antimatching found."""

    def __init__(self, msg: str, best: "ConnectedAntiMatching"):
        super().__init__(msg)
        self.best = best


class ExchangeStuckError(RuntimeError):
    """No admissible exchange although some tail exceeds the bound."""

    def __init__(self, msg: str, best: "ConnectedAntiMatching"):
        super().__init__(msg)
        self.best = best


class TooLargeForOracleError(ValueError):
    pass


@dataclass(frozen=True)
class AntimatchingRequest:
    t: int
    anchor: int
    distance_bound: int | None = None


@dataclass(frozen=True)
class ConnectedAntiMatching:
    """Ordered edge list; ``edges[0][0]`` is the anchor."""

    edges: tuple[tuple[int, int], ...]

    @property
    def anchor(self) -> int:
        return self.edges[0][0]

    def size(self) -> int:
        return len(self.edges)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def validate(self, host: OrientedGraph) -> None:
        """Raise ValueError unless this is a connected antimatching of host."""
        if not self.edges:
            raise ValueError("empty antimatching")
        seen: set[int] = set()
        for a, b in self.edges:
            if not host.has_edge(a, b):
                raise ValueError(f"({a}, {b}) is not an edge of the host")
            if a in seen or b in seen or a == b:
                raise ValueError(f"endpoint reused at edge ({a}, {b})")
            seen.update((a, b))
        out_set = reach_from(host, self.anchor).out_set
        for a, _ in self.edges:
            if a not in out_set:
                raise ValueError(f"tail {a} not anti-reachable from {self.anchor}")


def _candidate_edges(g: OrientedGraph, anchor: int) -> list[tuple[int, int]]:
    out_set = reach_from(g, anchor).out_set
    cands = []
    for u in sorted(out_set):
        for v in iter_bits(g.out_mask(u)):
            cands.append((u, v))
    cands.sort()
    return cands


def _best_size_with(cands, n, forced, banned_vertices) -> int:
    """len(forced) plus a maximum matching of the remaining candidates."""
    rest = [
        e
        for e in cands
        if e[0] not in banned_vertices and e[1] not in banned_vertices
    ]
    return len(forced) + maximum_matching_size(n, rest)


def find_antimatching(g: OrientedGraph, req: AntimatchingRequest) -> ConnectedAntiMatching:
    """Connected antimatching of size exactly ``req.t`` anchored at
    ``req.anchor``, lexicographically smallest among those of that size.

    Raises :class:`SizeNotReachedError` (carrying a maximum one) when no
    antimatching of size t anchored there exists; with min_semidegree >= t
    that never happens.
    """
    w = req.anchor
    if not (0 <= w < g.n):
        raise VertexOutOfRangeError(f"anchor {w} outside 0..{g.n - 1}")
    if req.t < 1:
        raise ValueError("t must be at least 1")
    if g.out_mask(w) == 0:
        raise AnchorHasNoOutEdgeError(f"anchor {w} has no outgoing edge")

    cands = _candidate_edges(g, w)
    anchor_edges = [(w, x) for x in g.out_neighbors(w)]

    best_total = -1
    for e0 in anchor_edges:
        total = _best_size_with(cands, g.n, [e0], set(e0))
        if total > best_total:
            best_total = total
    target = min(req.t, best_total)

    # Lexicographic greedy: smallest anchor edge that still allows ``target``
    # edges in total, then smallest compatible candidates, re-checking
    # completability before each acceptance.
    chosen: list[tuple[int, int]] = []
    used: set[int] = set()
    for e0 in anchor_edges:
        if _best_size_with(cands, g.n, [e0], set(e0)) >= target:
            chosen.append(e0)
            used.update(e0)
            break
    for e in cands:
        if len(chosen) >= target:
            break
        if e[0] in used or e[1] in used or e[0] == w:
            continue
        if _best_size_with(cands, g.n, chosen + [e], used | set(e)) >= target:
            chosen.append(e)
            used.update(e)
    result = ConnectedAntiMatching(tuple(chosen))
    if best_total < req.t:
        raise SizeNotReachedError(
            f"wanted {req.t} edges anchored at {w}, maximum is {best_total}",
            best=result,
        )
    return result


def find_bounded_antimatching(
    g: OrientedGraph, req: AntimatchingRequest, trace: list | None = None
) -> ConnectedAntiMatching:
    """Like :func:`find_antimatching` but every tail ends within
    ``req.distance_bound`` (default ``8 * t``) of the anchor.

    Far edges are exchanged for edges lying on a shortest witness walk with
    both endpoints outside the current antimatching.  Any such edge has its
    tail strictly closer than the offending tail, so the total tail distance
    drops every round; the round count is capped at n^2 as a safety net.
    """
    bound = req.distance_bound if req.distance_bound is not None else 8 * req.t
    m = find_antimatching(g, req)
    w = m.anchor
    ood = reach_from(g, w).ood
    edges = list(m.edges)

    for _ in range(2 * g.n * g.n + 2):
        if trace is not None:
            trace.append(sum(ood[a] for a, _ in edges[1:]))
        far = [(ood[a], i) for i, (a, _) in enumerate(edges) if ood[a] > bound]
        if not far:
            break
        _, k = max(far)  # worst offender; ties broken toward larger index
        covered = {v for e in edges for v in e}
        walk = shortest_out_out_walk(g, w, edges[k][0])
        assert walk is not None  # tails are anti-reachable by construction
        replacement = None
        for p in range(len(walk) - 1):
            x, y = walk[p], walk[p + 1]
            if not g.has_edge(x, y):
                x, y = y, x  # edge traversed against its orientation
            if x not in covered and y not in covered:
                replacement = (x, y)
                break
        if replacement is None:
            raise ExchangeStuckError(
                f"tail {edges[k][0]} at distance {ood[edges[k][0]]} > {bound} "
                "but no off-matching edge lies on its witness walk",
                best=ConnectedAntiMatching(tuple(edges)),
            )
        edges[k] = replacement
    else:
        raise ExchangeStuckError(
            "exchange loop exceeded its n^2 round cap",
            best=ConnectedAntiMatching(tuple(edges)),
        )
    return ConnectedAntiMatching(tuple(edges))


def oracle_max_antimatching(g: OrientedGraph, w: int, *, limit: int = 12) -> int:
    """Maximum anchored antimatching size by exhaustive enumeration.

    Checks every family of pairwise-disjoint candidate edges that covers the
    anchor by one of its out-edges; intended for hosts with at most
    ``limit`` vertices.
    """
    if g.n > limit:
        raise TooLargeForOracleError(f"oracle capped at n <= {limit}, got {g.n}")
    if not (0 <= w < g.n):
        raise VertexOutOfRangeError(f"anchor {w} outside 0..{g.n - 1}")
    if g.out_mask(w) == 0:
        return 0
    cands = _candidate_edges(g, w)
    others = [e for e in cands if e[0] != w]

    best = 0

    def grow(idx: int, used: set[int], size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        for i in range(idx, len(others)):
            a, b = others[i]
            if a not in used and b not in used:
                grow(i + 1, used | {a, b}, size + 1)

    for x in g.out_neighbors(w):
        grow(0, {w, x}, 1)
    return best
