"""Host and pattern constructions: blow-ups, circulant bipartite splits,
tournaments, antisubdivisions, degree peeling, and the four-copy gadget.

Everything here is deterministic.  Constructions that must make a choice
(peeling order, circulant offsets, copy identification) fix it explicitly so
outputs are reproducible byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .digraph import (
    Digraph,
    OrientedGraph,
    iter_bits,
    vertex_classes,
)


class InfeasibleSplitError(ValueError):
    pass


class NotRealizableError(ValueError):
    pass


class EmptyInputError(ValueError):
    pass


# ---- simple hosts ----------------------------------------------------


def directed_triangle() -> OrientedGraph:
    return OrientedGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])


def blowup(g: OrientedGraph, ell: int) -> OrientedGraph:
    """Replace each vertex by ``ell`` copies and each edge by a complete
    one-way bipartite bundle.  Vertex (v, c) becomes index v*ell + c."""
    if ell < 1:
        raise ValueError("ell must be positive")
    n = g.n * ell
    out = [0] * n
    inn = [0] * n
    cluster = [(((1 << ell) - 1) << (v * ell)) for v in range(g.n)]
    for u, v in g.edges():
        for c in range(ell):
            out[u * ell + c] |= cluster[v]
            inn[v * ell + c] |= cluster[u]
    return OrientedGraph(n, out, inn)


def transitive_tournament(h: int) -> OrientedGraph:
    """Tournament on h vertices with every edge pointing to the larger index."""
    if h < 1:
        raise ValueError("h must be positive")
    out = [0] * h
    inn = [0] * h
    for u in range(h):
        for v in range(u + 1, h):
            out[u] |= 1 << v
            inn[v] |= 1 << u
    return OrientedGraph(h, out, inn)


def burr_graph(k: int) -> OrientedGraph:
    """Balanced orientation of the complete bipartite graph on two sides of
    k - 2 vertices: vertex a_i sends to the (k-2)/2 cyclically following
    b-vertices and receives from the rest, so every semidegree is (k-2)/2.

    Requires k even (each side's k - 2 incident pairs must split evenly);
    odd k raises :class:`InfeasibleSplitError`.
    """
    if k < 4:
        raise ValueError("k must be at least 4")
    if k % 2 != 0:
        raise InfeasibleSplitError(f"k = {k} is odd, the even split does not exist")
    s = k - 2
    half = s // 2
    edges = []
    for i in range(s):
        for j in range(half):
            edges.append((i, s + (i + j) % s))
        for j in range(half, s):
            edges.append((s + (i + j) % s, i))
    return OrientedGraph.from_edges(2 * s, edges)


def antipath(num_vertices: int, first_out: bool = True) -> OrientedGraph:
    """Alternating path pattern on the given number of vertices."""
    if num_vertices < 1:
        raise ValueError("need at least one vertex")
    edges = []
    for i in range(num_vertices - 1):
        forward = (i % 2 == 0) == first_out
        edges.append((i, i + 1) if forward else (i + 1, i))
    return OrientedGraph.from_edges(num_vertices, edges)


def anticycle(length: int) -> OrientedGraph:
    """Alternating cycle with ``length`` edges (length must be even, >= 4)."""
    if length < 4 or length % 2 != 0:
        raise ValueError("anticycle length must be an even number >= 4")
    edges = []
    for i in range(length):
        u, v = i, (i + 1) % length
        edges.append((u, v) if i % 2 == 0 else (v, u))
    return OrientedGraph.from_edges(length, edges)


# ---- antisubdivisions ------------------------------------------------


@dataclass(frozen=True)
class AntiSubdivisionSpec:
    """Subdivision data for the complete graph on h branch vertices.

    ``lengths[(i, j)]`` (i < j) is the number of edges on the subdivided
    path replacing pair {i, j}; ``root_role`` fixes whether branch vertex 0
    is a source or a sink, which pins the alternating orientation.
    """

    h: int
    lengths: tuple[tuple[tuple[int, int], int], ...]
    root_role: str = "source"

    @classmethod
    def make(cls, h: int, lengths: dict[tuple[int, int], int], root_role: str = "source"):
        return cls(h=h, lengths=tuple(sorted(lengths.items())), root_role=root_role)

    def length_map(self) -> dict[tuple[int, int], int]:
        return dict(self.lengths)

    def total_edges(self) -> int:
        return sum(length for _, length in self.lengths)

    def __post_init__(self):
        if self.h < 2:
            raise ValueError("need at least two branch vertices")
        if self.root_role not in ("source", "sink"):
            raise ValueError("root_role must be 'source' or 'sink'")
        seen = set()
        for (i, j), length in self.lengths:
            if not (0 <= i < j < self.h):
                raise ValueError(f"bad pair ({i}, {j})")
            if length < 1:
                raise ValueError(f"path length for ({i}, {j}) must be >= 1")
            seen.add((i, j))
        want = {(i, j) for i in range(self.h) for j in range(i + 1, self.h)}
        if seen != want:
            raise ValueError("lengths must cover every branch pair exactly once")


def branch_roles(spec: AntiSubdivisionSpec) -> list[str]:
    """Source/sink role per branch vertex, or raise NotRealizableError.

    A subdivided pair of length L forces equal roles iff L is even; the
    constraints form parities over the complete graph, so propagating from
    branch vertex 0 and checking every pair decides realizability.
    """
    role = [None] * spec.h
    role[0] = spec.root_role
    lengths = spec.length_map()
    # Every pair touches vertex 0, so one propagation pass fixes all roles
    # and a full sweep afterwards catches any inconsistent pair.
    for j in range(1, spec.h):
        length = lengths[(0, j)]
        same = length % 2 == 0
        role[j] = role[0] if same else ("sink" if role[0] == "source" else "source")
    for (i, j), length in lengths.items():
        same = length % 2 == 0
        if (role[i] == role[j]) != same:
            raise NotRealizableError(
                f"pair ({i}, {j}) of length {length} conflicts with the "
                "parities forced by the other pairs"
            )
    return role  # type: ignore[return-value]


def is_long(spec: AntiSubdivisionSpec) -> bool:
    """True iff the pairs subdivided into fewer than 3 edges form a forest."""
    parent = list(range(spec.h))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), length in spec.lengths:
        if length < 3:
            ri, rj = find(i), find(j)
            if ri == rj:
                return False
            parent[ri] = rj
    return True


@dataclass(frozen=True)
class AntiSubdivision:
    graph: OrientedGraph
    branch_vertices: tuple[int, ...]
    long: bool


def build_antisubdivision(spec: AntiSubdivisionSpec) -> AntiSubdivision:
    """Materialize the antidirected subdivision described by ``spec``.

    Branch vertices come first (0..h-1), then interior path vertices in
    sorted pair order.  Raises :class:`NotRealizableError` when the path
    parities admit no consistent source/sink assignment.
    """
    roles = branch_roles(spec)
    edges: list[tuple[int, int]] = []
    nxt = spec.h

    def emit(a: int, a_is_source: bool, b: int) -> None:
        edges.append((a, b) if a_is_source else (b, a))

    for (i, j), length in sorted(spec.lengths):
        chain = [i] + [nxt + s for s in range(length - 1)] + [j]
        nxt += length - 1
        a_source = roles[i] == "source"
        for a, b in zip(chain, chain[1:]):
            emit(a, a_source, b)
            a_source = not a_source
    g = OrientedGraph.from_edges(nxt, edges)
    return AntiSubdivision(
        graph=g, branch_vertices=tuple(range(spec.h)), long=is_long(spec)
    )


# ---- degree peeling --------------------------------------------------


def peel_pseudo(g: Digraph | OrientedGraph, k: int):
    """Largest subgraph in which every vertex has out- and in-degree either
    zero or at least k/2, obtained by peeling.

    Works on the bipartite split (each vertex contributes an out-side and an
    in-side), repeatedly deleting the currently lowest-degree side whose
    degree is at most (k-1)/2, lowest vertex index first.  The result keeps
    the original vertex numbering; if the input has more than (k-1)*n edges
    the result is guaranteed non-empty.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = g.n
    out = [g.out_mask(v) for v in range(n)]
    inn = [g.in_mask(v) for v in range(n)]
    threshold = (k - 1) / 2
    alive_out = [True] * n
    alive_in = [True] * n

    def low_side():
        best = None
        for v in range(n):
            if alive_out[v]:
                d = out[v].bit_count()
                if d <= threshold and (best is None or d < best[0]):
                    best = (d, 0, v)
            if alive_in[v]:
                d = inn[v].bit_count()
                if d <= threshold and (best is None or d < best[0]):
                    best = (d, 1, v)
        return best

    while True:
        victim = low_side()
        if victim is None:
            break
        _, side, v = victim
        if side == 0:
            alive_out[v] = False
            for u in iter_bits(out[v]):
                inn[u] &= ~(1 << v)
            out[v] = 0
        else:
            alive_in[v] = False
            for u in iter_bits(inn[v]):
                out[u] &= ~(1 << v)
            inn[v] = 0

    if isinstance(g, OrientedGraph):
        return OrientedGraph(n, out, inn)
    return Digraph(n, out, inn)


def strip_isolated(g: OrientedGraph) -> tuple[OrientedGraph, list[int]]:
    """Drop degree-zero vertices; returns (graph, kept-vertex labels)."""
    keep = [v for v in range(g.n) if g.out_mask(v) or g.in_mask(v)]
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges()]
    return OrientedGraph.from_edges(len(keep), edges), keep


# ---- four-copy gadget ------------------------------------------------

TAG_INTERIOR = ("D1", "D2", "D3", "D4")
TAG_A12 = "A12"
TAG_A34 = "A34"
TAG_B14 = "B14"
TAG_B23 = "B23"


@dataclass(frozen=True)
class GadgetMap:
    """Provenance of each gadget vertex.

    ``tag[x]`` says which glued copy region vertex x lives in; ``origin[x]``
    is the source vertex in the (possibly edge-reversed) input; and
    ``input_reversed`` records whether the construction ran on the reversed
    input because it had fewer pure sources than pure sinks.
    """

    tags: tuple[str, ...]
    origin: tuple[int, ...]
    input_reversed: bool

    def d1_vertices(self) -> frozenset[int]:
        return frozenset(
            x for x, t in enumerate(self.tags) if t in ("D1", TAG_A12, TAG_B14)
        )

    def v_star(self) -> frozenset[int]:
        """First-copy vertices other than its pure sinks; embeddings whose
        pinned vertex lands here stay inside the first copy."""
        return frozenset(
            x for x, t in enumerate(self.tags) if t in ("D1", TAG_A12)
        )

    def pull_back(self, mapping: dict[int, int]) -> dict[int, int]:
        """Translate a gadget embedding that stayed in the first copy into
        vertices of the input graph."""
        d1 = self.d1_vertices()
        for x in mapping.values():
            if x not in d1:
                raise ValueError(f"image vertex {x} lies outside the first copy")
        return {u: self.origin[x] for u, x in mapping.items()}

    def to_json_obj(self) -> dict:
        return {
            "tags": list(self.tags),
            "origin": list(self.origin),
            "input_reversed": self.input_reversed,
            "v_star": sorted(self.v_star()),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def four_copy(d_prime: OrientedGraph) -> tuple[OrientedGraph, GadgetMap]:
    """Glue four copies of ``d_prime`` into an oriented graph whose minimum
    semidegree is at least the input's pseudo-semidegree.

    Copies 2 and 4 are edge-reversed.  Writing A for the pure sources and B
    for the pure sinks of the input, copies 1 and 2 share their A vertices,
    copies 3 and 4 share theirs, copies 1 and 4 share B, and copies 2 and 3
    share B.  Pure sources thus gain matching in-edges from a reversed copy
    and pure sinks gain out-edges, while interior vertices keep both
    semidegrees.  Isolated input vertices are dropped first; an input with
    no edges raises :class:`EmptyInputError`.
    """
    if d_prime.edge_count() == 0:
        raise EmptyInputError("input graph has no edges")
    base, labels = strip_isolated(d_prime)
    classes = vertex_classes(base)
    reversed_input = len(classes.v_out) < len(classes.v_in)
    if reversed_input:
        base = base.reverse()
        classes = vertex_classes(base)
    a_set = classes.v_out  # no incoming edge: pure sources
    b_set = classes.v_in  # no outgoing edge: pure sinks

    tags: list[str] = []
    origin: list[int] = []
    gidx: dict[tuple[int, int], int] = {}

    def vertex(copy: int, v: int) -> int:
        if v in a_set:
            key = (0, v) if copy in (1, 2) else (1, v)
            tag = TAG_A12 if copy in (1, 2) else TAG_A34
        elif v in b_set:
            key = (2, v) if copy in (1, 4) else (3, v)
            tag = TAG_B14 if copy in (1, 4) else TAG_B23
        else:
            key = (3 + copy, v)
            tag = TAG_INTERIOR[copy - 1]
        if key not in gidx:
            gidx[key] = len(tags)
            tags.append(tag)
            origin.append(labels[v])
        return gidx[key]

    edges = []
    for u, v in base.edges():
        for copy in (1, 2, 3, 4):
            gu, gv = vertex(copy, u), vertex(copy, v)
            edges.append((gu, gv) if copy in (1, 3) else (gv, gu))
    gadget = OrientedGraph.from_edges(len(tags), edges)
    gmap = GadgetMap(tags=tuple(tags), origin=tuple(origin), input_reversed=reversed_input)
    return gadget, gmap
