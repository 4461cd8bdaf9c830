"""Core digraph types and serialization.

Vertices are dense integers ``0..n-1``.  Adjacency is kept as one Python int
bitmask per vertex (bit ``v`` of ``out_mask(u)`` set iff the edge ``u -> v``
exists), which makes the intersection-heavy search code elsewhere in the
package cheap.

Two graph classes live here:

* :class:`OrientedGraph` forbids loops, duplicate edges and 2-cycles.
* :class:`Digraph` forbids loops only; it exists because the degree-peeling
  reduction accepts general digraphs whose 2-cycles disappear on the way out.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Base class for malformed-graph conditions."""


class LoopEdgeError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class TwoCycleError(GraphError):
    """Raised with the offending pair when both u->v and v->u are present."""


class VertexOutOfRangeError(GraphError):
    pass


class FormatError(GraphError):
    """Malformed oedge/JSON input."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_edges(edges: Iterable[tuple[int, int]], n: int, *, allow_two_cycles: bool):
    """Shared edge validation; returns (out_masks, in_masks) lists."""
    if n < 0:
        raise VertexOutOfRangeError("vertex count must be non-negative")
    out = [0] * n
    inn = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRangeError(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise LoopEdgeError(f"loop at vertex {u}")
        if out[u] >> v & 1:
            raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
        if not allow_two_cycles and (out[v] >> u & 1):
            raise TwoCycleError(f"2-cycle between {u} and {v}")
        out[u] |= 1 << v
        inn[v] |= 1 << u
    return out, inn


class OrientedGraph:
    """Immutable oriented graph (no loops, no duplicates, no 2-cycles).

    The constructor trusts its arguments; use :func:`validate` or
    :meth:`from_edges` for untrusted edge lists.
    """

    __slots__ = ("n", "_out", "_in")

    def __init__(self, n: int, out_masks: Sequence[int], in_masks: Sequence[int]):
        self.n = n
        self._out = tuple(out_masks)
        self._in = tuple(in_masks)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "OrientedGraph":
        out, inn = _check_edges(edges, n, allow_two_cycles=False)
        return cls(n, out, inn)

    # ---- adjacency -------------------------------------------------

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    def out_neighbors(self, v: int) -> Iterator[int]:
        return iter_bits(self._out[v])

    def in_neighbors(self, v: int) -> Iterator[int]:
        return iter_bits(self._in[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._out[u] >> v & 1)

    def out_degree(self, v: int) -> int:
        return self._out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self._in[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self._out[u]):
                yield (u, v)

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._out)

    # ---- derived graphs --------------------------------------------

    def reverse(self) -> "OrientedGraph":
        return OrientedGraph(self.n, self._in, self._out)

    def relabel(self, perm: Sequence[int]) -> "OrientedGraph":
        """Return the graph with vertex v renamed perm[v]."""
        out = [0] * self.n
        inn = [0] * self.n
        for u, v in self.edges():
            out[perm[u]] |= 1 << perm[v]
            inn[perm[v]] |= 1 << perm[u]
        return OrientedGraph(self.n, out, inn)

    def check(self) -> None:
        """Re-validate the structural invariants (used by tests)."""
        _check_edges(self.edges(), self.n, allow_two_cycles=False)
        for v in range(self.n):
            for u in iter_bits(self._in[v]):
                if not (self._out[u] >> v & 1):
                    raise GraphError(f"in/out mirror broken at ({u}, {v})")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OrientedGraph)
            and self.n == other.n
            and self._out == other._out
        )

    def __hash__(self) -> int:
        return hash((self.n, self._out))

    def __repr__(self) -> str:
        return f"OrientedGraph(n={self.n}, m={self.edge_count()})"


class Digraph:
    """Loop-free digraph; 2-cycles allowed, duplicate edges rejected."""

    __slots__ = ("n", "_out", "_in")

    def __init__(self, n: int, out_masks: Sequence[int], in_masks: Sequence[int]):
        self.n = n
        self._out = tuple(out_masks)
        self._in = tuple(in_masks)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        out, inn = _check_edges(edges, n, allow_two_cycles=True)
        return cls(n, out, inn)

    out_mask = OrientedGraph.out_mask
    in_mask = OrientedGraph.in_mask
    out_neighbors = OrientedGraph.out_neighbors
    in_neighbors = OrientedGraph.in_neighbors
    has_edge = OrientedGraph.has_edge
    out_degree = OrientedGraph.out_degree
    in_degree = OrientedGraph.in_degree
    edges = OrientedGraph.edges
    edge_count = OrientedGraph.edge_count

    def is_oriented(self) -> bool:
        return all((self._out[v] & self._in[v]) == 0 for v in range(self.n))

    def to_oriented(self) -> OrientedGraph:
        if not self.is_oriented():
            raise TwoCycleError("digraph contains a 2-cycle")
        return OrientedGraph(self.n, self._out, self._in)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self._out == other._out
        )

    def __hash__(self) -> int:
        return hash((self.n, self._out))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.edge_count()})"


def validate(edges: Iterable[tuple[int, int]], n: int) -> OrientedGraph:
    """Build an :class:`OrientedGraph` from a raw edge list, or raise a
    :class:`GraphError` subclass naming the first violation found."""
    return OrientedGraph.from_edges(n, edges)


# ---- degree summaries ----------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    min_out: int
    min_in: int
    min_semidegree: int
    min_pseudo_semidegree: int
    edge_count: int


def degree_profile(g: OrientedGraph | Digraph) -> DegreeProfile:
    """Minimum out/in/semidegree plus the pseudo-semidegree.

    The pseudo-semidegree is the largest d such that every out-degree and
    in-degree lies in {0} union [d, inf); equivalently the smallest positive
    degree, and 0 when the graph has no edges at all.
    """
    if g.n == 0:
        return DegreeProfile(0, 0, 0, 0, 0)
    outs = [g.out_degree(v) for v in range(g.n)]
    ins = [g.in_degree(v) for v in range(g.n)]
    positive = [d for d in outs + ins if d > 0]
    return DegreeProfile(
        min_out=min(outs),
        min_in=min(ins),
        min_semidegree=min(min(outs), min(ins)),
        min_pseudo_semidegree=min(positive) if positive else 0,
        edge_count=g.edge_count(),
    )


@dataclass(frozen=True)
class VertexClass:
    """v_in: vertices with no outgoing edge; v_out: no incoming edge.

    An isolated vertex belongs to both sets.
    """

    v_in: frozenset[int]
    v_out: frozenset[int]


def vertex_classes(g: OrientedGraph) -> VertexClass:
    v_in = frozenset(v for v in range(g.n) if g.out_mask(v) == 0)
    v_out = frozenset(v for v in range(g.n) if g.in_mask(v) == 0)
    return VertexClass(v_in=v_in, v_out=v_out)


def is_antidirected(g: OrientedGraph) -> bool:
    """True iff every vertex is a pure source or a pure sink, i.e. the graph
    has no directed path with two edges."""
    return all(g.out_mask(v) == 0 or g.in_mask(v) == 0 for v in range(g.n))


# ---- serialization -------------------------------------------------
#
# oedge v1 text format:
#   line 1: "n m"
#   lines 2..m+1: "u v"  (one directed edge per line)


def format_oedge(g: OrientedGraph | Digraph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_oedge(text: str, *, allow_two_cycles: bool = False) -> OrientedGraph | Digraph:
    rows = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not rows:
        raise FormatError("empty oedge input")
    head = rows[0].split()
    if len(head) != 2:
        raise FormatError(f"bad header {rows[0]!r}, expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError(f"non-integer header {rows[0]!r}") from exc
    if len(rows) - 1 != m:
        raise FormatError(f"header says {m} edges, found {len(rows) - 1}")
    edges = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise FormatError(f"non-integer edge line {ln!r}") from exc
    if allow_two_cycles:
        return Digraph.from_edges(n, edges)
    return OrientedGraph.from_edges(n, edges)


def graph_to_json_obj(g: OrientedGraph | Digraph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def graph_from_json_obj(obj: dict, *, allow_two_cycles: bool = False):
    try:
        n = obj["n"]
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad graph JSON: {exc}") from exc
    if allow_two_cycles:
        return Digraph.from_edges(n, edges)
    return OrientedGraph.from_edges(n, edges)


def load_graph(path: str, *, allow_two_cycles: bool = False):
    """Read a graph from ``path``, sniffing JSON vs oedge text."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json_obj(json.loads(text), allow_two_cycles=allow_two_cycles)
    return parse_oedge(text, allow_two_cycles=allow_two_cycles)


def save_graph(g: OrientedGraph | Digraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_oedge(g))
