"""Rooted antidirected trees, separator decompositions, level shaving.

A rooted antitree stores a parent array plus one direction flag per non-root
vertex ("tp" = edge points toward the parent, "tc" = toward the child).  The
antidirected invariant (every vertex pure source or pure sink) forces the
source/sink classes to alternate with depth, so the class of the root pins
the whole orientation.

``beta_decompose`` peels a tree into a small separator set W plus the
components of T - W, each of at most beta*k vertices (k = edge count):
repeatedly walk to a deepest vertex whose subtree is still oversized but all
of whose children's subtrees fit, move it into W, and cut its subtree off.
Every round removes more than beta*k vertices, so |W| <= 1/beta + 2 once the
root is added at the end.

``shaved_counts`` reports how many sinks (p) and sources (q) survive after
deleting the first j levels of every decomposition subtree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .digraph import OrientedGraph

TOWARD_PARENT = "tp"
TOWARD_CHILD = "tc"


class TreeFormatError(ValueError):
    pass


@dataclass(frozen=True)
class RootedAntiTree:
    """Antidirected tree with dense vertices 0..n-1 and a distinguished root.

    ``parent[root]`` is None; ``edge_dir[v]`` orients the edge between v and
    its parent and is None exactly at the root.
    """

    n: int
    root: int
    parent: tuple[int | None, ...]
    edge_dir: tuple[str | None, ...]

    def __post_init__(self):
        if not (0 <= self.root < self.n):
            raise TreeFormatError("root out of range")
        if len(self.parent) != self.n or len(self.edge_dir) != self.n:
            raise TreeFormatError("parent/edge_dir length mismatch")
        if self.parent[self.root] is not None or self.edge_dir[self.root] is not None:
            raise TreeFormatError("root must have null parent and direction")
        seen_children = 0
        for v in range(self.n):
            if v == self.root:
                continue
            p = self.parent[v]
            if p is None or not (0 <= p < self.n) or p == v:
                raise TreeFormatError(f"bad parent of {v}")
            if self.edge_dir[v] not in (TOWARD_PARENT, TOWARD_CHILD):
                raise TreeFormatError(f"bad edge direction at {v}")
            seen_children += 1
        # Acyclicity plus connectivity: every vertex must reach the root.
        for v in range(self.n):
            steps = 0
            u: int | None = v
            while u != self.root:
                u = self.parent[u]  # type: ignore[index]
                steps += 1
                if u is None or steps > self.n:
                    raise TreeFormatError(f"vertex {v} does not reach the root")
        # Antidirected: no vertex both emits and receives.
        has_out = [False] * self.n
        has_in = [False] * self.n
        for tail, head in self.oriented_edges():
            has_out[tail] = True
            has_in[head] = True
        for v in range(self.n):
            if has_out[v] and has_in[v]:
                raise TreeFormatError(f"vertex {v} has both an in- and out-edge")

    # ---- structure -------------------------------------------------

    def k(self) -> int:
        """Edge count."""
        return self.n - 1

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(self.n):
            if v != self.root:
                kids[self.parent[v]].append(v)  # type: ignore[index]
        return kids

    def depths(self) -> list[int]:
        d = [0] * self.n
        order = self.topo_order()
        for v in order[1:]:
            d[v] = d[self.parent[v]] + 1  # type: ignore[index]
        return d

    def topo_order(self) -> list[int]:
        """Vertices in BFS order from the root."""
        kids = self.children()
        order = [self.root]
        i = 0
        while i < len(order):
            order.extend(kids[order[i]])
            i += 1
        return order

    def oriented_edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            if v == self.root:
                continue
            p = self.parent[v]
            if self.edge_dir[v] == TOWARD_PARENT:
                yield (v, p)  # type: ignore[misc]
            else:
                yield (p, v)  # type: ignore[misc]

    def max_degree(self) -> int:
        deg = [0] * self.n
        for v in range(self.n):
            if v != self.root:
                deg[v] += 1
                deg[self.parent[v]] += 1  # type: ignore[index]
        return max(deg) if self.n else 0

    # ---- orientation classes ---------------------------------------

    def sources(self) -> frozenset[int]:
        """Vertices with no incoming edge (includes isolated vertices)."""
        has_in = [False] * self.n
        for _, head in self.oriented_edges():
            has_in[head] = True
        return frozenset(v for v in range(self.n) if not has_in[v])

    def sinks(self) -> frozenset[int]:
        """Vertices with no outgoing edge (includes isolated vertices)."""
        has_out = [False] * self.n
        for tail, _ in self.oriented_edges():
            has_out[tail] = True
        return frozenset(v for v in range(self.n) if not has_out[v])

    def is_balanced(self) -> bool:
        return len(self.sinks()) == len(self.sources())

    def to_oriented_graph(self) -> OrientedGraph:
        return OrientedGraph.from_edges(self.n, list(self.oriented_edges()))

    # ---- serialization ----------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "root": self.root,
            "parent": list(self.parent),
            "dir": list(self.edge_dir),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RootedAntiTree":
        try:
            n = int(obj["n"])
            root = int(obj["root"])
            parent = tuple(None if p is None else int(p) for p in obj["parent"])
            edge_dir = tuple(obj["dir"])
        except (KeyError, TypeError, ValueError) as exc:
            raise TreeFormatError(f"bad tree JSON: {exc}") from exc
        return cls(n=n, root=root, parent=parent, edge_dir=edge_dir)

    @classmethod
    def from_json(cls, text: str) -> "RootedAntiTree":
        return cls.from_json_obj(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def antitree_from_shape(
    n: int, root: int, parent: Sequence[int | None], root_class: str = "source"
) -> RootedAntiTree:
    """Orient an undirected rooted tree so it is antidirected.

    The class of every vertex is forced by the root's: classes alternate
    with depth, and each edge leaves its source-class endpoint.
    """
    if root_class not in ("source", "sink"):
        raise ValueError("root_class must be 'source' or 'sink'")
    depth = [0] * n
    order = [root]
    kids: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if v != root:
            kids[parent[v]].append(v)  # type: ignore[index]
    i = 0
    while i < len(order):
        for c in kids[order[i]]:
            depth[c] = depth[order[i]] + 1
            order.append(c)
        i += 1
    dirs: list[str | None] = [None] * n
    for v in range(n):
        if v == root:
            continue
        v_is_source = (depth[v] % 2 == 0) == (root_class == "source")
        dirs[v] = TOWARD_PARENT if v_is_source else TOWARD_CHILD
    return RootedAntiTree(n=n, root=root, parent=tuple(parent), edge_dir=tuple(dirs))


def antipath_tree(k: int, root_class: str = "source") -> RootedAntiTree:
    """Alternating path with k edges, rooted at one end."""
    if k < 0:
        raise ValueError("k must be non-negative")
    parent: list[int | None] = [None] + [i for i in range(k)]
    return antitree_from_shape(k + 1, 0, parent, root_class)


# ---- beta-decomposition ---------------------------------------------


@dataclass(frozen=True)
class SubtreePiece:
    root: int
    vertices: frozenset[int]


@dataclass(frozen=True)
class BetaDecomposition:
    beta: float
    w_set: frozenset[int]
    trees: tuple[SubtreePiece, ...]

    def validate(self, t: RootedAntiTree) -> None:
        """Check all decomposition invariants against the source tree."""
        k = t.k()
        if t.root not in self.w_set:
            raise ValueError("root missing from separator set")
        if len(self.w_set) > 1 / self.beta + 2:
            raise ValueError(
                f"|W| = {len(self.w_set)} exceeds 1/beta + 2 = {1 / self.beta + 2}"
            )
        for piece in self.trees:
            if len(piece.vertices) > self.beta * k:
                raise ValueError(
                    f"piece of {len(piece.vertices)} vertices exceeds beta*k = {self.beta * k}"
                )
        # Pieces must be exactly the components of T - W, each rooted at its
        # vertex closest to the tree root.
        comp_of: dict[int, set[int]] = {}
        for v in t.topo_order():
            if v in self.w_set or v == t.root:
                continue
            p = t.parent[v]
            if p in self.w_set:
                comp_of[v] = {v}
            else:
                comp_of[_find_piece_root(comp_of, t, v)].add(v)
        expected = {frozenset(vs) for vs in comp_of.values()}
        actual = {piece.vertices for piece in self.trees}
        if expected != actual:
            raise ValueError("pieces are not the components of T - W")
        for piece in self.trees:
            if piece.root not in comp_of or comp_of[piece.root] != piece.vertices:
                raise ValueError(f"piece rooted at {piece.root} has the wrong root")


def _find_piece_root(comp_of: dict, t: RootedAntiTree, v: int) -> int:
    u = t.parent[v]
    while u not in comp_of:
        u = t.parent[u]  # type: ignore[index]
    return u  # type: ignore[return-value]


def beta_decompose(t: RootedAntiTree, beta: float) -> BetaDecomposition:
    """Separator decomposition of the underlying (undirected) rooted tree."""
    if not (0 < beta < 1):
        raise ValueError("beta must lie in (0, 1)")
    k = t.k()
    limit = beta * k
    kids = t.children()
    alive = [True] * t.n
    w: set[int] = set()
    pieces: list[SubtreePiece] = []

    def subtree_size(v: int) -> int:
        total = 0
        stack = [v]
        while stack:
            u = stack.pop()
            if alive[u]:
                total += 1
                stack.extend(kids[u])
        return total

    def collect(v: int) -> frozenset[int]:
        got = []
        stack = [v]
        while stack:
            u = stack.pop()
            if alive[u]:
                got.append(u)
                alive[u] = False
                stack.extend(kids[u])
        return frozenset(got)

    while alive[t.root] and subtree_size(t.root) > limit:
        # Deepest vertex with an oversized subtree but no oversized child
        # subtree; moving it into W detaches only small pieces.
        v = t.root
        while True:
            big_child = None
            for c in kids[v]:
                if alive[c] and subtree_size(c) > limit:
                    big_child = c
                    break
            if big_child is None:
                break
            v = big_child
        w.add(v)
        for c in kids[v]:
            if alive[c]:
                pieces.append(SubtreePiece(root=c, vertices=collect(c)))
        alive[v] = False

    if alive[t.root]:
        w.add(t.root)
        for c in kids[t.root]:
            if alive[c]:
                pieces.append(SubtreePiece(root=c, vertices=collect(c)))
        alive[t.root] = False
    else:
        w.add(t.root)

    pieces.sort(key=lambda piece: piece.root)
    return BetaDecomposition(beta=beta, w_set=frozenset(w), trees=tuple(pieces))


# ---- level shaving ---------------------------------------------------


@dataclass(frozen=True)
class ShavedCounts:
    j: int
    p: int
    q: int


def levels_union(t: RootedAntiTree, d: BetaDecomposition, j: int) -> frozenset[int]:
    """Union over decomposition pieces of their first j levels (piece roots
    are level 1, so this keeps vertices at depth < j inside their piece)."""
    if j < 0:
        raise ValueError("j must be non-negative")
    depth = t.depths()
    out: set[int] = set()
    for piece in d.trees:
        base = depth[piece.root]
        for v in piece.vertices:
            if depth[v] - base < j:
                out.add(v)
    return frozenset(out)


def shaved_counts(t: RootedAntiTree, d: BetaDecomposition, j: int) -> ShavedCounts:
    """p = surviving sinks, q = surviving sources after shaving j levels."""
    shaved = levels_union(t, d, j)
    p = len(t.sinks() - shaved)
    q = len(t.sources() - shaved)
    return ShavedCounts(j=j, p=p, q=q)
