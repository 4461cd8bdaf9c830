"""Exact pattern-into-host embedding search.

`embed_exact` is a bitmask backtracker: exhaustive, so a miss is a proof of
non-containment at these sizes.  `oracle_embed` re-decides containment by
brute permutation enumeration and exists solely to cross-check the
backtracker's pruning logic; keep the two implementations independent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator

from .digraph import OrientedGraph, iter_bits


class BudgetExceededError(ValueError):
    pass


class InvalidEmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class EmbeddingMap:
    """Injective, direction-preserving map, indexed by pattern vertex."""

    image: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.image[v]

    def __len__(self) -> int:
        return len(self.image)

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.image))

    def validate(
        self,
        pattern: OrientedGraph,
        host: OrientedGraph,
        pin: tuple[int, Iterable[int]] | None = None,
    ) -> None:
        if len(self.image) != pattern.n:
            raise InvalidEmbeddingError("image size differs from pattern order")
        if len(set(self.image)) != len(self.image):
            raise InvalidEmbeddingError("image is not injective")
        for x in self.image:
            if not (0 <= x < host.n):
                raise InvalidEmbeddingError(f"image vertex {x} outside host")
        for u, v in pattern.edges():
            if not host.has_edge(self.image[u], self.image[v]):
                raise InvalidEmbeddingError(
                    f"pattern edge {u}->{v} has no host edge "
                    f"{self.image[u]}->{self.image[v]}"
                )
        if pin is not None:
            x, allowed = pin
            if self.image[x] not in set(allowed):
                raise InvalidEmbeddingError(f"pinned vertex {x} landed outside V*")


def _search_order(pattern: OrientedGraph, root: int) -> list[int]:
    """BFS order from the root, restarting at the smallest unseen vertex for
    further weak components."""
    adj = [pattern.out_mask(v) | pattern.in_mask(v) for v in range(pattern.n)]
    order: list[int] = []
    seen = 0

    def sweep(start: int) -> None:
        nonlocal seen
        queue = deque([start])
        seen |= 1 << start
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in iter_bits(adj[v] & ~seen):
                seen |= 1 << u
                queue.append(u)

    sweep(root)
    for v in range(pattern.n):
        if not (seen >> v) & 1:
            sweep(v)
    return order


def iter_embeddings(
    pattern: OrientedGraph,
    host: OrientedGraph,
    pin: tuple[int, Iterable[int]] | None = None,
) -> Iterator[EmbeddingMap]:
    """Yield every embedding of the pattern, in a deterministic order.

    Backtracking over pattern vertices in BFS order from the pinned vertex;
    candidate domains are bitmasks pruned by degree and by adjacency to the
    already-placed neighbours.  Host vertices are tried in ascending
    degree-sum order so scarce images fail fast.
    """
    if pattern.n > host.n or pattern.edge_count() > host.edge_count():
        return
    if pattern.n == 0:
        yield EmbeddingMap(image=())
        return

    domain = []
    for p in range(pattern.n):
        mask = 0
        for v in range(host.n):
            if (
                host.out_degree(v) >= pattern.out_degree(p)
                and host.in_degree(v) >= pattern.in_degree(p)
            ):
                mask |= 1 << v
        domain.append(mask)
    root = 0
    if pin is not None:
        x, allowed = pin
        vstar = 0
        for v in allowed:
            vstar |= 1 << v
        domain[x] &= vstar
        root = x

    order = _search_order(pattern, root)
    placed_at = {p: i for i, p in enumerate(order)}
    # constraints[i]: (earlier order position, use_out_mask_of_that_image)
    constraints: list[list[tuple[int, bool]]] = [[] for _ in order]
    for i, p in enumerate(order):
        for q in iter_bits(pattern.in_mask(p)):  # pattern edge q -> p
            if placed_at[q] < i:
                constraints[i].append((placed_at[q], True))
        for q in iter_bits(pattern.out_mask(p)):  # pattern edge p -> q
            if placed_at[q] < i:
                constraints[i].append((placed_at[q], False))

    by_scarcity = sorted(
        range(host.n), key=lambda v: (host.out_degree(v) + host.in_degree(v), v)
    )
    image = [0] * len(order)

    def place(i: int) -> Iterator[EmbeddingMap]:
        if i == len(order):
            final = [0] * pattern.n
            for j, p in enumerate(order):
                final[p] = image[j]
            yield EmbeddingMap(image=tuple(final))
            return
        used = 0
        for j in range(i):
            used |= 1 << image[j]
        cand = domain[order[i]] & ~used
        for q_pos, use_out in constraints[i]:
            w = image[q_pos]
            cand &= host.out_mask(w) if use_out else host.in_mask(w)
            if not cand:
                return
        for v in by_scarcity:
            if (cand >> v) & 1:
                image[i] = v
                yield from place(i + 1)

    yield from place(0)


def embed_exact(
    pattern: OrientedGraph,
    host: OrientedGraph,
    pin: tuple[int, Iterable[int]] | None = None,
) -> EmbeddingMap | None:
    """First embedding in search order, or None as a certificate of absence."""
    for found in iter_embeddings(pattern, host, pin):
        return found
    return None


def oracle_embed(
    pattern: OrientedGraph,
    host: OrientedGraph,
    pin: tuple[int, Iterable[int]] | None = None,
) -> EmbeddingMap | None:
    """Naive reference: try every injective map in lexicographic order."""
    if pattern.n > host.n:
        return None
    allowed = None
    if pin is not None:
        allowed = (pin[0], set(pin[1]))
    edges = list(pattern.edges())
    for perm in permutations(range(host.n), pattern.n):
        if allowed is not None and perm[allowed[0]] not in allowed[1]:
            continue
        if all(host.has_edge(perm[u], perm[v]) for u, v in edges):
            return EmbeddingMap(image=perm)
    return None


def longest_antipath(host: OrientedGraph, *, budget: int = 20) -> int:
    """Vertex count of a longest antidirected path, by exhaustive search.

    Memoized on (endpoint, wanted direction, used set); exact, but only
    viable for small hosts, hence the hard budget.
    """
    if host.n > budget:
        raise BudgetExceededError(f"host has {host.n} > {budget} vertices")
    if host.n == 0:
        return 0
    memo: dict[tuple[int, int, int], int] = {}

    def extend(v: int, want_out: bool, used: int) -> int:
        key = (v, want_out, used)
        got = memo.get(key)
        if got is not None:
            return got
        nbrs = (host.out_mask(v) if want_out else host.in_mask(v)) & ~used
        best = 0
        for u in iter_bits(nbrs):
            length = 1 + extend(u, not want_out, used | (1 << u))
            if length > best:
                best = length
        memo[key] = best
        return best

    best = 1
    for v in range(host.n):
        for want_out in (True, False):
            best = max(best, 1 + extend(v, want_out, 1 << v))
    return best


def embed_antisubdivision(spec, host: OrientedGraph) -> EmbeddingMap | None:
    """Materialize the antisubdivision pattern and decide containment
    exactly.  Unrealizable specs raise rather than report absence."""
    from .gadgets import build_antisubdivision

    built = build_antisubdivision(spec)
    return embed_exact(built.graph, host)
