"""Synthetic blow-up hosts and the antiwalk-guided embedder for small
rooted antitrees.

The embedder walks the tree level by level: levels 0..h land in the Z-sets
strung along an antiwalk of the reduced graph, deeper levels bounce between
the two terminal X-reservoirs.  Every image is chosen typical (more than
(d - eps) of the still-unused target) toward the set its children will use,
so the construction can only run dry when the host is sparser than claimed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .antiwalk import is_antiwalk
from .digraph import OrientedGraph, iter_bits
from .embed import EmbeddingMap
from .treedecomp import RootedAntiTree


class ConsistencyMismatchError(ValueError):
    pass


class ThresholdViolatedError(ValueError):
    pass


class TypicalityExhaustedError(RuntimeError):
    pass


class BlowupHost:
    """Blow-up of a reduced oriented graph: one size-m cluster per reduced
    vertex, and between clusters joined by a reduced edge a one-way bipartite
    graph of density at least ``density``.

    Edges are seeded coin flips topped up deterministically (in vertex-pair
    order) so the density floor always holds exactly; density 1 skips the
    randomness and gives complete one-way bipartite pairs.
    """

    __slots__ = ("reduced", "cluster_size", "density", "seed", "graph")

    def __init__(
        self,
        reduced: OrientedGraph,
        cluster_size: int,
        density: float = 1.0,
        seed: int = 0,
    ):
        if cluster_size < 1:
            raise ValueError("cluster_size must be positive")
        if not 0.0 < density <= 1.0:
            raise ValueError("density must be in (0, 1]")
        self.reduced = reduced
        self.cluster_size = cluster_size
        self.density = density
        self.seed = seed
        m = cluster_size
        n = reduced.n * m
        out = [0] * n
        inn = [0] * n
        if density == 1.0:
            for i in range(reduced.n):
                src = self.cluster_mask(i)
                for j in iter_bits(reduced.out_mask(i)):
                    dst = self.cluster_mask(j)
                    for u in self.cluster(i):
                        out[u] |= dst
                    for v in self.cluster(j):
                        inn[v] |= src
        else:
            rng = random.Random(seed)
            floor_count = math.ceil(density * m * m)
            for i, j in reduced.edges():
                chosen = set()
                for u in self.cluster(i):
                    for v in self.cluster(j):
                        if rng.random() < density:
                            chosen.add((u, v))
                if len(chosen) < floor_count:
                    for u in self.cluster(i):
                        for v in self.cluster(j):
                            if (u, v) not in chosen:
                                chosen.add((u, v))
                                if len(chosen) >= floor_count:
                                    break
                        if len(chosen) >= floor_count:
                            break
                for u, v in chosen:
                    out[u] |= 1 << v
                    inn[v] |= 1 << u
        self.graph = OrientedGraph(n, out, inn)

    def cluster(self, i: int) -> range:
        m = self.cluster_size
        return range(i * m, (i + 1) * m)

    def cluster_mask(self, i: int) -> int:
        m = self.cluster_size
        return ((1 << m) - 1) << (i * m)

    def cluster_of(self, v: int) -> int:
        return v // self.cluster_size

    def pair_density(self, i: int, j: int) -> float:
        count = 0
        dst = self.cluster_mask(j)
        for u in self.cluster(i):
            count += (self.graph.out_mask(u) & dst).bit_count()
        return count / (self.cluster_size * self.cluster_size)


@dataclass(frozen=True)
class AntiwalkPlan:
    """An antiwalk of the reduced graph plus the per-position vertex budgets.

    z_sets[i] lives inside cluster walk[i]; the two x_sets live inside the
    last two walk clusters, disjoint from their Z-sets.
    """

    walk: tuple[int, ...]
    z_sets: tuple[frozenset[int], ...]
    x_sets: tuple[frozenset[int], frozenset[int]]
    eps: float

    @property
    def h(self) -> int:
        return len(self.walk) - 1

    def validate(self, host: BlowupHost) -> None:
        if len(self.walk) < 2:
            raise ValueError("walk needs at least one edge")
        if not is_antiwalk(host.reduced, list(self.walk)):
            raise ValueError("walk is not an antiwalk of the reduced graph")
        if len(self.z_sets) != len(self.walk):
            raise ValueError("need one Z-set per walk position")
        if not 0.0 < self.eps < 0.25:
            raise ValueError("eps must lie in (0, 1/4)")
        m = host.cluster_size
        root_eps = self.eps**0.5
        for i, z in enumerate(self.z_sets):
            if any(host.cluster_of(v) != self.walk[i] for v in z):
                raise ValueError(f"Z_{i} leaves cluster {self.walk[i]}")
            need = 3 * self.eps * m if i == 0 else 3 * root_eps * m
            if len(z) < need:
                raise ThresholdViolatedError(
                    f"|Z_{i}| = {len(z)} below threshold {need:.1f}"
                )
        h = self.h
        for off, x in enumerate(self.x_sets):
            pos = h - 1 + off
            if any(host.cluster_of(v) != self.walk[pos] for v in x):
                raise ValueError(f"X-set {off} leaves cluster {self.walk[pos]}")
            if x & self.z_sets[pos]:
                raise ValueError(f"X-set {off} intersects Z_{pos}")
            if len(x) <= 3 * root_eps * m:
                raise ThresholdViolatedError(
                    f"|X_{pos}| = {len(x)} not above threshold {3 * root_eps * m:.1f}"
                )


def _mask_of(vertices) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def embed_along_antiwalk(
    host: BlowupHost, plan: AntiwalkPlan, s: RootedAntiTree
) -> EmbeddingMap:
    """Embed the rooted antitree s into the blow-up host along plan's walk.

    Level i of s lands in Z_i for i <= h; level h+1, h+3, ... in X_{h-1} and
    level h+2, h+4, ... in X_h.  Each image is typical, with respect to the
    unused part of the set the conclusion names, among: Z_{i+1} for i < h,
    both Z_{h-1} and X_{h-1} at level h, and the opposite X-reservoir below.
    """
    plan.validate(host)
    m = host.cluster_size
    eps = plan.eps
    if s.n >= (eps / 10) * m:
        raise ThresholdViolatedError(
            f"tree has {s.n} vertices, needs fewer than {(eps / 10) * m:.1f}"
        )
    reduced = host.reduced
    q0, q1 = plan.walk[0], plan.walk[1]
    starts_out = reduced.has_edge(q0, q1)
    root_source = s.root in s.sources()
    root_sink = s.root in s.sinks()
    if starts_out and not root_source:
        raise ConsistencyMismatchError("walk starts out, root is not a source")
    if not starts_out and not root_sink:
        raise ConsistencyMismatchError("walk starts in, root is not a sink")

    h = plan.h
    z_masks = [_mask_of(z) for z in plan.z_sets]
    x_masks = [_mask_of(x) for x in plan.x_sets]
    depth = s.depths()
    g = host.graph
    used = 0
    image = [-1] * s.n

    # Walk consistency makes level parity decide everything: level-i tree
    # vertices emit edges (are sources) exactly when (i even) == starts_out.
    def level_is_source(i: int) -> bool:
        return (i % 2 == 0) == starts_out

    for v in s.topo_order():
        i = depth[v]
        if i <= h:
            target = z_masks[i]
        elif (i - h) % 2 == 1:
            target = x_masks[0]
        else:
            target = x_masks[1]
        cand = target & ~used
        if v != s.root:
            p = s.parent[v]
            w = image[p]
            cand &= g.out_mask(w) if level_is_source(i - 1) else g.in_mask(w)

        if i < h:
            typ_targets = [z_masks[i + 1]]
        elif i == h:
            typ_targets = [z_masks[h - 1], x_masks[0]]
        elif (i - h) % 2 == 1:
            typ_targets = [x_masks[1]]
        else:
            typ_targets = [x_masks[0]]
        v_out = level_is_source(i)
        checks = []
        for t_mask in typ_targets:
            unused_part = t_mask & ~used
            checks.append((unused_part, (host.density - eps) * unused_part.bit_count()))

        chosen = -1
        for u in iter_bits(cand):
            adj = g.out_mask(u) if v_out else g.in_mask(u)
            if all((adj & part).bit_count() > bar for part, bar in checks):
                chosen = u
                break
        if chosen < 0:
            raise TypicalityExhaustedError(
                f"no typical image for tree vertex {v} at level {i}"
            )
        image[v] = chosen
        used |= 1 << chosen

    return EmbeddingMap(image=tuple(image))
