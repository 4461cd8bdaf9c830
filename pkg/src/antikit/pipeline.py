"""End-to-end demonstration on an explicit blow-up host.

This wires the full strategy together at desk scale: find a connected
antimatching in the reduced graph, β-decompose the input antitree, pack the
deep part of each decomposition unit onto a matching edge, then embed unit
by unit with the antiwalk embedder, routing each unit to its packed edge
through an exact-length alternating walk.  It only handles hosts whose
reduced graph is known (BlowupHost); it is a demonstration of the machinery
cooperating, not a general-host embedder.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import floor

from .antimatching import AntimatchingRequest, ConnectedAntiMatching, find_bounded_antimatching
from .antiwalk import NEEDS_IN, NEEDS_OUT
from .digraph import OrientedGraph, iter_bits
from .embed import EmbeddingMap
from .packing import PackingInstance, PackingPlan, pack
from .treedecomp import BetaDecomposition, RootedAntiTree, antipath_tree, beta_decompose
from .walkembed import AntiwalkPlan, BlowupHost, embed_along_antiwalk


class PipelineError(RuntimeError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    cluster_size: int = 6000
    density: float = 1.0
    seed: int = 0
    t: int = 1
    anchor: int = 0
    beta: float = 0.11
    alpha: float = 0.09
    eps: float = 0.012
    walk_levels: int = 1
    slice_frac: float = 0.4
    check_pack_hypotheses: bool = True


@dataclass(frozen=True)
class UnitTrace:
    """Where one decomposition unit went: its tree vertices (global ids),
    the matching edge that received its deep levels, and the walk used."""

    unit_root: int
    vertices: tuple[int, ...]
    edge_index: int
    walk: tuple[int, ...]


@dataclass(frozen=True)
class PipelineResult:
    embedding: EmbeddingMap
    matching: ConnectedAntiMatching
    decomposition: BetaDecomposition
    packing: PackingPlan
    units: tuple[UnitTrace, ...]


def _unit_partition(
    tree: RootedAntiTree, decomp: BetaDecomposition
) -> tuple[list[int], list[list[int]]]:
    """Attach every separator vertex to the first decomposition piece on its
    path to the root (or to the root unit if that path meets none)."""
    piece_of: dict[int, int] = {}
    for idx, piece in enumerate(decomp.trees):
        for v in piece.vertices:
            piece_of[v] = idx
    units: list[list[int]] = [sorted(piece.vertices) for piece in decomp.trees]
    root_unit = [tree.root]
    for w in sorted(decomp.w_set):
        if w == tree.root:
            continue
        v = tree.parent[w]
        while v is not None and v not in piece_of:
            v = tree.parent[v]
        if v is None:
            root_unit.append(w)
        else:
            units[piece_of[v]].append(w)
    return sorted(root_unit), [sorted(u) for u in units]


def _unit_tree(
    tree: RootedAntiTree, vertices: list[int], unit_root: int
) -> tuple[RootedAntiTree, list[int]]:
    local = {g: i for i, g in enumerate(vertices)}
    parent: list[int | None] = [None] * len(vertices)
    edge_dir: list[str | None] = [None] * len(vertices)
    for g in vertices:
        if g == unit_root:
            continue
        pg = tree.parent[g]
        if pg not in local:
            raise PipelineError(f"unit around {unit_root} is not parent-closed at {g}")
        parent[local[g]] = local[pg]
        edge_dir[local[g]] = tree.edge_dir[g]
    sub = RootedAntiTree(
        n=len(vertices),
        root=local[unit_root],
        parent=tuple(parent),
        edge_dir=tuple(edge_dir),
    )
    return sub, vertices


def _exact_walk(
    reduced: OrientedGraph,
    start: int,
    start_mode: int,
    length: int,
    end_pair: tuple[int, int],
) -> list[int] | None:
    """Alternating walk with exactly ``length`` edges from ``start`` whose
    final two vertices are ``end_pair``; vertex repeats are fine.  The mode
    at position i is forced by parity, so a layered sweep plus backtracking
    (smallest predecessor first) finds the lexically committed witness."""
    qa, qb = end_pair
    mode_last = start_mode if (length - 1) % 2 == 0 else 1 - start_mode
    last_ok = (
        reduced.has_edge(qa, qb) if mode_last == NEEDS_OUT else reduced.has_edge(qb, qa)
    )
    if not last_ok:
        return None
    reach = [0] * length
    reach[0] = 1 << start
    for i in range(length - 1):
        mode = start_mode if i % 2 == 0 else 1 - start_mode
        nxt = 0
        for v in iter_bits(reach[i]):
            nxt |= reduced.out_mask(v) if mode == NEEDS_OUT else reduced.in_mask(v)
        reach[i + 1] = nxt
    if not (reach[length - 1] >> qa) & 1:
        return None
    walk = [0] * (length + 1)
    walk[length] = qb
    walk[length - 1] = qa
    for i in range(length - 2, -1, -1):
        mode = start_mode if i % 2 == 0 else 1 - start_mode
        succ = walk[i + 1]
        preds = reach[i] & (
            reduced.in_mask(succ) if mode == NEEDS_OUT else reduced.out_mask(succ)
        )
        if not preds:
            return None
        walk[i] = next(iter_bits(preds))
    return walk


def run_pipeline(
    tree: RootedAntiTree, reduced: OrientedGraph, config: PipelineConfig
) -> PipelineResult:
    m = config.cluster_size
    h = config.walk_levels
    if h < 1:
        raise PipelineError("need at least one walk level")
    slice1 = floor(config.slice_frac * m)
    if not 0 < slice1 < m:
        raise PipelineError("slice_frac leaves an empty slice")

    host = BlowupHost(reduced, m, config.density, config.seed)
    matching = find_bounded_antimatching(
        reduced, AntimatchingRequest(t=config.t, anchor=config.anchor)
    )
    decomp = beta_decompose(tree, config.beta)
    root_unit_vertices, piece_unit_vertices = _unit_partition(tree, decomp)

    units = []
    items = []
    for idx, unit_vertices in enumerate(piece_unit_vertices):
        sub, _ = _unit_tree(tree, unit_vertices, decomp.trees[idx].root)
        units.append(sub)
        depth = sub.depths()
        sinks, sources = sub.sinks(), sub.sources()
        p = sum(1 for v in sinks if depth[v] > h)
        q = sum(1 for v in sources if depth[v] > h)
        items.append((p, q))
    instance = PackingInstance(
        items=tuple(items), m=m - slice1, t=config.t, alpha=config.alpha
    )
    plan = pack(instance, check=config.check_pack_hypotheses)

    def slice1_avail(c: int, used: set[int]) -> frozenset[int]:
        base = c * m
        return frozenset(v for v in range(base, base + slice1) if v not in used)

    def slice2_avail(c: int, used: set[int]) -> frozenset[int]:
        base = c * m
        return frozenset(v for v in range(base + slice1, base + m) if v not in used)

    used: set[int] = set()
    image: dict[int, int] = {}
    traces: list[UnitTrace] = []

    def place_unit(
        sub: RootedAntiTree,
        globals_: list[int],
        walk: tuple[int, ...],
        z0: frozenset[int],
        edge_index: int,
    ) -> None:
        z_sets = (z0,) + tuple(slice1_avail(walk[i], used) for i in range(1, h + 1))
        x_sets = (slice2_avail(walk[h - 1], used), slice2_avail(walk[h], used))
        awplan = AntiwalkPlan(walk=walk, z_sets=z_sets, x_sets=x_sets, eps=config.eps)
        emb = embed_along_antiwalk(host, awplan, sub)
        for local, g in enumerate(globals_):
            image[g] = emb[local]
            used.add(emb[local])
        traces.append(
            UnitTrace(
                unit_root=globals_[sub.root],
                vertices=tuple(globals_),
                edge_index=edge_index,
                walk=walk,
            )
        )

    # Root unit bounces on the anchor edge; its deep levels ride that edge's
    # reservoirs without going through the packer (the packer covers the
    # decomposition pieces, whose weights dominate; see the plan validation).
    full_sources = tree.sources()
    a1, b1 = matching.edges[0]
    root_sub, root_globals = _unit_tree(tree, root_unit_vertices, tree.root)
    if tree.root in full_sources:
        walk0 = tuple(a1 if i % 2 == 0 else b1 for i in range(h + 1))
    else:
        walk0 = tuple(b1 if i % 2 == 0 else a1 for i in range(h + 1))
    place_unit(root_sub, root_globals, walk0, slice1_avail(walk0[0], used), 0)

    depth_full = tree.depths()
    order = sorted(
        range(len(units)), key=lambda i: (depth_full[decomp.trees[i].root], i)
    )
    for idx in order:
        sub = units[idx]
        globals_ = piece_unit_vertices[idx]
        r_global = decomp.trees[idx].root
        edge_index = plan.bin_of[idx]
        aj, bj = matching.edges[edge_index]
        parent_global = tree.parent[r_global]
        w = image[parent_global]
        parent_is_source = parent_global in full_sources
        mode0 = NEEDS_IN if parent_is_source else NEEDS_OUT
        mode_last = mode0 if (h - 1) % 2 == 0 else 1 - mode0
        end_pair = (aj, bj) if mode_last == NEEDS_OUT else (bj, aj)
        c = host.cluster_of(w)
        nbr_mask = (
            reduced.out_mask(c) if parent_is_source else reduced.in_mask(c)
        )
        walk = None
        for cprime in iter_bits(nbr_mask):
            walk = _exact_walk(reduced, cprime, mode0, h, end_pair)
            if walk is not None:
                break
        if walk is None:
            raise PipelineError(
                f"no consistent {h}-edge walk from cluster {c} to matching "
                f"edge {edge_index}"
            )
        wadj = host.graph.out_mask(w) if parent_is_source else host.graph.in_mask(w)
        z0 = frozenset(
            v for v in slice1_avail(walk[0], used) if (wadj >> v) & 1
        )
        place_unit(sub, globals_, tuple(walk), z0, edge_index)

    final = EmbeddingMap(image=tuple(image[v] for v in range(tree.n)))
    final.validate(tree.to_oriented_graph(), host.graph)
    return PipelineResult(
        embedding=final,
        matching=matching,
        decomposition=decomp,
        packing=plan,
        units=tuple(traces),
    )


def demo_tree() -> RootedAntiTree:
    """48-vertex alternating path rooted at its source end: balanced, and
    its decomposition at the demo parameters packs within the caps."""
    return antipath_tree(47, root_class="source")


def demo_reduced() -> OrientedGraph:
    return OrientedGraph.from_edges(2, [(0, 1)])


def run_demo(config: PipelineConfig | None = None) -> PipelineResult:
    return run_pipeline(demo_tree(), demo_reduced(), config or PipelineConfig())
