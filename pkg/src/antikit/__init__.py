"""Toolkit for oriented graphs: antidirected walks, antimatchings,
antitree decomposition, balanced packing, gadget constructions, and
exact/approximate embedding, plus a small verification harness.
"""

from .antimatching import (
    AntimatchingRequest,
    ConnectedAntiMatching,
    find_antimatching,
    find_bounded_antimatching,
    oracle_max_antimatching,
)
from .antiwalk import (
    NEEDS_IN,
    NEEDS_OUT,
    ReachReport,
    is_anticonnected,
    is_antiwalk,
    oracle_reach,
    reach_from,
    shortest_out_out_walk,
)
from .digraph import (
    Digraph,
    GraphError,
    OrientedGraph,
    degree_profile,
    format_oedge,
    is_antidirected,
    load_graph,
    parse_oedge,
    save_graph,
    vertex_classes,
)
from .embed import EmbeddingMap, embed_exact, iter_embeddings, longest_antipath, oracle_embed
from .gadgets import (
    AntiSubdivisionSpec,
    GadgetMap,
    anticycle,
    antipath,
    blowup,
    build_antisubdivision,
    burr_graph,
    directed_triangle,
    four_copy,
    peel_pseudo,
    strip_isolated,
    transitive_tournament,
)
from .harness import VerificationJob, VerificationReport, enumerate_oriented, report_emit, run
from .packing import PackingInstance, PackingPlan, oracle_pack, pack
from .pipeline import PipelineConfig, PipelineResult, run_demo, run_pipeline
from .treedecomp import (
    BetaDecomposition,
    RootedAntiTree,
    antipath_tree,
    antitree_from_shape,
    beta_decompose,
    levels_union,
    shaved_counts,
)
from .walkembed import AntiwalkPlan, BlowupHost, embed_along_antiwalk

__version__ = "0.1.0"

__all__ = [
    "AntimatchingRequest",
    "AntiSubdivisionSpec",
    "AntiwalkPlan",
    "BetaDecomposition",
    "BlowupHost",
    "ConnectedAntiMatching",
    "Digraph",
    "EmbeddingMap",
    "GadgetMap",
    "GraphError",
    "NEEDS_IN",
    "NEEDS_OUT",
    "OrientedGraph",
    "PackingInstance",
    "PackingPlan",
    "PipelineConfig",
    "PipelineResult",
    "ReachReport",
    "RootedAntiTree",
    "VerificationJob",
    "VerificationReport",
    "anticycle",
    "antipath",
    "antipath_tree",
    "antitree_from_shape",
    "beta_decompose",
    "blowup",
    "build_antisubdivision",
    "burr_graph",
    "degree_profile",
    "directed_triangle",
    "embed_along_antiwalk",
    "embed_exact",
    "enumerate_oriented",
    "find_antimatching",
    "find_bounded_antimatching",
    "format_oedge",
    "four_copy",
    "is_anticonnected",
    "is_antidirected",
    "is_antiwalk",
    "iter_embeddings",
    "levels_union",
    "load_graph",
    "longest_antipath",
    "oracle_embed",
    "oracle_max_antimatching",
    "oracle_pack",
    "oracle_reach",
    "pack",
    "parse_oedge",
    "peel_pseudo",
    "reach_from",
    "report_emit",
    "run",
    "run_demo",
    "run_pipeline",
    "save_graph",
    "shaved_counts",
    "shortest_out_out_walk",
    "strip_isolated",
    "transitive_tournament",
    "vertex_classes",
]
