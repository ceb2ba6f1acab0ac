"""dibs: certified dense induced bipartite subgraphs in triangle-free graphs.

Extractors return :class:`~dibs.certificates.BipartiteCert` values that an
independent verifier re-checks against the host graph; generators build the
hard instances the extractors are calibrated on.
"""

from .graphs import Graph, GraphError, build_graph, list_triangles, load_graph, save_graph
from .peeling import (
    DegeneracyOrder,
    EmptyCoreError,
    core,
    degeneracy_order,
    greedy_color,
    half_avg_subgraph,
    minimal_min_degree_subgraph,
    turan_independent_set,
)
from .certificates import (
    BipartiteCert,
    ExtractionTrace,
    VerificationReport,
    verify_bipartite_cert,
)

__all__ = [
    "Graph",
    "GraphError",
    "build_graph",
    "list_triangles",
    "load_graph",
    "save_graph",
    "DegeneracyOrder",
    "EmptyCoreError",
    "core",
    "degeneracy_order",
    "greedy_color",
    "half_avg_subgraph",
    "minimal_min_degree_subgraph",
    "turan_independent_set",
    "BipartiteCert",
    "ExtractionTrace",
    "VerificationReport",
    "verify_bipartite_cert",
]

__version__ = "0.1.0"
