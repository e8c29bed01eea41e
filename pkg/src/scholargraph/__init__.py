"""scholargraph: a desk-scale scholar knowledge-graph engine.

Pipeline: ingest publication metadata, mine scholar relationships
(coauthorship, advisor inference, citation, co-citation, teams), compute
rankings, and serve fuzzy/intelligent queries, ego networks, and explained
advisor recommendations over a JSON API.
"""

__version__ = "0.1.0"

from .graph import EdgeKind, RelEdge, ScholarGraph, build_graph, load_snapshot, save_snapshot
from .records import PublicationRecord, Scholar, build_scholars, filter_by_field, parse_corpus

__all__ = [
    "EdgeKind",
    "RelEdge",
    "ScholarGraph",
    "PublicationRecord",
    "Scholar",
    "build_graph",
    "build_scholars",
    "filter_by_field",
    "load_snapshot",
    "parse_corpus",
    "save_snapshot",
    "__version__",
]
