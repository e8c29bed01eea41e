"""Ego-network documents: one scholar plus direct neighbors under one kind.

The document is the API's visualization payload.  Node identity tags
(center / advisor / advisee / coauthor / other) let a client choose colors
without the service knowing anything about presentation; size hints are
link-strength shares normalized to (0, 1].  ``EGO_NETWORK_SCHEMA`` is the
published JSON Schema the test suite validates every response against.
"""

from __future__ import annotations

from .graph import EdgeKind, KIND_WIRE_NAMES, ScholarGraph
from .mining import DEFAULT_YEAR_RANGE, collab_profile

EGO_NETWORK_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "EgoNetworkDoc",
    "type": "object",
    "required": ["center", "kind", "nodes", "links"],
    "additionalProperties": False,
    "properties": {
        "center": {"type": "string"},
        "kind": {"enum": ["coauthor", "advisor", "cites", "cocited", "team"]},
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "name", "tag", "size"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "name": {"type": "string"},
                    "tag": {
                        "enum": ["center", "advisor", "advisee", "coauthor", "other"]
                    },
                    "size": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                },
            },
        },
        "links": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["src", "dst", "kind", "weight"],
                "additionalProperties": False,
                "properties": {
                    "src": {"type": "string"},
                    "dst": {"type": "string"},
                    "kind": {
                        "enum": ["coauthor", "advisor", "cites", "cocited", "team"]
                    },
                    "weight": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        },
        "geo": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "lat", "lng"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "lat": {"type": "number"},
                    "lng": {"type": "number"},
                },
            },
        },
        "series": {
            "type": "object",
            "patternProperties": {"^[0-9]{4}$": {"type": "integer", "minimum": 0}},
            "additionalProperties": False,
        },
    },
}


def identity_tag(graph: ScholarGraph, center: str, other: str) -> str:
    """Relationship of ``other`` to ``center``: advisor > advisee > coauthor."""
    if graph.get_edge(other, center, EdgeKind.ADVISOR_OF):
        return "advisor"
    if graph.get_edge(center, other, EdgeKind.ADVISOR_OF):
        return "advisee"
    if graph.get_edge(center, other, EdgeKind.COAUTHOR):
        return "coauthor"
    return "other"


def build_ego_doc(
    graph: ScholarGraph,
    center: str,
    kind: EdgeKind,
    include_geo: bool = False,
    include_series: bool = False,
    year_range: tuple[int, int] = DEFAULT_YEAR_RANGE,
) -> dict:
    """Assemble the ego-network document for one scholar and edge kind.

    Nodes are the center plus its neighbors under ``kind``; links are all
    edges of that kind among the node set, with weights copied verbatim
    from the store.
    """
    neighbor_ids = [sid for sid, _ in graph.neighbors(center, kind, "both")]
    node_ids = [center] + neighbor_ids
    node_set = set(node_ids)

    links = []
    strength = {sid: 0.0 for sid in node_ids}
    for e in graph.edges_of_kind(kind):
        if e.src in node_set and e.dst in node_set:
            links.append(
                {
                    "src": e.src,
                    "dst": e.dst,
                    "kind": KIND_WIRE_NAMES[kind],
                    "weight": e.weight,
                }
            )
            strength[e.src] += e.weight
            strength[e.dst] += e.weight
    max_strength = max(strength.values()) if links else 1.0
    if max_strength <= 0:
        max_strength = 1.0

    nodes = []
    for sid in node_ids:
        tag = "center" if sid == center else identity_tag(graph, center, sid)
        size = strength[sid] / max_strength if links else 1.0
        nodes.append(
            {
                "id": sid,
                "name": graph.scholars[sid].name,
                "tag": tag,
                "size": size if size > 0 else 1.0 / (max_strength * 10),
            }
        )

    doc = {"center": center, "kind": KIND_WIRE_NAMES[kind], "nodes": nodes, "links": links}

    if include_geo:
        geo = []
        for sid in node_ids:
            inst = graph.scholars[sid].institution
            if inst in graph.geo_table:
                lat, lng = graph.geo_table[inst]
                geo.append({"id": sid, "lat": lat, "lng": lng})
        doc["geo"] = geo
    if include_series:
        profile = collab_profile(
            list(graph.publications.values()), center, graph.geo_table, year_range
        )
        doc["series"] = {str(year): n for year, n in profile.yearly_counts.items()}
    return doc
