"""Open JSON API over a mined snapshot.

Read-only by design: every endpoint is a pure view of the loaded graph,
and rebuilds happen offline via the CLI followed by a snapshot swap.
Errors always carry the same envelope: ``{"status", "kind", "message"}``.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .ego import EGO_NETWORK_SCHEMA, build_ego_doc
from .graph import (
    ScholarGraph,
    UnknownScholarError,
    WIRE_KINDS,
    load_snapshot,
    to_nodelink,
)
from .ranking import Measure, RankingCache, paginate
from .recommend import FormError, PreferenceForm, recommend_advisors
from .search import NameIndex, answer, parse_query

DEFAULT_PORT = 8787
PORT_ENV_VAR = "WOS_PORT"
MAX_PAGE_LIMIT = 500


_SCHOLAR_SUMMARY_SCHEMA = {
    "type": "object",
    "required": ["id", "name", "inst"],
    "additionalProperties": False,
    "properties": {
        "id": {"type": "string"},
        "name": {"type": "string"},
        "inst": {"type": "string"},
    },
}

# Published response schemas, one per JSON endpoint (the ego document's
# schema lives in ego.EGO_NETWORK_SCHEMA).  The test suite validates every
# endpoint response against these.
RESPONSE_SCHEMAS = {
    "healthz": {
        "type": "object",
        "required": ["status", "snapshot", "format_version", "scholars", "publications", "edges"],
        "additionalProperties": False,
        "properties": {
            "status": {"const": "ok"},
            "snapshot": {"type": "string"},
            "format_version": {"type": "integer"},
            "scholars": {"type": "integer", "minimum": 0},
            "publications": {"type": "integer", "minimum": 0},
            "edges": {"type": "integer", "minimum": 0},
        },
    },
    "scholars_query": {
        "type": "object",
        "required": ["query", "status", "resolved", "results"],
        "additionalProperties": False,
        "properties": {
            "query": {
                "type": "object",
                "required": ["kind", "name", "relation"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"enum": ["name_search", "relation_query"]},
                    "name": {"type": "string"},
                    "relation": {
                        "enum": ["advisor", "advisees", "collaborators", "citers", "team", None]
                    },
                },
            },
            "status": {"enum": ["ok", "ambiguous", "no_match", "no_relation"]},
            "resolved": {
                "oneOf": [
                    {"type": "null"},
                    {
                        "type": "object",
                        "required": ["id", "name"],
                        "additionalProperties": False,
                        "properties": {"id": {"type": "string"}, "name": {"type": "string"}},
                    },
                ]
            },
            "results": {"type": "array", "items": _SCHOLAR_SUMMARY_SCHEMA},
        },
    },
    "scholar_profile": {
        "type": "object",
        "required": ["id", "name", "inst", "first_pub_year", "pub_ids", "fields", "measures"],
        "additionalProperties": False,
        "properties": {
            "id": {"type": "string"},
            "name": {"type": "string"},
            "inst": {"type": "string"},
            "first_pub_year": {"type": "integer"},
            "pub_ids": {"type": "array", "items": {"type": "string"}},
            "fields": {"type": "array", "items": {"type": "string"}},
            "measures": {
                "type": "object",
                "required": [
                    "collaborators",
                    "advisees",
                    "team_members",
                    "advisor_influence",
                    "citations",
                    "potential_index",
                ],
                "additionalProperties": False,
                "properties": {
                    name: {"type": "number", "minimum": 0}
                    for name in (
                        "collaborators",
                        "advisees",
                        "team_members",
                        "advisor_influence",
                        "citations",
                        "potential_index",
                    )
                },
            },
        },
    },
    "rankings": {
        "type": "object",
        "required": ["measure", "total", "offset", "limit", "entries"],
        "additionalProperties": False,
        "properties": {
            "measure": {
                "enum": [
                    "collaborators",
                    "advisees",
                    "team_members",
                    "advisor_influence",
                    "citations",
                    "potential_index",
                ]
            },
            "total": {"type": "integer", "minimum": 0},
            "offset": {"type": "integer", "minimum": 0},
            "limit": {"type": "integer", "minimum": 0},
            "entries": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "name", "value"],
                    "additionalProperties": False,
                    "properties": {
                        "id": {"type": "string"},
                        "name": {"type": "string"},
                        "value": {"type": "number", "exclusiveMinimum": 0},
                    },
                },
            },
        },
    },
    "recommend": {
        "type": "object",
        "required": ["status", "recommendations"],
        "additionalProperties": False,
        "properties": {
            "status": {"enum": ["ok", "no_candidates"]},
            "recommendations": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "name", "score", "reasons", "ego_preview"],
                    "additionalProperties": False,
                    "properties": {
                        "id": {"type": "string"},
                        "name": {"type": "string"},
                        "score": {"type": "number", "minimum": 0, "maximum": 1},
                        "reasons": {
                            "type": "array",
                            "minItems": 1,
                            "items": {"type": "string"},
                        },
                        "ego_preview": {
                            "type": "object",
                            "required": ["advisees", "coauthors"],
                            "additionalProperties": False,
                            "properties": {
                                "advisees": {
                                    "type": "array",
                                    "items": {
                                        "type": "object",
                                        "required": ["id", "name"],
                                        "additionalProperties": False,
                                        "properties": {
                                            "id": {"type": "string"},
                                            "name": {"type": "string"},
                                        },
                                    },
                                },
                                "coauthors": {
                                    "type": "array",
                                    "items": {
                                        "type": "object",
                                        "required": ["id", "name", "weight"],
                                        "additionalProperties": False,
                                        "properties": {
                                            "id": {"type": "string"},
                                            "name": {"type": "string"},
                                            "weight": {"type": "number", "exclusiveMinimum": 0},
                                        },
                                    },
                                },
                            },
                        },
                    },
                },
            },
        },
    },
    "error": {
        "type": "object",
        "required": ["status", "kind", "message"],
        "additionalProperties": False,
        "properties": {
            "status": {"type": "integer", "minimum": 400, "maximum": 599},
            "kind": {"type": "string"},
            "message": {"type": "string"},
        },
    },
}


class ApiError(Exception):
    def __init__(self, status: int, kind: str, message: str):
        super().__init__(message)
        self.status = status
        self.kind = kind
        self.message = message

    def response(self) -> JSONResponse:
        return JSONResponse(
            status_code=self.status,
            content={"status": self.status, "kind": self.kind, "message": self.message},
        )


class AppState:
    """Immutable view bundle; a snapshot swap replaces graph and index."""

    def __init__(self, graph: ScholarGraph):
        self.graph = graph
        self.index = NameIndex.from_graph(graph)
        self.cache = RankingCache(lambda: self.graph)

    def swap(self, graph: ScholarGraph) -> None:
        index = NameIndex.from_graph(graph)
        self.graph = graph
        self.index = index

    def measures_for(self, scholar_id: str) -> dict[str, float]:
        out = {}
        for measure in Measure:
            entries = dict(self.cache.get(measure).entries)
            out[measure.value] = entries.get(scholar_id, 0)
        return out


class RecommendRequest(BaseModel):
    field_tags: list[str] = []
    min_advisees: int = 0
    min_citations: int = 0
    institution: str | None = None
    weights: dict[str, float] = {}
    limit: int = 10


def _scholar_summary(graph: ScholarGraph, sid: str) -> dict:
    s = graph.scholars[sid]
    return {"id": sid, "name": s.name, "inst": s.institution}


def create_app(state: AppState, ui_dist: Path | None = None) -> FastAPI:
    app = FastAPI(title="scholargraph", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return exc.response()

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        return ApiError(400, "bad_request", str(exc.errors()[:1])).response()

    @app.exception_handler(UnknownScholarError)
    async def _unknown_scholar(_req: Request, exc: UnknownScholarError):
        return ApiError(404, "not_found", str(exc)).response()

    @app.get("/healthz")
    def healthz():
        g = state.graph
        return {
            "status": "ok",
            "snapshot": g.fingerprint,
            "format_version": g.version,
            "scholars": len(g.scholars),
            "publications": len(g.publications),
            "edges": len(g.edges),
        }

    @app.get("/scholars")
    def scholars_query(q: str = "", limit: int = 20):
        if not q.strip():
            raise ApiError(400, "empty_query", "query parameter q must be non-empty")
        limit = max(1, min(limit, MAX_PAGE_LIMIT))
        ast = parse_query(q)
        result = answer(ast, state.graph, state.index, limit=limit)
        return {
            "query": {
                "kind": ast.kind,
                "name": ast.name,
                "relation": ast.relation.value if ast.relation else None,
            },
            "status": result.status,
            "resolved": (
                {"id": result.resolved[0], "name": result.resolved[1]}
                if result.resolved
                else None
            ),
            "results": [_scholar_summary(state.graph, sid) for sid, _ in result.results],
        }

    @app.get("/scholars/{scholar_id}")
    def scholar_profile(scholar_id: str):
        g = state.graph
        s = g.scholars.get(scholar_id)
        if s is None:
            raise UnknownScholarError(scholar_id)
        fields: set[str] = set()
        for pid in s.pub_ids:
            pub = g.publications.get(pid)
            if pub:
                fields.update(pub.fields)
        return {
            "id": s.scholar_id,
            "name": s.name,
            "inst": s.institution,
            "first_pub_year": s.first_pub_year,
            "pub_ids": s.pub_ids,
            "fields": sorted(fields),
            "measures": state.measures_for(scholar_id),
        }

    @app.get("/scholars/{scholar_id}/ego")
    def scholar_ego(
        scholar_id: str, kind: str = "coauthor", geo: bool = False, series: bool = False
    ):
        if kind not in WIRE_KINDS:
            raise ApiError(
                400, "bad_kind", f"kind must be one of {sorted(WIRE_KINDS)}"
            )
        if scholar_id not in state.graph.scholars:
            raise UnknownScholarError(scholar_id)
        return build_ego_doc(
            state.graph,
            scholar_id,
            WIRE_KINDS[kind],
            include_geo=geo,
            include_series=series,
        )

    @app.get("/rankings/{measure}")
    def rankings(measure: str, offset: int = 0, limit: int = 50):
        try:
            m = Measure(measure)
        except ValueError:
            raise ApiError(
                400,
                "bad_measure",
                f"measure must be one of {[m.value for m in Measure]}",
            )
        ranking = state.cache.get(m)
        limit = max(0, min(limit, MAX_PAGE_LIMIT))
        page = paginate(ranking.entries, offset, limit)
        return {
            "measure": m.value,
            "total": len(ranking.entries),
            "offset": max(0, offset),
            "limit": limit,
            "entries": [
                {"id": sid, "name": state.graph.scholars[sid].name, "value": value}
                for sid, value in page
            ],
        }

    @app.post("/recommend/advisor")
    def recommend(req: RecommendRequest):
        form = PreferenceForm(
            field_tags=req.field_tags,
            min_advisees=req.min_advisees,
            min_citations=req.min_citations,
            institution=req.institution,
            weights=req.weights,
        )
        try:
            recs = recommend_advisors(form, state.graph, limit=req.limit)
        except FormError as exc:
            raise ApiError(400, "bad_form", str(exc))
        return {
            "status": "ok" if recs else "no_candidates",
            "recommendations": [
                {
                    "id": r.scholar_id,
                    "name": r.name,
                    "score": r.match_score,
                    "reasons": r.reasons,
                    "ego_preview": r.ego_preview,
                }
                for r in recs
            ],
        }

    @app.get("/export")
    def export(format: str = "nodelink"):
        if format != "nodelink":
            raise ApiError(400, "bad_format", "only format=nodelink is supported")
        return PlainTextResponse(to_nodelink(state.graph))

    @app.get("/schema/ego")
    def ego_schema():
        return EGO_NETWORK_SCHEMA

    if ui_dist is not None and ui_dist.is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dist), html=True), name="ui")

    return app


def default_ui_dist() -> Path | None:
    candidate = Path.cwd() / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def resolve_port(cli_port: int | None) -> int:
    if cli_port is not None:
        return cli_port
    env = os.environ.get(PORT_ENV_VAR)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{PORT_ENV_VAR} must be an integer, got {env!r}")
    return DEFAULT_PORT


def serve(snapshot_path, port: int | None = None, host: str = "127.0.0.1") -> None:
    """Load a snapshot and serve it until interrupted (uvicorn handles signals)."""
    import uvicorn

    graph = load_snapshot(snapshot_path)
    app = create_app(AppState(graph), ui_dist=default_ui_dist())
    uvicorn.run(app, host=host, port=resolve_port(port), log_level="info")
