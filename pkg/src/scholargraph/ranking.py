"""Academic ranking measures, descending ranked lists, and the cache.

Six measures are served.  Collaborator, advisee, and team counts are plain
degrees; citation counts scan citing publications.  ADVISOR_INFLUENCE and
POTENTIAL_INDEX have no canonical formula, so this module uses documented
interpretations (see README): influence is advisee count plus the
advisees' citation counts, and the potential index divides citations
received in the five most recent corpus years by academic age.

The cache replaces an external ranking store with the same contract: a
cached list is served only while its fingerprint matches the live graph,
so a cached read can never disagree with recomputation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum

from .graph import EdgeKind, ScholarGraph

RECENT_WINDOW_YEARS = 5


class Measure(str, Enum):
    COLLABORATORS = "collaborators"
    ADVISEES = "advisees"
    TEAM_MEMBERS = "team_members"
    ADVISOR_INFLUENCE = "advisor_influence"
    CITATIONS = "citations"
    POTENTIAL_INDEX = "potential_index"


@dataclass
class RankingList:
    measure: Measure
    entries: list[tuple[str, float]]
    computed_at: str  # graph fingerprint the list was computed from


def _degree_counts(graph: ScholarGraph, kind: EdgeKind, direction: str) -> dict[str, int]:
    counts = {sid: 0 for sid in graph.scholars}
    for (src, dst, k) in graph.edges:
        if k != kind:
            continue
        if not kind.directed:
            counts[src] += 1
            counts[dst] += 1
        elif direction == "out":
            counts[src] += 1
        else:
            counts[dst] += 1
    return counts


def _citing_publications(graph: ScholarGraph) -> dict[str, set[str]]:
    """scholar -> citing pub_ids referencing their work, self-authored excluded."""
    received: dict[str, set[str]] = {sid: set() for sid in graph.scholars}
    for rec in graph.publications.values():
        authors = set(rec.author_ids())
        cited: set[str] = set()
        for ref in rec.refs:
            target = graph.publications.get(ref)
            if target is not None:
                cited.update(target.author_ids())
        for v in cited - authors:
            received[v].add(rec.pub_id)
    return received


def _citations(graph: ScholarGraph) -> dict[str, float]:
    return {sid: len(pubs) for sid, pubs in _citing_publications(graph).items()}


def _advisor_influence(graph: ScholarGraph) -> dict[str, float]:
    citations = _citations(graph)
    advisees: dict[str, list[str]] = {sid: [] for sid in graph.scholars}
    for (src, dst, k) in graph.edges:
        if k == EdgeKind.ADVISOR_OF:
            advisees[src].append(dst)
    return {
        sid: len(kids) + sum(citations[k] for k in kids)
        for sid, kids in advisees.items()
    }


def _potential_index(graph: ScholarGraph) -> dict[str, float]:
    if not graph.publications:
        return {}
    max_year = max(p.year for p in graph.publications.values())
    window_start = max_year - (RECENT_WINDOW_YEARS - 1)
    received = _citing_publications(graph)
    out: dict[str, float] = {}
    for sid, scholar in graph.scholars.items():
        recent = sum(
            1
            for pid in received[sid]
            if graph.publications[pid].year >= window_start
        )
        age = max(1, max_year - scholar.first_pub_year)
        out[sid] = recent / age
    return out


def compute_measure(measure: Measure, graph: ScholarGraph) -> dict[str, float]:
    """Value of one measure for every scholar in the graph (zeros included)."""
    if measure == Measure.COLLABORATORS:
        return {k: float(v) for k, v in _degree_counts(graph, EdgeKind.COAUTHOR, "both").items()}
    if measure == Measure.ADVISEES:
        return {k: float(v) for k, v in _degree_counts(graph, EdgeKind.ADVISOR_OF, "out").items()}
    if measure == Measure.TEAM_MEMBERS:
        return {k: float(v) for k, v in _degree_counts(graph, EdgeKind.TEAM, "out").items()}
    if measure == Measure.CITATIONS:
        return _citations(graph)
    if measure == Measure.ADVISOR_INFLUENCE:
        return _advisor_influence(graph)
    if measure == Measure.POTENTIAL_INDEX:
        return _potential_index(graph)
    raise ValueError(f"unknown measure: {measure}")


def ranked_list(measure: Measure, graph: ScholarGraph) -> RankingList:
    """Descending list over scholars with positive values; stable tie-break."""
    values = compute_measure(measure, graph)
    entries = sorted(
        ((sid, v) for sid, v in values.items() if v > 0),
        key=lambda item: (-item[1], item[0]),
    )
    return RankingList(measure=measure, entries=entries, computed_at=graph.fingerprint)


def paginate(entries: list, offset: int, limit: int | None) -> list:
    if offset < 0:
        offset = 0
    page = entries[offset:]
    if limit is not None:
        page = page[: max(0, limit)]
    return page


class RankingCache:
    """Per-measure cache keyed by the graph content fingerprint.

    ``get`` serves the stored list while its ``computed_at`` matches the
    current graph; otherwise it recomputes under a per-measure lock, so at
    most one computation runs per (measure, fingerprint).
    """

    def __init__(self, graph_provider):
        # graph_provider: zero-arg callable returning the current graph,
        # so a snapshot hot-swap is picked up on the next get
        self._graph_provider = graph_provider
        self._lists: dict[Measure, RankingList] = {}
        self._locks = {m: threading.Lock() for m in Measure}

    def get(self, measure: Measure) -> RankingList:
        graph = self._graph_provider()
        cached = self._lists.get(measure)
        if cached is not None and cached.computed_at == graph.fingerprint:
            return cached
        with self._locks[measure]:
            cached = self._lists.get(measure)
            if cached is not None and cached.computed_at == graph.fingerprint:
                return cached
            fresh = ranked_list(measure, graph)
            self._lists[measure] = fresh
            return fresh

    def invalidate(self, measure: Measure | None = None) -> None:
        if measure is None:
            self._lists.clear()
        else:
            self._lists.pop(measure, None)
