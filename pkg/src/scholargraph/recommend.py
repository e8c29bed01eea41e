"""Advisor recommendation from student preference forms.

Scoring is deliberately transparent: each set criterion contributes its
weight when satisfied, the match score is the satisfied fraction, and
every returned recommendation carries one human-readable reason per
satisfied criterion.  Recomputing the score from the reasons reproduces it
exactly, which is what makes the reasons trustworthy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import EdgeKind, ScholarGraph
from .ranking import Measure, compute_measure


class FormError(ValueError):
    """The preference form is empty or malformed."""


@dataclass
class PreferenceForm:
    """Student preferences; zero/empty values mean the criterion is unset."""

    field_tags: list[str] = field(default_factory=list)
    min_advisees: int = 0
    min_citations: int = 0
    institution: str | None = None
    weights: dict[str, float] = field(default_factory=dict)

    CRITERIA = ("fields", "advisees", "citations", "institution")

    def active_criteria(self) -> list[str]:
        active = []
        if self.field_tags:
            active.append("fields")
        if self.min_advisees > 0:
            active.append("advisees")
        if self.min_citations > 0:
            active.append("citations")
        if self.institution:
            active.append("institution")
        return active

    def criterion_weight(self, name: str) -> float:
        return float(self.weights.get(name, 1.0))

    def validate(self) -> None:
        if self.min_advisees < 0 or self.min_citations < 0:
            raise FormError("minimum counts must be non-negative")
        active = self.active_criteria()
        if not active:
            raise FormError("empty form: set at least one criterion")
        ws = [self.criterion_weight(c) for c in active]
        if any(w < 0 for w in ws):
            raise FormError("criterion weights must be non-negative")
        if sum(ws) == 0:
            raise FormError("criterion weights must not all be zero")


@dataclass
class Recommendation:
    scholar_id: str
    name: str
    match_score: float
    reasons: list[str]
    ego_preview: dict


def scholar_fields(graph: ScholarGraph, scholar_id: str) -> set[str]:
    """Field tags a scholar has published under."""
    tags: set[str] = set()
    scholar = graph.scholars[scholar_id]
    for pid in scholar.pub_ids:
        pub = graph.publications.get(pid)
        if pub is not None:
            tags.update(pub.fields)
    return tags


def _ego_preview(graph: ScholarGraph, scholar_id: str, cap: int = 10) -> dict:
    advisees = graph.neighbors(scholar_id, EdgeKind.ADVISOR_OF, "out")
    coauthors = graph.neighbors(scholar_id, EdgeKind.COAUTHOR, "both")
    return {
        "advisees": [
            {"id": sid, "name": graph.scholars[sid].name} for sid, _ in advisees[:cap]
        ],
        "coauthors": [
            {"id": sid, "name": graph.scholars[sid].name, "weight": w}
            for sid, w in coauthors[:cap]
        ],
    }


def recommend_advisors(
    form: PreferenceForm, graph: ScholarGraph, limit: int = 10
) -> list[Recommendation]:
    """Rank candidate advisors against the form.

    Candidates are scholars with at least one advisee or positive advisor
    influence.  Results sort by score, then advisor influence, then id.
    """
    form.validate()
    advisees = compute_measure(Measure.ADVISEES, graph)
    citations = compute_measure(Measure.CITATIONS, graph)
    influence = compute_measure(Measure.ADVISOR_INFLUENCE, graph)

    active = form.active_criteria()
    total_weight = sum(form.criterion_weight(c) for c in active)

    recs: list[Recommendation] = []
    for sid in sorted(graph.scholars):
        if advisees.get(sid, 0) < 1 and influence.get(sid, 0) <= 0:
            continue
        satisfied_weight = 0.0
        reasons: list[str] = []
        for criterion in active:
            w = form.criterion_weight(criterion)
            if criterion == "fields":
                overlap = sorted(scholar_fields(graph, sid) & set(form.field_tags))
                if overlap:
                    satisfied_weight += w
                    reasons.append("publishes in requested field(s): " + ", ".join(overlap))
            elif criterion == "advisees":
                n = int(advisees[sid])
                if n >= form.min_advisees:
                    satisfied_weight += w
                    reasons.append(f"has {n} advisee(s) ≥ {form.min_advisees}")
            elif criterion == "citations":
                n = int(citations[sid])
                if n >= form.min_citations:
                    satisfied_weight += w
                    reasons.append(f"has {n} citation(s) ≥ {form.min_citations}")
            elif criterion == "institution":
                inst = graph.scholars[sid].institution
                if inst == form.institution:
                    satisfied_weight += w
                    reasons.append(f"at requested institution: {inst}")
        if not reasons:
            continue
        recs.append(
            Recommendation(
                scholar_id=sid,
                name=graph.scholars[sid].name,
                match_score=satisfied_weight / total_weight,
                reasons=reasons,
                ego_preview=_ego_preview(graph, sid),
            )
        )
    recs.sort(key=lambda r: (-r.match_score, -influence.get(r.scholar_id, 0), r.scholar_id))
    return recs[: max(0, limit)]
