"""Relationship miners: every scholar-level edge type derived from metadata.

All miners are pure functions of the ingested records.  The advisor miner
scores each (candidate advisor, advisee) coauthor pair with four bounded,
unit-free features:

    f1  academic-age gap, clamp(first_year(s) - first_year(a), 0, 30)/30
    f2  share of s's early-career publications (first 5 career years)
        co-authored with a
    f3  joint-activity span in calendar years, clamp(span, 0, 10)/10
    f4  1 if a published before the first joint year, else 0

and passes the weighted sum through a logistic.  Per advisee, only the
single best-scoring candidate at or above the threshold becomes an edge,
so advisor in-degree is at most one.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field

from .classifier import LogisticModel
from .graph import EdgeKind, RelEdge
from .records import PublicationRecord, Scholar

logger = logging.getLogger(__name__)

DEFAULT_ADVISOR_WEIGHTS = (2.0, 3.0, 1.0, 1.0)
DEFAULT_ADVISOR_BIAS = -2.5
DEFAULT_ADVISOR_THRESHOLD = 0.5
DEFAULT_TEAM_THRESHOLD = 3
DEFAULT_YEAR_RANGE = (1980, 2017)
EARLY_CAREER_YEARS = 5
AGE_GAP_CLAMP = 30
JOINT_SPAN_CLAMP = 10


def logistic(x: float) -> float:
    return 1.0 / (1.0 + math.exp(-x))


@dataclass
class CandidatePair:
    """Audit record for one evaluated (advisor, advisee) hypothesis."""

    advisor: str
    advisee: str
    first_joint_year: int
    last_joint_year: int
    features: tuple[float, float, float, float]
    score: float


@dataclass
class CollabProfile:
    scholar_id: str
    weights: dict[str, float]
    geo_points: list[tuple[str, float, float]]
    yearly_counts: dict[int, int]
    missing_geo: int = 0


def _clamp(x: float, lo: float, hi: float) -> float:
    return max(lo, min(hi, x))


def _joint_pubs(records: list[PublicationRecord]) -> dict[tuple[str, str], list[PublicationRecord]]:
    """Unordered pair -> publications listing both scholars as authors."""
    joint: dict[tuple[str, str], list[PublicationRecord]] = defaultdict(list)
    for rec in records:
        ids = sorted(set(rec.author_ids()))
        for i, u in enumerate(ids):
            for v in ids[i + 1 :]:
                joint[(u, v)].append(rec)
    return joint


def mine_coauthors(records: list[PublicationRecord]) -> list[RelEdge]:
    """COAUTHOR(u, v) weighted by the number of joint publications."""
    edges = []
    for (u, v), pubs in sorted(_joint_pubs(records).items()):
        years = [p.year for p in pubs]
        edges.append(
            RelEdge(u, v, EdgeKind.COAUTHOR, weight=len(pubs), years=(min(years), max(years)))
        )
    return edges


def collab_profile(
    records: list[PublicationRecord],
    scholar_id: str,
    geo_table: dict[str, tuple[float, float]],
    year_range: tuple[int, int] = DEFAULT_YEAR_RANGE,
) -> CollabProfile:
    """Collaboration view of one scholar: weights, geo points, yearly counts.

    ``yearly_counts[y]`` is the number of distinct collaborators sharing at
    least one publication with the scholar in year ``y``; only years inside
    ``year_range`` appear.  Collaborators whose institution has no entry in
    the geo table produce no point and are tallied in ``missing_geo``.
    """
    weights: dict[str, float] = defaultdict(float)
    by_year: dict[int, set[str]] = defaultdict(set)
    inst_of: dict[str, str] = {}
    seen_any = False
    for rec in records:
        ids = set(rec.author_ids())
        for a in rec.authors:
            inst_of.setdefault(a.scholar_id, a.institution)
        if scholar_id in ids:
            seen_any = True
            for other in ids - {scholar_id}:
                weights[other] += 1
                if year_range[0] <= rec.year <= year_range[1]:
                    by_year[rec.year].add(other)
    if not seen_any:
        raise KeyError(f"unknown scholar: {scholar_id}")

    geo_points: list[tuple[str, float, float]] = []
    missing = 0
    for other in sorted(weights):
        inst = inst_of.get(other, "")
        if inst in geo_table:
            lat, lng = geo_table[inst]
            geo_points.append((other, lat, lng))
        else:
            missing += 1
    return CollabProfile(
        scholar_id=scholar_id,
        weights=dict(sorted(weights.items())),
        geo_points=geo_points,
        yearly_counts={y: len(s) for y, s in sorted(by_year.items())},
        missing_geo=missing,
    )


def advisor_features(
    advisee: Scholar,
    advisor: Scholar,
    advisee_pubs: list[PublicationRecord],
    joint: list[PublicationRecord],
) -> tuple[tuple[float, float, float, float], int, int]:
    """Feature vector for "is `advisor` the advisor of `advisee`?".

    Returns (features, first_joint_year, last_joint_year).  ``joint`` must
    be non-empty: candidates are coauthors by construction.
    """
    joint_years = sorted({p.year for p in joint})
    first_joint, last_joint = joint_years[0], joint_years[-1]

    f1 = _clamp(advisee.first_pub_year - advisor.first_pub_year, 0, AGE_GAP_CLAMP) / AGE_GAP_CLAMP

    window_end = advisee.first_pub_year + EARLY_CAREER_YEARS - 1
    early = [p for p in advisee_pubs if p.year <= window_end]
    early_joint = [p for p in early if advisor.scholar_id in p.author_ids()]
    f2 = len(early_joint) / len(early) if early else 0.0

    span = last_joint - first_joint + 1
    f3 = _clamp(span, 0, JOINT_SPAN_CLAMP) / JOINT_SPAN_CLAMP

    f4 = 1.0 if advisor.first_pub_year < first_joint else 0.0
    return (f1, f2, f3, f4), first_joint, last_joint


def score_pair(
    features: tuple[float, float, float, float],
    weights: tuple[float, float, float, float],
    bias: float,
) -> float:
    return logistic(sum(w * f for w, f in zip(weights, features)) + bias)


def mine_advisors(
    records: list[PublicationRecord],
    scholars: dict[str, Scholar],
    weights: tuple[float, float, float, float] = DEFAULT_ADVISOR_WEIGHTS,
    bias: float = DEFAULT_ADVISOR_BIAS,
    threshold: float = DEFAULT_ADVISOR_THRESHOLD,
) -> tuple[list[RelEdge], list[CandidatePair]]:
    """Infer ADVISOR_OF edges plus the full candidate audit list.

    Every coauthor of a scholar is evaluated as a candidate advisor.  The
    single highest-scoring candidate at or above ``threshold`` wins (ties
    broken by smaller candidate id); edge weight is the score and the edge
    years span the joint publications.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must be in (0, 1)")
    for w in (*weights, bias):
        if not math.isfinite(w):
            raise ValueError("advisor weights and bias must be finite")

    joint = _joint_pubs(records)
    pubs_of: dict[str, list[PublicationRecord]] = defaultdict(list)
    for rec in records:
        for sid in set(rec.author_ids()):
            pubs_of[sid].append(rec)

    coauthors_of: dict[str, set[str]] = defaultdict(set)
    for u, v in joint:
        coauthors_of[u].add(v)
        coauthors_of[v].add(u)

    edges: list[RelEdge] = []
    audit: list[CandidatePair] = []
    for sid in sorted(scholars):
        advisee = scholars[sid]
        best: CandidatePair | None = None
        for cand_id in sorted(coauthors_of.get(sid, ())):
            advisor = scholars[cand_id]
            pair_key = (min(sid, cand_id), max(sid, cand_id))
            feats, first_joint, last_joint = advisor_features(
                advisee, advisor, pubs_of[sid], joint[pair_key]
            )
            pair = CandidatePair(
                advisor=cand_id,
                advisee=sid,
                first_joint_year=first_joint,
                last_joint_year=last_joint,
                features=feats,
                score=score_pair(feats, weights, bias),
            )
            audit.append(pair)
            if pair.score >= threshold:
                if best is None or pair.score > best.score:
                    best = pair
                # equal scores: sorted candidate order already prefers the
                # smaller scholar_id
        if best is not None:
            edges.append(
                RelEdge(
                    best.advisor,
                    best.advisee,
                    EdgeKind.ADVISOR_OF,
                    weight=best.score,
                    years=(best.first_joint_year, best.last_joint_year),
                )
            )
    return edges, audit


def find_advisor_cycles(edges: list[RelEdge]) -> list[list[str]]:
    """Cycles in the ADVISOR_OF digraph; forward-time corpora yield none."""
    succ: dict[str, list[str]] = defaultdict(list)
    for e in edges:
        if e.kind == EdgeKind.ADVISOR_OF:
            succ[e.src].append(e.dst)
    cycles: list[list[str]] = []
    state: dict[str, int] = {}  # 0 unseen / 1 on stack / 2 done
    stack: list[str] = []

    def visit(node: str) -> None:
        state[node] = 1
        stack.append(node)
        for nxt in succ.get(node, ()):
            mark = state.get(nxt, 0)
            if mark == 0:
                visit(nxt)
            elif mark == 1:
                cycles.append(stack[stack.index(nxt) :] + [nxt])
        stack.pop()
        state[node] = 2

    for node in sorted(succ):
        if state.get(node, 0) == 0:
            visit(node)
    if cycles:
        logger.warning("advisor graph contains %d cycle(s): %s", len(cycles), cycles)
    return cycles


def fit_advisor_weights(
    labeled_pairs: list[tuple[tuple[float, float, float, float], int]],
    learning_rate: float = 0.1,
    iterations: int = 500,
    seed: int = 42,
) -> tuple[tuple[float, float, float, float], float]:
    """Fit the advisor classifier on labeled feature vectors.

    Raises ValueError when the labels are all one class.
    """
    X = [list(f) for f, _ in labeled_pairs]
    y = [label for _, label in labeled_pairs]
    model = LogisticModel(learning_rate=learning_rate, iterations=iterations, seed=seed)
    model.fit(X, y)
    w = tuple(float(v) for v in model.weights)
    return w, float(model.bias)


def mine_citations(
    records: list[PublicationRecord],
    advisor_edges: list[RelEdge] | None = None,
    coauthor_edges: list[RelEdge] | None = None,
) -> tuple[list[RelEdge], dict[tuple[str, str], str]]:
    """Scholar-level CITES edges plus identity tags for in-neighbors.

    CITES(u -> v) counts distinct publications authored by u that reference
    at least one publication authored by v.  A citing publication that v
    co-authored never contributes (no self-citation), and u = v is skipped.

    The returned tag map classifies each citing scholar u relative to the
    cited scholar v: advisor > advisee > coauthor > other.
    """
    by_id = {r.pub_id: r for r in records}
    citing: dict[tuple[str, str], set[str]] = defaultdict(set)
    for rec in records:
        citing_authors = set(rec.author_ids())
        cited_scholars: set[str] = set()
        for ref in rec.refs:
            target = by_id.get(ref)
            if target is None:
                continue  # dangling reference: diagnostics only, no edge
            cited_scholars.update(target.author_ids())
        for v in cited_scholars:
            if v in citing_authors:
                continue
            for u in citing_authors:
                citing[(u, v)].add(rec.pub_id)

    advisor_of = {(e.src, e.dst) for e in (advisor_edges or []) if e.kind == EdgeKind.ADVISOR_OF}
    coauthor_pairs = set()
    for e in coauthor_edges or []:
        if e.kind == EdgeKind.COAUTHOR:
            coauthor_pairs.add((e.src, e.dst))
            coauthor_pairs.add((e.dst, e.src))

    edges: list[RelEdge] = []
    tags: dict[tuple[str, str], str] = {}
    for (u, v), pubs in sorted(citing.items()):
        edges.append(RelEdge(u, v, EdgeKind.CITES, weight=len(pubs)))
        if (u, v) in advisor_of:
            tag = "advisor"
        elif (v, u) in advisor_of:
            tag = "advisee"
        elif (u, v) in coauthor_pairs:
            tag = "coauthor"
        else:
            tag = "other"
        tags[(v, u)] = tag  # keyed (cited scholar, citing in-neighbor)
    return edges, tags


def mine_cocitations(records: list[PublicationRecord]) -> list[RelEdge]:
    """COCITED(u, v): distinct citing publications referencing work by both.

    Classical co-citation: no authorship exclusion, a single referenced
    publication may supply both scholars.
    """
    by_id = {r.pub_id: r for r in records}
    counts: dict[tuple[str, str], set[str]] = defaultdict(set)
    for rec in records:
        referenced: set[str] = set()
        for ref in rec.refs:
            target = by_id.get(ref)
            if target is not None:
                referenced.update(target.author_ids())
        ordered = sorted(referenced)
        for i, u in enumerate(ordered):
            for v in ordered[i + 1 :]:
                counts[(u, v)].add(rec.pub_id)
    return [
        RelEdge(u, v, EdgeKind.COCITED, weight=len(pubs))
        for (u, v), pubs in sorted(counts.items())
    ]


def mine_teams(
    advisor_edges: list[RelEdge],
    coauthor_edges: list[RelEdge],
    team_threshold: float = DEFAULT_TEAM_THRESHOLD,
) -> list[RelEdge]:
    """TEAM(x -> member): x's advisees plus coauthors at or above threshold."""
    members: dict[str, set[str]] = defaultdict(set)
    for e in advisor_edges:
        if e.kind == EdgeKind.ADVISOR_OF:
            members[e.src].add(e.dst)
    for e in coauthor_edges:
        if e.kind == EdgeKind.COAUTHOR and e.weight >= team_threshold:
            members[e.src].add(e.dst)
            members[e.dst].add(e.src)
    edges = []
    for owner in sorted(members):
        for member in sorted(members[owner]):
            edges.append(RelEdge(owner, member, EdgeKind.TEAM, weight=1))
    return edges


@dataclass
class MineOptions:
    kinds: tuple[str, ...] = ("coauthor", "advisor", "cites", "cocited", "team")
    advisor_weights: tuple[float, float, float, float] = DEFAULT_ADVISOR_WEIGHTS
    advisor_bias: float = DEFAULT_ADVISOR_BIAS
    tau: float = DEFAULT_ADVISOR_THRESHOLD
    team_threshold: float = DEFAULT_TEAM_THRESHOLD


@dataclass
class MineReport:
    edge_counts: dict[str, int] = field(default_factory=dict)
    candidate_pairs: list[CandidatePair] = field(default_factory=list)
    citation_tags: dict[tuple[str, str], str] = field(default_factory=dict)
    advisor_cycles: list[list[str]] = field(default_factory=list)


def mine_all(graph, options: MineOptions | None = None) -> MineReport:
    """Run the requested miners against a graph in dependency order."""
    opts = options or MineOptions()
    records = list(graph.publications.values())
    report = MineReport()

    wants = set(opts.kinds)
    unknown = wants - set(("coauthor", "advisor", "cites", "cocited", "team"))
    if unknown:
        raise ValueError(f"unknown mine kinds: {sorted(unknown)}")
    # cites needs advisor+coauthor for tags; team needs both lists
    need_coauthor = wants & {"coauthor", "advisor", "cites", "team"}
    need_advisor = wants & {"advisor", "cites", "team"}

    coauthor_edges = mine_coauthors(records) if need_coauthor else []
    if "coauthor" in wants:
        graph.drop_edges(EdgeKind.COAUTHOR)
        graph.upsert_edges(coauthor_edges)
        report.edge_counts["coauthor"] = len(coauthor_edges)

    advisor_edges: list[RelEdge] = []
    if need_advisor:
        advisor_edges, audit = mine_advisors(
            records, graph.scholars, opts.advisor_weights, opts.advisor_bias, opts.tau
        )
        report.candidate_pairs = audit
        report.advisor_cycles = find_advisor_cycles(advisor_edges)
    if "advisor" in wants:
        graph.drop_edges(EdgeKind.ADVISOR_OF)
        graph.upsert_edges(advisor_edges)
        report.edge_counts["advisor"] = len(advisor_edges)

    if "cites" in wants:
        cites_edges, tags = mine_citations(records, advisor_edges, coauthor_edges)
        graph.drop_edges(EdgeKind.CITES)
        graph.upsert_edges(cites_edges)
        report.edge_counts["cites"] = len(cites_edges)
        report.citation_tags = tags

    if "cocited" in wants:
        cocited_edges = mine_cocitations(records)
        graph.drop_edges(EdgeKind.COCITED)
        graph.upsert_edges(cocited_edges)
        report.edge_counts["cocited"] = len(cocited_edges)

    if "team" in wants:
        team_edges = mine_teams(advisor_edges, coauthor_edges, opts.team_threshold)
        graph.drop_edges(EdgeKind.TEAM)
        graph.upsert_edges(team_edges)
        report.edge_counts["team"] = len(team_edges)

    return report
