"""Fuzzy name search and the intelligent-query mini-language.

Grammar (documented in docs/query-grammar.md):

    query    := possessive | of-form | name
    possessive := name "'s" relation        e.g.  Bob's advisor
    of-form  := relation "of" name          e.g.  advisees of Alice
    relation := advisor | advisee[s] | collaborator[s] | citer[s] | team

Parsing is total: anything that matches neither relation production is a
plain name search.  The possessive split is the rightmost "'s" whose tail
is exactly a relation keyword, so names containing apostrophes survive a
print/parse round trip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .graph import EdgeKind, ScholarGraph


class Relation(str, Enum):
    ADVISOR = "advisor"
    ADVISEES = "advisees"
    COLLABORATORS = "collaborators"
    CITERS = "citers"
    TEAM = "team"


RELATION_KEYWORDS = {
    "advisor": Relation.ADVISOR,
    "advisee": Relation.ADVISEES,
    "advisees": Relation.ADVISEES,
    "collaborator": Relation.COLLABORATORS,
    "collaborators": Relation.COLLABORATORS,
    "citer": Relation.CITERS,
    "citers": Relation.CITERS,
    "team": Relation.TEAM,
}

_POSSESSIVE = re.compile(r"'s(?![\w])", re.IGNORECASE)
_OF_FORM = re.compile(
    r"^\s*(advisor|advisees?|collaborators?|citers?|team)\s+of\s+(\S.*)$",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class QueryAst:
    kind: str  # "name_search" | "relation_query"
    name: str
    relation: Relation | None = None

    def pretty(self) -> str:
        if self.kind == "relation_query":
            return f"{self.name}'s {self.relation.value}"
        return self.name


def parse_query(text: str) -> QueryAst:
    """Parse a query string; total over all inputs, never raises."""
    raw = text if isinstance(text, str) else str(text)

    # possessive form: rightmost 's whose tail is a relation keyword
    best = None
    for m in _POSSESSIVE.finditer(raw):
        tail = raw[m.end():].strip().lower()
        head = raw[: m.start()].strip()
        if head and tail in RELATION_KEYWORDS:
            best = (head, RELATION_KEYWORDS[tail])
    if best is not None:
        return QueryAst(kind="relation_query", name=best[0], relation=best[1])

    m = _OF_FORM.match(raw)
    if m is not None:
        return QueryAst(
            kind="relation_query",
            name=m.group(2).strip(),
            relation=RELATION_KEYWORDS[m.group(1).lower()],
        )

    return QueryAst(kind="name_search", name=raw.strip())


# -- edit distance -----------------------------------------------------------


def within_edit_distance_one(a: str, b: str) -> bool:
    """True when Levenshtein(a, b) <= 1 (substitutions, not transpositions)."""
    la, lb = len(a), len(b)
    if abs(la - lb) > 1:
        return False
    if la > lb:
        a, b, la, lb = b, a, lb, la
    i = j = 0
    edited = False
    while i < la and j < lb:
        if a[i] == b[j]:
            i += 1
            j += 1
            continue
        if edited:
            return False
        edited = True
        if la == lb:
            i += 1
        j += 1
    return True  # any leftover tail is at most one char


# -- name index --------------------------------------------------------------

_TOKEN = re.compile(r"\w+")
EDIT_DISTANCE_MIN_LEN = 4

_QUALITY_EXACT = 0
_QUALITY_PREFIX = 1
_QUALITY_EDIT1 = 2


@dataclass
class Hit:
    scholar_id: str
    name: str
    quality: int


class NameIndex:
    """Lowercased token/prefix index over scholar display names.

    Every scholar is reachable through every token of their name.  Lookup
    quality tiers: exact token, token prefix, then edit-distance-1 for
    fragments of at least four characters.  Ties rank by collaborator
    count descending, then id.
    """

    def __init__(
        self,
        scholars: dict[str, str],
        rank_values: dict[str, float] | None = None,
    ):
        self.display = dict(scholars)
        self.rank_values = rank_values or {}
        self._token_ids: dict[str, set[str]] = {}
        self._prefix_ids: dict[str, set[str]] = {}
        for sid, name in scholars.items():
            for token in _TOKEN.findall(name.lower()):
                self._token_ids.setdefault(token, set()).add(sid)
                for end in range(1, len(token) + 1):
                    self._prefix_ids.setdefault(token[:end], set()).add(sid)

    @classmethod
    def from_graph(cls, graph: ScholarGraph) -> "NameIndex":
        from .ranking import Measure, compute_measure

        names = {sid: s.name for sid, s in graph.scholars.items()}
        return cls(names, compute_measure(Measure.COLLABORATORS, graph))

    def lookup_detailed(self, fragment: str, limit: int | None = None) -> list[Hit]:
        frag = fragment.strip().lower()
        if not frag:
            return []
        quality: dict[str, int] = {}

        def offer(sid: str, q: int) -> None:
            if q < quality.get(sid, 99):
                quality[sid] = q

        for sid in self._token_ids.get(frag, ()):
            offer(sid, _QUALITY_EXACT)
        for sid in self._prefix_ids.get(frag, ()):
            offer(sid, _QUALITY_PREFIX)
        if len(frag) >= EDIT_DISTANCE_MIN_LEN:
            for token, ids in self._token_ids.items():
                if abs(len(token) - len(frag)) <= 1 and within_edit_distance_one(frag, token):
                    for sid in ids:
                        offer(sid, _QUALITY_EDIT1)

        hits = [Hit(sid, self.display[sid], q) for sid, q in quality.items()]
        hits.sort(
            key=lambda h: (h.quality, -self.rank_values.get(h.scholar_id, 0.0), h.scholar_id)
        )
        if limit is not None:
            hits = hits[: max(0, limit)]
        return hits

    def lookup(self, fragment: str, limit: int | None = None) -> list[tuple[str, str]]:
        return [(h.scholar_id, h.name) for h in self.lookup_detailed(fragment, limit)]


# -- query answering ---------------------------------------------------------

_RELATION_EDGES = {
    Relation.ADVISOR: (EdgeKind.ADVISOR_OF, "in"),
    Relation.ADVISEES: (EdgeKind.ADVISOR_OF, "out"),
    Relation.COLLABORATORS: (EdgeKind.COAUTHOR, "both"),
    Relation.CITERS: (EdgeKind.CITES, "in"),
    Relation.TEAM: (EdgeKind.TEAM, "out"),
}


@dataclass
class Answer:
    status: str  # ok | ambiguous | no_match | no_relation
    query: QueryAst
    results: list[tuple[str, str]] = field(default_factory=list)
    resolved: tuple[str, str] | None = None


def answer(ast: QueryAst, graph: ScholarGraph, index: NameIndex, limit: int = 20) -> Answer:
    """Resolve a parsed query against the graph.

    Name searches return fuzzy hits.  Relation queries resolve the subject
    first; several candidates of equal match quality come back flagged
    ambiguous instead of guessing.
    """
    if ast.kind == "name_search":
        hits = index.lookup(ast.name, limit)
        return Answer(status="ok" if hits else "no_match", query=ast, results=hits)

    detailed = index.lookup_detailed(ast.name)
    if not detailed:
        return Answer(status="no_match", query=ast)
    top = [h for h in detailed if h.quality == detailed[0].quality]
    if len(top) > 1:
        return Answer(
            status="ambiguous",
            query=ast,
            results=[(h.scholar_id, h.name) for h in top[:limit]],
        )
    center = top[0]
    kind, direction = _RELATION_EDGES[ast.relation]
    related = graph.neighbors(center.scholar_id, kind, direction)[:limit]
    results = [(sid, graph.scholars[sid].name) for sid, _ in related]
    return Answer(
        status="ok" if results else "no_relation",
        query=ast,
        results=results,
        resolved=(center.scholar_id, center.name),
    )
