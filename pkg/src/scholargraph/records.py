"""Publication-record parsing and scholar table construction.

The corpus arrives as line-delimited JSON, one publication per line:

    {"id": "p1", "title": "...", "year": 1998, "venue": "...",
     "authors": [{"id": "s2", "name": "Bob", "inst": "I2"}],
     "refs": [], "fields": ["CS"]}

``venue`` may be omitted or null; ``refs`` and ``fields`` default to empty
lists.  Malformed lines never abort the ingest: each one is reported with
its line number so desk-scale corpora stay auditable.
"""

from __future__ import annotations

import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

YEAR_MIN = 1900
YEAR_MAX = 2100


@dataclass(frozen=True)
class AuthorRef:
    """One author slot on a publication (stable pre-assigned scholar id)."""

    scholar_id: str
    name: str
    institution: str = ""


@dataclass
class PublicationRecord:
    pub_id: str
    title: str
    year: int
    authors: list[AuthorRef]
    venue: str | None = None
    refs: list[str] = field(default_factory=list)
    fields: list[str] = field(default_factory=list)

    def author_ids(self) -> list[str]:
        return [a.scholar_id for a in self.authors]


@dataclass
class Scholar:
    scholar_id: str
    name: str
    institution: str
    first_pub_year: int
    pub_ids: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class LineDiagnostic:
    line_no: int
    message: str

    def __str__(self) -> str:  # pragma: no cover - display helper
        return f"line {self.line_no}: {self.message}"


@dataclass
class ParseResult:
    """Well-formed records plus per-line diagnostics for everything else."""

    records: list[PublicationRecord] = field(default_factory=list)
    diagnostics: list[LineDiagnostic] = field(default_factory=list)


def _validate_record(obj: dict, seen: set[str]) -> PublicationRecord:
    if not isinstance(obj, dict):
        raise ValueError("record is not an object")
    for key in ("id", "title", "year", "authors"):
        if key not in obj:
            raise ValueError(f"missing required key {key!r}")
    pub_id = obj["id"]
    if not isinstance(pub_id, str) or not pub_id:
        raise ValueError("id must be a non-empty string")
    if pub_id in seen:
        raise ValueError(f"duplicate pub_id {pub_id!r}")
    year = obj["year"]
    if not isinstance(year, int) or isinstance(year, bool):
        raise ValueError("year must be an integer")
    if not YEAR_MIN <= year <= YEAR_MAX:
        raise ValueError(f"year {year} outside [{YEAR_MIN}, {YEAR_MAX}]")
    title = obj["title"]
    if not isinstance(title, str):
        raise ValueError("title must be a string")

    raw_authors = obj["authors"]
    if not isinstance(raw_authors, list) or not raw_authors:
        raise ValueError("authors must be a non-empty array")
    authors: list[AuthorRef] = []
    ids_in_record: set[str] = set()
    for pos, raw in enumerate(raw_authors):
        if not isinstance(raw, dict) or "id" not in raw or "name" not in raw:
            raise ValueError(f"author #{pos} needs id and name")
        sid = raw["id"]
        if not isinstance(sid, str) or not sid:
            raise ValueError(f"author #{pos} id must be a non-empty string")
        if sid in ids_in_record:
            # keeping one slot per scholar preserves author-slot conservation
            raise ValueError(f"author {sid!r} listed twice")
        ids_in_record.add(sid)
        authors.append(
            AuthorRef(
                scholar_id=sid,
                name=str(raw["name"]),
                institution=str(raw.get("inst", "") or ""),
            )
        )

    refs = obj.get("refs", []) or []
    if not isinstance(refs, list) or not all(isinstance(r, str) for r in refs):
        raise ValueError("refs must be an array of ids")
    if pub_id in refs:
        raise ValueError("refs contains a self-reference")

    fields_ = obj.get("fields", []) or []
    if not isinstance(fields_, list) or not all(isinstance(f, str) for f in fields_):
        raise ValueError("fields must be an array of strings")

    venue = obj.get("venue")
    if venue is not None and not isinstance(venue, str):
        raise ValueError("venue must be a string or null")

    return PublicationRecord(
        pub_id=pub_id,
        title=title,
        year=year,
        authors=authors,
        venue=venue,
        refs=list(dict.fromkeys(refs)),
        fields=list(fields_),
    )


def parse_corpus(stream) -> ParseResult:
    """Parse line-delimited publication records from ``stream``.

    ``stream`` is any iterable of lines (an open file, a list of strings).
    Blank lines are skipped.  Malformed lines are collected as diagnostics
    with their 1-based line number; parsing continues.  I/O errors from the
    stream itself propagate to the caller.
    """
    result = ParseResult()
    seen: set[str] = set()
    for line_no, line in enumerate(stream, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            obj = json.loads(text)
            record = _validate_record(obj, seen)
        except (ValueError, TypeError) as exc:
            msg = str(exc) or exc.__class__.__name__
            result.diagnostics.append(LineDiagnostic(line_no, msg))
            continue
        seen.add(record.pub_id)
        result.records.append(record)
    return result


def parse_corpus_file(path) -> ParseResult:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_corpus(fh)


def filter_by_field(
    records: list[PublicationRecord], field_tag: str
) -> list[PublicationRecord]:
    """Exact-tag filter: keep records whose ``fields`` list contains the tag."""
    return [r for r in records if field_tag in r.fields]


def _most_frequent(values: list[str]) -> str:
    # ties broken by first occurrence
    counts = Counter(values)
    best = max(counts.values())
    for v in values:
        if counts[v] == best:
            return v
    return values[0]


def build_scholars(records: list[PublicationRecord]) -> list[Scholar]:
    """Derive one Scholar per distinct author id seen in ``records``.

    ``first_pub_year`` anchors academic age: the minimum year over the
    scholar's publications.  ``pub_ids`` are sorted by (year, pub_id).
    Conflicting names for one id keep the most frequent spelling and log a
    warning; institutions follow the same rule.
    """
    names: dict[str, list[str]] = defaultdict(list)
    insts: dict[str, list[str]] = defaultdict(list)
    pubs: dict[str, list[PublicationRecord]] = defaultdict(list)
    for rec in records:
        for author in rec.authors:
            names[author.scholar_id].append(author.name)
            insts[author.scholar_id].append(author.institution)
            pubs[author.scholar_id].append(rec)

    scholars: list[Scholar] = []
    for sid in sorted(pubs):
        seen_names = names[sid]
        name = _most_frequent(seen_names)
        if len(set(seen_names)) > 1:
            logger.warning(
                "scholar %s has %d name variants; keeping %r",
                sid,
                len(set(seen_names)),
                name,
            )
        ordered = sorted(pubs[sid], key=lambda r: (r.year, r.pub_id))
        scholars.append(
            Scholar(
                scholar_id=sid,
                name=name,
                institution=_most_frequent(insts[sid]),
                first_pub_year=min(r.year for r in ordered),
                pub_ids=[r.pub_id for r in ordered],
            )
        )
    return scholars


def dangling_refs(records: list[PublicationRecord]) -> list[tuple[str, str]]:
    """(citing pub_id, missing ref) pairs for refs that resolve to nothing.

    Dangling references are diagnostics only; no miner derives edges from
    them.
    """
    known = {r.pub_id for r in records}
    out: list[tuple[str, str]] = []
    for rec in records:
        for ref in rec.refs:
            if ref not in known:
                out.append((rec.pub_id, ref))
    return out
