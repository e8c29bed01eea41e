"""Embedded property graph over scholars, publications, and typed edges.

The store is a plain in-process structure: build-phase code mutates it,
the serve phase treats it as immutable.  Snapshots are a two-part text
container — a one-line JSON header ``{checksum, magic, version}`` followed
by a canonical-JSON body — so identical graphs always serialize to
identical bytes and corruption is detectable before any state is exposed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from enum import Enum

from .records import PublicationRecord, AuthorRef, Scholar, build_scholars, dangling_refs

SNAPSHOT_MAGIC = "scholargraph-snapshot"
SNAPSHOT_VERSION = 1
NODELINK_HEADER = "# scholargraph nodelink v1"


class GraphError(Exception):
    """Base class for graph-store failures."""


class UnknownScholarError(GraphError):
    def __init__(self, scholar_id: str):
        super().__init__(f"unknown scholar: {scholar_id}")
        self.scholar_id = scholar_id


class SnapshotError(GraphError):
    """Unreadable, corrupt, or future-versioned snapshot file."""


class EdgeKind(str, Enum):
    COAUTHOR = "COAUTHOR"
    ADVISOR_OF = "ADVISOR_OF"
    CITES = "CITES"
    COCITED = "COCITED"
    TEAM = "TEAM"

    @property
    def directed(self) -> bool:
        return self in (EdgeKind.ADVISOR_OF, EdgeKind.CITES, EdgeKind.TEAM)


# lowercase aliases used on the wire (CLI flags, ego endpoint)
WIRE_KINDS = {
    "coauthor": EdgeKind.COAUTHOR,
    "advisor": EdgeKind.ADVISOR_OF,
    "cites": EdgeKind.CITES,
    "cocited": EdgeKind.COCITED,
    "team": EdgeKind.TEAM,
}
KIND_WIRE_NAMES = {v: k for k, v in WIRE_KINDS.items()}


@dataclass(frozen=True)
class RelEdge:
    src: str
    dst: str
    kind: EdgeKind
    weight: float
    years: tuple[int, int] | None = None

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError(f"self-edge on {self.src} not allowed")
        if not self.weight > 0:
            raise ValueError("edge weight must be positive")

    def canonical(self) -> "RelEdge":
        """Undirected kinds are stored with src < dst."""
        if not self.kind.directed and self.src > self.dst:
            return replace(self, src=self.dst, dst=self.src)
        return self


def _merge_years(
    a: tuple[int, int] | None, b: tuple[int, int] | None
) -> tuple[int, int] | None:
    if a is None:
        return b
    if b is None:
        return a
    return (min(a[0], b[0]), max(a[1], b[1]))


class ScholarGraph:
    """Scholars, publications, derived edges, and the geo lookup table."""

    def __init__(self) -> None:
        self.scholars: dict[str, Scholar] = {}
        self.publications: dict[str, PublicationRecord] = {}
        self.edges: dict[tuple[str, str, EdgeKind], RelEdge] = {}
        self.geo_table: dict[str, tuple[float, float]] = {}
        self.version = SNAPSHOT_VERSION
        self._fingerprint: str | None = None

    # -- ingest ----------------------------------------------------------

    def ingest(self, records: list[PublicationRecord]) -> None:
        """Add (or re-add) publication records and rebuild the scholar table.

        Keyed by pub_id, so ingesting the same corpus twice is a no-op
        beyond the first pass.
        """
        for rec in records:
            self.publications[rec.pub_id] = rec
        rebuilt = build_scholars(list(self.publications.values()))
        self.scholars = {s.scholar_id: s for s in rebuilt}
        self._dirty()

    def set_geo_table(self, table: dict[str, tuple[float, float]]) -> None:
        self.geo_table = {k: (float(v[0]), float(v[1])) for k, v in table.items()}
        self._dirty()

    def dangling_refs(self) -> list[tuple[str, str]]:
        return dangling_refs(list(self.publications.values()))

    # -- edges -----------------------------------------------------------

    def upsert_edges(self, edges: list[RelEdge]) -> int:
        """Insert edges, merging duplicates of (src, dst, kind).

        Merging sums weights and widens year ranges.  Both endpoints must
        already exist; an unknown endpoint rejects the whole batch naming
        the offending id.
        """
        for e in edges:
            for endpoint in (e.src, e.dst):
                if endpoint not in self.scholars:
                    raise UnknownScholarError(endpoint)
        count = 0
        for e in edges:
            e = e.canonical()
            key = (e.src, e.dst, e.kind)
            existing = self.edges.get(key)
            if existing is None:
                self.edges[key] = e
            else:
                self.edges[key] = replace(
                    existing,
                    weight=existing.weight + e.weight,
                    years=_merge_years(existing.years, e.years),
                )
            count += 1
        if count:
            self._dirty()
        return count

    def drop_edges(self, kind: EdgeKind) -> int:
        keys = [k for k in self.edges if k[2] == kind]
        for k in keys:
            del self.edges[k]
        if keys:
            self._dirty()
        return len(keys)

    def edges_of_kind(self, kind: EdgeKind) -> list[RelEdge]:
        out = [e for (_, _, k), e in self.edges.items() if k == kind]
        out.sort(key=lambda e: (e.src, e.dst))
        return out

    def get_edge(self, src: str, dst: str, kind: EdgeKind) -> RelEdge | None:
        if not kind.directed and src > dst:
            src, dst = dst, src
        return self.edges.get((src, dst, kind))

    def neighbors(
        self, scholar_id: str, kind: EdgeKind, direction: str = "both"
    ) -> list[tuple[str, float]]:
        """Adjacency of one scholar under one edge kind.

        ``direction`` is ``out``, ``in``, or ``both``; it is ignored for
        undirected kinds.  For directed kinds, ``both`` sums weights of the
        two directions so each neighbor appears once.  Order: weight
        descending, then id ascending.
        """
        if scholar_id not in self.scholars:
            raise UnknownScholarError(scholar_id)
        if direction not in ("out", "in", "both"):
            raise ValueError(f"bad direction {direction!r}")
        acc: dict[str, float] = {}
        for (src, dst, k), e in self.edges.items():
            if k != kind:
                continue
            if not kind.directed:
                if src == scholar_id:
                    acc[dst] = acc.get(dst, 0) + e.weight
                elif dst == scholar_id:
                    acc[src] = acc.get(src, 0) + e.weight
                continue
            if direction in ("out", "both") and src == scholar_id:
                acc[dst] = acc.get(dst, 0) + e.weight
            if direction in ("in", "both") and dst == scholar_id:
                acc[src] = acc.get(src, 0) + e.weight
        return sorted(acc.items(), key=lambda item: (-item[1], item[0]))

    # -- identity / equality ---------------------------------------------

    def _dirty(self) -> None:
        self._fingerprint = None

    def _body_dict(self) -> dict:
        return {
            "version": self.version,
            "scholars": {
                sid: {
                    "name": s.name,
                    "inst": s.institution,
                    "first_pub_year": s.first_pub_year,
                    "pub_ids": s.pub_ids,
                }
                for sid, s in self.scholars.items()
            },
            "publications": {
                pid: {
                    "title": p.title,
                    "year": p.year,
                    "venue": p.venue,
                    "authors": [
                        {"id": a.scholar_id, "name": a.name, "inst": a.institution}
                        for a in p.authors
                    ],
                    "refs": p.refs,
                    "fields": p.fields,
                }
                for pid, p in self.publications.items()
            },
            "edges": [
                {
                    "src": e.src,
                    "dst": e.dst,
                    "kind": e.kind.value,
                    "weight": e.weight,
                    "years": list(e.years) if e.years else None,
                }
                for e in sorted(
                    self.edges.values(), key=lambda e: (e.kind.value, e.src, e.dst)
                )
            ],
            "geo": {inst: [lat, lng] for inst, (lat, lng) in self.geo_table.items()},
        }

    def _body_bytes(self) -> bytes:
        return json.dumps(
            self._body_dict(), sort_keys=True, separators=(",", ":")
        ).encode("utf-8")

    @property
    def fingerprint(self) -> str:
        """Content hash identifying this exact graph state.

        Used as the ranking-cache coherence key; loading an identical
        snapshot yields an identical fingerprint.
        """
        if self._fingerprint is None:
            self._fingerprint = hashlib.sha256(self._body_bytes()).hexdigest()
        return self._fingerprint

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScholarGraph):
            return NotImplemented
        return self._body_dict() == other._body_dict()

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"<ScholarGraph scholars={len(self.scholars)} "
            f"pubs={len(self.publications)} edges={len(self.edges)}>"
        )


def build_graph(
    records: list[PublicationRecord],
    geo_table: dict[str, tuple[float, float]] | None = None,
) -> ScholarGraph:
    g = ScholarGraph()
    g.ingest(records)
    if geo_table:
        g.set_geo_table(geo_table)
    return g


# -- snapshot persistence --------------------------------------------------


def save_snapshot(graph: ScholarGraph, path) -> str:
    """Write the snapshot container; returns the body checksum."""
    body = graph._body_bytes()
    checksum = hashlib.sha256(body).hexdigest()
    header = json.dumps(
        {"checksum": checksum, "magic": SNAPSHOT_MAGIC, "version": graph.version},
        sort_keys=True,
        separators=(",", ":"),
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("utf-8"))
        fh.write(b"\n")
        fh.write(body)
    return checksum


def load_snapshot(path) -> ScholarGraph:
    """Read and verify a snapshot; never exposes a partially-read graph."""
    with open(path, "rb") as fh:
        raw = fh.read()
    nl = raw.find(b"\n")
    if nl < 0:
        raise SnapshotError("not a snapshot: missing header line")
    try:
        header = json.loads(raw[:nl].decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise SnapshotError(f"unreadable header: {exc}") from exc
    if not isinstance(header, dict) or header.get("magic") != SNAPSHOT_MAGIC:
        raise SnapshotError("not a snapshot: bad magic")
    version = header.get("version")
    if version != SNAPSHOT_VERSION:
        raise SnapshotError(
            f"unsupported snapshot version {version!r} (supported: {SNAPSHOT_VERSION})"
        )
    body = raw[nl + 1 :]
    checksum = hashlib.sha256(body).hexdigest()
    if checksum != header.get("checksum"):
        raise SnapshotError("checksum mismatch: snapshot is corrupt or truncated")
    data = json.loads(body.decode("utf-8"))

    g = ScholarGraph()
    g.version = data["version"]
    for pid, p in data["publications"].items():
        g.publications[pid] = PublicationRecord(
            pub_id=pid,
            title=p["title"],
            year=p["year"],
            venue=p["venue"],
            authors=[
                AuthorRef(a["id"], a["name"], a.get("inst", "")) for a in p["authors"]
            ],
            refs=list(p["refs"]),
            fields=list(p["fields"]),
        )
    for sid, s in data["scholars"].items():
        g.scholars[sid] = Scholar(
            scholar_id=sid,
            name=s["name"],
            institution=s["inst"],
            first_pub_year=s["first_pub_year"],
            pub_ids=list(s["pub_ids"]),
        )
    for e in data["edges"]:
        edge = RelEdge(
            src=e["src"],
            dst=e["dst"],
            kind=EdgeKind(e["kind"]),
            weight=e["weight"],
            years=tuple(e["years"]) if e["years"] else None,
        )
        g.edges[(edge.src, edge.dst, edge.kind)] = edge
    g.geo_table = {inst: (ll[0], ll[1]) for inst, ll in data["geo"].items()}
    return g


# -- node-link text export ---------------------------------------------------
#
# One entity per line, tab-separated, JSON-encoded cells where text may
# contain tabs.  Sections: node, pub, geo, link.  Ordering is fixed (nodes
# by id, pubs by id, geo by institution, links by (src, dst, kind)) so two
# exports of one snapshot are byte-identical and the dump re-imports to a
# structurally equal graph.


def _j(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def to_nodelink(graph: ScholarGraph) -> str:
    lines = [NODELINK_HEADER, f"version\t{graph.version}"]
    for sid in sorted(graph.scholars):
        s = graph.scholars[sid]
        lines.append(
            "node\t%s\t%s\t%s\t%d" % (sid, _j(s.name), _j(s.institution), s.first_pub_year)
        )
    for pid in sorted(graph.publications):
        p = graph.publications[pid]
        authors = [
            {"id": a.scholar_id, "name": a.name, "inst": a.institution}
            for a in p.authors
        ]
        lines.append(
            "pub\t%s\t%s\t%d\t%s\t%s\t%s\t%s"
            % (pid, _j(p.title), p.year, _j(p.venue), _j(authors), _j(p.refs), _j(p.fields))
        )
    for inst in sorted(graph.geo_table):
        lat, lng = graph.geo_table[inst]
        lines.append("geo\t%s\t%r\t%r" % (_j(inst), lat, lng))
    for e in sorted(graph.edges.values(), key=lambda e: (e.src, e.dst, e.kind.value)):
        ys = "%d\t%d" % e.years if e.years else "-\t-"
        lines.append(
            "link\t%s\t%s\t%s\t%r\t%s" % (e.src, e.dst, e.kind.value, e.weight, ys)
        )
    return "\n".join(lines) + "\n"


def from_nodelink(text: str) -> ScholarGraph:
    lines = text.splitlines()
    if not lines or lines[0] != NODELINK_HEADER:
        raise SnapshotError("not a nodelink dump: bad header")
    g = ScholarGraph()
    for ln, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        tag = parts[0]
        try:
            if tag == "version":
                g.version = int(parts[1])
            elif tag == "node":
                sid, name, inst, year = parts[1:5]
                g.scholars[sid] = Scholar(
                    scholar_id=sid,
                    name=json.loads(name),
                    institution=json.loads(inst),
                    first_pub_year=int(year),
                )
            elif tag == "pub":
                pid, title, year, venue, authors, refs, fields_ = parts[1:8]
                g.publications[pid] = PublicationRecord(
                    pub_id=pid,
                    title=json.loads(title),
                    year=int(year),
                    venue=json.loads(venue),
                    authors=[
                        AuthorRef(a["id"], a["name"], a.get("inst", ""))
                        for a in json.loads(authors)
                    ],
                    refs=json.loads(refs),
                    fields=json.loads(fields_),
                )
            elif tag == "geo":
                inst, lat, lng = parts[1:4]
                g.geo_table[json.loads(inst)] = (float(lat), float(lng))
            elif tag == "link":
                src, dst, kind, weight, y0, y1 = parts[1:7]
                years = None if y0 == "-" else (int(y0), int(y1))
                w = float(weight)
                edge = RelEdge(
                    src=src,
                    dst=dst,
                    kind=EdgeKind(kind),
                    weight=int(w) if w.is_integer() and "." not in weight else w,
                    years=years,
                )
                g.edges[(edge.src, edge.dst, edge.kind)] = edge
            else:
                raise ValueError(f"unknown line tag {tag!r}")
        except (IndexError, ValueError, KeyError) as exc:
            raise SnapshotError(f"nodelink line {ln}: {exc}") from exc
    # scholar pub lists are derivable; recompute when pubs are present
    if g.publications:
        derived = {s.scholar_id: s for s in build_scholars(list(g.publications.values()))}
        for sid, s in g.scholars.items():
            if sid in derived:
                s.pub_ids = derived[sid].pub_ids
    return g
