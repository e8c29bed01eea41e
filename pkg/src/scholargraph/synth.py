"""Seeded synthetic corpora with planted advisor-advisee ground truth.

The generator plants advisor pairs by construction: an advisee debuts on a
joint publication with their advisor and keeps co-authoring with them at
high probability through the first five career years.  Noise is mandatory
so recovery tests are not circular:

  * distractor peers — advisees also publish with same-cohort juniors
    (rotating through a small peer pool, so no single peer dominates the
    early window),
  * distractor seniors — occasional senior coauthors who are not the
    advisor, mostly outside the early window,
  * unplanted juniors — a third of juniors have no advisor at all and
    must not pick one up,
  * senior-senior collaborations, kept outside early windows.

All draws come from one seeded generator and iteration order is fixed, so
a (config, seed) pair reproduces the corpus byte for byte.  The manifest
of planted truths is emitted as a labeled-pairs file (advisor, advisee,
label) whose negatives are sampled distractor coauthor pairs; it feeds the
classifier-fitting path directly.
"""

from __future__ import annotations

import bisect
import json
import random
from collections import defaultdict
from dataclasses import dataclass, field

END_YEAR = 2017

_FIRST = [
    "Avery", "Blake", "Casey", "Devon", "Ellis", "Finley", "Gray", "Harper",
    "Indra", "Jules", "Kiran", "Lane", "Mori", "Noor", "Oak", "Parker",
    "Quinn", "Reese", "Sage", "Tatum",
]
_LAST = [
    "Adler", "Bowen", "Castro", "Dumas", "Egan", "Farrow", "Goto", "Hale",
    "Iwata", "Joshi", "Katz", "Lund", "Mercer", "Nagy", "Okafor", "Pike",
    "Roy", "Silva", "Tran", "Ueda",
]

PLANT_PROB = 0.65
ADVISOR_EARLY_PROB = 0.9
ADVISOR_LATE_PROB = 0.15
PEER_PROB = 0.45
PEER_POOL_SIZE = 5
SENIOR_DISTRACTOR_EARLY_PROB = 0.03
SENIOR_DISTRACTOR_LATE_PROB = 0.2
SENIOR_COLLAB_PROB = 0.3
EXTRA_FIELD_PROB = 0.25
MAX_REFS = 4
EARLY_WINDOW = 5

FIELD_TAG = "CS"
EXTRA_FIELDS = ["AI", "Systems", "Theory"]


@dataclass
class SynthConfig:
    scholars: int = 100
    pubs: int = 400
    seed: int = 0

    def validate(self) -> None:
        if self.scholars < 6:
            raise ValueError("need at least 6 scholars")
        if self.pubs < self.scholars:
            raise ValueError("need at least one publication per scholar")


@dataclass
class SynthResult:
    corpus_jsonl: str
    labeled_pairs_tsv: str
    geo_tsv: str
    planted: list[tuple[str, str]]  # (advisor_id, advisee_id)
    config: SynthConfig
    counts: dict = field(default_factory=dict)


def _pub_line(pub_id, title, year, authors, refs, fields, names, insts) -> str:
    return json.dumps(
        {
            "id": pub_id,
            "title": title,
            "year": year,
            "venue": None,
            "authors": [{"id": a, "name": names[a], "inst": insts[a]} for a in authors],
            "refs": refs,
            "fields": fields,
        },
        sort_keys=True,
        separators=(",", ":"),
    )


def generate(config: SynthConfig) -> SynthResult:
    config.validate()
    rng = random.Random(config.seed)
    n = config.scholars

    sids = [f"s{i:04d}" for i in range(1, n + 1)]
    n_seniors = max(3, round(n * 0.3))
    seniors = sids[:n_seniors]
    juniors = sids[n_seniors:]

    names = {
        sid: f"{rng.choice(_FIRST)} {rng.choice(_LAST)}" for sid in sids
    }
    n_inst = max(3, n // 8)
    inst_names = [f"inst-{k:02d}" for k in range(1, n_inst + 1)]
    insts = {sid: rng.choice(inst_names) for sid in sids}
    geo_rows = [
        (inst, round(rng.uniform(-60, 70), 4), round(rng.uniform(-180, 180), 4))
        for inst in inst_names
    ]

    first_year = {}
    for sid in seniors:
        first_year[sid] = 1970 + rng.randint(0, 20)
    for sid in juniors:
        first_year[sid] = 2000 + rng.randint(0, 12)

    planted: dict[str, str] = {}  # advisee -> advisor
    for sid in juniors:
        if rng.random() < PLANT_PROB:
            planted[sid] = rng.choice(seniors)

    peer_pool = {}
    for sid in juniors:
        others = [j for j in juniors if j != sid]
        peer_pool[sid] = rng.sample(others, min(PEER_POOL_SIZE, len(others)))

    # --- publications ----------------------------------------------------
    pubs: list[dict] = []

    def add_pub(lead: str, year: int, coauthors: list[str]) -> None:
        authors = [lead]
        for c in coauthors:
            if c not in authors:
                authors.append(c)
        pubs.append({"lead": lead, "year": year, "authors": authors})

    # debut publications anchor every scholar's first year
    for sid in sids:
        if sid in planted:
            add_pub(sid, first_year[sid], [planted[sid]])
        else:
            add_pub(sid, first_year[sid], [])

    remaining = config.pubs - len(pubs)
    lead_pool = juniors * 2 + seniors  # juniors drive most event pubs
    lead_pool = sorted(lead_pool)
    for _ in range(remaining):
        lead = rng.choice(lead_pool)
        start = first_year[lead]
        if lead in seniors:
            year = min(END_YEAR, start + 6 + rng.randint(0, 6))
            coauthors = []
            if rng.random() < SENIOR_COLLAB_PROB:
                others = [s for s in seniors if s != lead and first_year[s] <= year]
                if others:
                    coauthors.append(rng.choice(others))
            add_pub(lead, year, coauthors)
            continue

        # min of two draws skews event years toward early career, which
        # keeps per-junior early windows populated enough to be informative
        offset = min(rng.randint(0, 10), rng.randint(0, 10))
        year = min(END_YEAR, start + offset)
        early = year < start + EARLY_WINDOW
        coauthors = []
        advisor = planted.get(lead)
        if advisor is not None:
            p = ADVISOR_EARLY_PROB if early else ADVISOR_LATE_PROB
            if rng.random() < p:
                coauthors.append(advisor)
        if rng.random() < PEER_PROB:
            # a coauthor appearing before their own debut would shift their
            # derived first year and corrupt every age-based feature
            peers = [p for p in peer_pool[lead] if first_year[p] <= year]
            if peers:
                coauthors.append(rng.choice(peers))
        p_senior = SENIOR_DISTRACTOR_EARLY_PROB if early else SENIOR_DISTRACTOR_LATE_PROB
        if rng.random() < p_senior:
            distractor = rng.choice([s for s in seniors if s != advisor])
            coauthors.append(distractor)
        add_pub(lead, year, coauthors)

    # --- references -------------------------------------------------------
    pids = [f"p{i:05d}" for i in range(1, len(pubs) + 1)]
    years = [p["year"] for p in pubs]
    order_by_year = sorted(range(len(pubs)), key=lambda i: (years[i], i))
    year_sorted_pids = [pids[i] for i in order_by_year]
    year_sorted_years = [years[i] for i in order_by_year]

    ref_lists: list[list[str]] = []
    for i, pub in enumerate(pubs):
        cutoff = bisect.bisect_left(year_sorted_years, pub["year"])
        pool = year_sorted_pids[:cutoff]
        k = min(rng.randint(0, MAX_REFS), len(pool))
        refs = sorted(rng.sample(pool, k)) if k else []
        ref_lists.append(refs)

    # --- corpus text ------------------------------------------------------
    lines = []
    for i, pub in enumerate(pubs):
        fields_ = [FIELD_TAG]
        if rng.random() < EXTRA_FIELD_PROB:
            fields_.append(rng.choice(EXTRA_FIELDS))
        lines.append(
            _pub_line(
                pids[i],
                f"Study {pids[i]}",
                pub["year"],
                pub["authors"],
                ref_lists[i],
                fields_,
                names,
                insts,
            )
        )
    corpus_jsonl = "\n".join(lines) + "\n"

    # --- labeled pairs manifest --------------------------------------------
    coauthors_of: dict[str, set[str]] = {sid: set() for sid in sids}
    for pub in pubs:
        for a in pub["authors"]:
            for b in pub["authors"]:
                if a != b:
                    coauthors_of[a].add(b)

    # one positive per planted pair plus one HARD negative: the distractor
    # coauthor with the most joint publications inside the advisee's early
    # window, i.e. the pair most likely to be mistaken for a mentorship.
    # Near-balanced classes keep the fitted threshold honest.
    early_joint: dict[tuple[str, str], int] = defaultdict(int)
    for pub in pubs:
        for a in pub["authors"]:
            for b in pub["authors"]:
                if a != b and pub["year"] <= first_year[a] + EARLY_WINDOW - 1:
                    early_joint[(a, b)] += 1

    pair_rows: list[tuple[str, str, int]] = []
    for advisee in sorted(planted):
        advisor = planted[advisee]
        pair_rows.append((advisor, advisee, 1))
        best_d, best_n = None, -1
        for d in sorted(coauthors_of[advisee] - {advisor}):
            n_joint = early_joint[(advisee, d)]
            if n_joint > best_n:
                best_d, best_n = d, n_joint
        if best_d is not None:
            pair_rows.append((best_d, advisee, 0))

    labeled_pairs_tsv = (
        "\n".join(f"{a}\t{b}\t{label}" for a, b, label in pair_rows) + "\n"
    )
    geo_tsv = "\n".join(f"{inst}\t{lat}\t{lng}" for inst, lat, lng in geo_rows) + "\n"

    return SynthResult(
        corpus_jsonl=corpus_jsonl,
        labeled_pairs_tsv=labeled_pairs_tsv,
        geo_tsv=geo_tsv,
        planted=sorted((adv, s) for s, adv in planted.items()),
        config=config,
        counts={
            "scholars": n,
            "seniors": n_seniors,
            "juniors": len(juniors),
            "publications": len(pubs),
            "planted_pairs": len(planted),
            "labeled_rows": len(pair_rows),
        },
    )


def load_labeled_pairs(text: str) -> list[tuple[str, str, int]]:
    """Parse a labeled-pairs file: advisor<TAB>advisee<TAB>label(0|1)."""
    rows = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3 or parts[2] not in ("0", "1"):
            raise ValueError(f"labeled-pairs line {line_no}: expected advisor\\tadvisee\\t0|1")
        rows.append((parts[0], parts[1], int(parts[2])))
    return rows


def load_geo_table(text: str) -> dict[str, tuple[float, float]]:
    """Parse a geo table: institution<TAB>lat<TAB>lng per line."""
    table = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"geo line {line_no}: expected institution\\tlat\\tlng")
        try:
            table[parts[0]] = (float(parts[1]), float(parts[2]))
        except ValueError as exc:
            raise ValueError(f"geo line {line_no}: {exc}") from exc
    return table
