"""Acceptance gate: one test per release criterion, with a PASS/FAIL line.

Run as part of the normal suite, or alone:

    pytest tests/test_acceptance.py -v -s
"""

import random
import string
import time
from contextlib import contextmanager

import jsonschema
import pytest
from fastapi.testclient import TestClient

from scholargraph.api import AppState, RESPONSE_SCHEMAS, create_app
from scholargraph.ego import EGO_NETWORK_SCHEMA
from scholargraph.graph import EdgeKind, build_graph, from_nodelink, load_snapshot, save_snapshot, to_nodelink
from scholargraph.mining import (
    advisor_features,
    fit_advisor_weights,
    logistic,
    mine_advisors,
    mine_all,
    mine_citations,
    mine_coauthors,
    mine_cocitations,
    _joint_pubs,
)
from scholargraph.ranking import Measure, RankingCache, compute_measure, ranked_list
from scholargraph.records import build_scholars, parse_corpus
from scholargraph.search import QueryAst, Relation, parse_query
from scholargraph.synth import SynthConfig, generate, load_labeled_pairs

import oracles


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] {name}: FAIL")
        raise
    print(f"[ACCEPTANCE] {name}: PASS")


def synth_records(seed, scholars, pubs):
    result = generate(SynthConfig(scholars=scholars, pubs=pubs, seed=seed))
    parsed = parse_corpus(result.corpus_jsonl.splitlines())
    assert not parsed.diagnostics
    return result, parsed.records


class TestOracleEquivalence:
    def test_miners_and_measures_match_brute_force_on_50_corpora(self):
        started = time.monotonic()
        with criterion("oracle-equivalence (50 corpora, exact)"):
            for i in range(50):
                scholars = 14 + (i % 7) * 2       # 14..26
                pubs = scholars * 3 + (i * 5) % 40  # well under the 500 cap
                _, records = synth_records(1000 + i, scholars, pubs)

                mined = {(e.src, e.dst): e.weight for e in mine_coauthors(records)}
                assert mined == oracles.coauthor_weights(records), f"coauthor seed {i}"

                cites, _ = mine_citations(records)
                assert {
                    (e.src, e.dst): e.weight for e in cites
                } == oracles.cites_weights(records), f"cites seed {i}"

                assert {
                    (e.src, e.dst): e.weight for e in mine_cocitations(records)
                } == oracles.cocited_weights(records), f"cocited seed {i}"

                graph = build_graph(records)
                mine_all(graph)
                advisor_edges = graph.edges_of_kind(EdgeKind.ADVISOR_OF)
                team_edges = graph.edges_of_kind(EdgeKind.TEAM)
                first_years = {s: sc.first_pub_year for s, sc in graph.scholars.items()}
                expected = {
                    Measure.COLLABORATORS: oracles.collaborators_per_scholar(records),
                    Measure.ADVISEES: oracles.out_degree(advisor_edges, EdgeKind.ADVISOR_OF),
                    Measure.TEAM_MEMBERS: oracles.out_degree(team_edges, EdgeKind.TEAM),
                    Measure.CITATIONS: oracles.citations_per_scholar(records),
                    Measure.ADVISOR_INFLUENCE: oracles.advisor_influence(records, advisor_edges),
                    Measure.POTENTIAL_INDEX: oracles.potential_index(records, first_years),
                }
                for measure, want in expected.items():
                    got = compute_measure(measure, graph)
                    for sid in graph.scholars:
                        assert got[sid] == want.get(sid, 0), (i, measure, sid)
            elapsed = time.monotonic() - started
            print(f"  (50 corpora checked in {elapsed:.1f}s)")
            assert elapsed < 60


class TestAdvisorRecovery:
    SEEDS = (5, 6, 7, 8, 9)  # fixed; pooled rates are asserted
    SCHOLARS = 150
    PUBS = 600

    def _fit_from_manifest(self, result, records, scholars):
        rows = load_labeled_pairs(result.labeled_pairs_tsv)
        joint = _joint_pubs(records)
        pubs_of = {}
        for rec in records:
            for sid in set(rec.author_ids()):
                pubs_of.setdefault(sid, []).append(rec)
        labeled = []
        for advisor, advisee, label in rows:
            key = (min(advisor, advisee), max(advisor, advisee))
            assert key in joint, "manifest rows are coauthor pairs by construction"
            feats, _, _ = advisor_features(
                scholars[advisee], scholars[advisor], pubs_of[advisee], joint[key]
            )
            labeled.append((feats, label))
        return fit_advisor_weights(labeled)

    def test_planted_pair_recovery(self):
        with criterion("advisor recovery (fitted >=90%/<=10% FP, defaults >=75%)"):
            planted_total = 0
            default_hits = 0
            fitted_hits = 0
            fitted_emitted = 0
            fitted_false = 0
            for seed in self.SEEDS:
                result, records = synth_records(seed, self.SCHOLARS, self.PUBS)
                scholars = {s.scholar_id: s for s in build_scholars(records)}
                planted = set(result.planted)
                planted_total += len(planted)

                default_edges, _ = mine_advisors(records, scholars)
                default_pairs = {(e.src, e.dst) for e in default_edges}
                default_hits += len(default_pairs & planted)

                weights, bias = self._fit_from_manifest(result, records, scholars)
                fitted_edges, _ = mine_advisors(records, scholars, weights=weights, bias=bias)
                fitted_pairs = {(e.src, e.dst) for e in fitted_edges}
                fitted_hits += len(fitted_pairs & planted)
                fitted_emitted += len(fitted_pairs)
                fitted_false += len(fitted_pairs - planted)

            default_recall = default_hits / planted_total
            fitted_recall = fitted_hits / planted_total
            fitted_fp = fitted_false / fitted_emitted
            print(
                f"  (pooled over seeds {self.SEEDS}: default recall {default_recall:.3f}, "
                f"fitted recall {fitted_recall:.3f}, fitted FP {fitted_fp:.3f})"
            )
            assert fitted_recall >= 0.90
            assert fitted_fp <= 0.10
            assert default_recall >= 0.75


class TestClassifierSpotValues:
    def test_f1_worked_examples(self, f1_records):
        with criterion("classifier spot values (sigma(1.5), sigma(-2.3) within 1e-6)"):
            scholars = {s.scholar_id: s for s in build_scholars(f1_records)}
            _, audit = mine_advisors(f1_records, scholars)
            forward = next(p for p in audit if (p.advisor, p.advisee) == ("s2", "s1"))
            reverse = next(p for p in audit if (p.advisor, p.advisee) == ("s1", "s2"))
            assert forward.score == pytest.approx(logistic(1.5), abs=1e-6)
            assert forward.score == pytest.approx(0.8175744761936437, abs=1e-6)
            assert reverse.score == pytest.approx(logistic(-2.3), abs=1e-6)
            assert reverse.score == pytest.approx(0.09112296101485616, abs=1e-6)


class TestParser:
    def test_worked_example_fuzz_and_round_trip(self):
        with criterion("parser (worked example, 1e5 fuzz, 1e3 round-trips)"):
            ast = parse_query("Bob's advisor")
            assert ast == QueryAst(kind="relation_query", name="Bob", relation=Relation.ADVISOR)

            rng = random.Random(2024)
            alphabet = string.printable + "éüő世界'’"
            fragments = ["'s", " of ", "advisor", "team", "citers", "  "]
            for _ in range(100_000):
                if rng.random() < 0.3:
                    text = "".join(
                        rng.choice(fragments) if rng.random() < 0.4 else rng.choice(alphabet)
                        for _ in range(rng.randrange(0, 24))
                    )
                else:
                    text = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 40)))
                result = parse_query(text)  # must never raise
                assert result.kind in ("name_search", "relation_query")

            name_alphabet = string.ascii_letters + " '"
            made = 0
            while made < 1000:
                name = "".join(
                    rng.choice(name_alphabet) for _ in range(rng.randrange(1, 18))
                ).strip()
                if not name:
                    continue
                made += 1
                ast = QueryAst(
                    kind="relation_query",
                    name=name,
                    relation=rng.choice(list(Relation)),
                )
                assert parse_query(ast.pretty()) == ast, ast


class TestCacheCoherence:
    def test_randomized_interleavings(self, f1_mined):
        with criterion("cache coherence (1e3 randomized steps)"):
            rng = random.Random(7)
            snapshots = [f1_mined]
            for seed in (71, 72):
                _, records = synth_records(seed, 16, 48)
                graph = build_graph(records)
                mine_all(graph)
                snapshots.append(graph)
            holder = {"graph": snapshots[0]}
            cache = RankingCache(lambda: holder["graph"])
            gets = 0
            for _ in range(1000):
                roll = rng.random()
                if roll < 0.15:
                    holder["graph"] = rng.choice(snapshots)  # snapshot reload
                elif roll < 0.25:
                    cache.invalidate(rng.choice(list(Measure)))
                elif roll < 0.30:
                    cache.invalidate()
                else:
                    measure = rng.choice(list(Measure))
                    cached = cache.get(measure)
                    fresh = ranked_list(measure, holder["graph"])
                    assert cached.entries == fresh.entries
                    gets += 1
            assert gets > 500


class TestPersistence:
    def test_snapshot_round_trip_100_random_graphs(self, tmp_path):
        with criterion("persistence (100 random snapshot round-trips)"):
            for i in range(100):
                scholars = 8 + (i % 5) * 2
                _, records = synth_records(3000 + i, scholars, scholars * 5 // 2)
                graph = build_graph(records)
                if i % 2 == 0:
                    mine_all(graph)  # float edge weights in half the cases
                path = tmp_path / "g.snap"
                save_snapshot(graph, path)
                assert load_snapshot(path) == graph

    def test_export_import_round_trip(self, f1_mined):
        with criterion("persistence (export/import round-trip, F1 + synthetic)"):
            assert from_nodelink(to_nodelink(f1_mined)) == f1_mined
            for seed in (81, 82, 83):
                _, records = synth_records(seed, 20, 60)
                graph = build_graph(records)
                mine_all(graph)
                assert from_nodelink(to_nodelink(graph)) == graph


class TestApiContract:
    def test_every_endpoint_schema_and_pagination(self, f1_mined):
        with criterion("api contract (schemas valid, pagination concatenates)"):
            client = TestClient(create_app(AppState(f1_mined)))

            jsonschema.validate(client.get("/healthz").json(), RESPONSE_SCHEMAS["healthz"])

            for q in ("alic", "Alice's advisor", "Bob's advisor", "collaborators of Alice", "zzz"):
                body = client.get("/scholars", params={"q": q}).json()
                jsonschema.validate(body, RESPONSE_SCHEMAS["scholars_query"])

            for sid in ("s1", "s2", "s3"):
                jsonschema.validate(
                    client.get(f"/scholars/{sid}").json(), RESPONSE_SCHEMAS["scholar_profile"]
                )
                for kind in ("coauthor", "advisor", "cites", "cocited", "team"):
                    doc = client.get(
                        f"/scholars/{sid}/ego",
                        params={"kind": kind, "geo": "true", "series": "true"},
                    ).json()
                    jsonschema.validate(doc, EGO_NETWORK_SCHEMA)

            for measure in Measure:
                body = client.get(f"/rankings/{measure.value}").json()
                jsonschema.validate(body, RESPONSE_SCHEMAS["rankings"])

            rec = client.post("/recommend/advisor", json={"min_advisees": 1}).json()
            jsonschema.validate(rec, RESPONSE_SCHEMAS["recommend"])
            empty = client.post("/recommend/advisor", json={"min_citations": 10**6}).json()
            jsonschema.validate(empty, RESPONSE_SCHEMAS["recommend"])

            for response in (
                client.get("/scholars/ghost"),
                client.get("/rankings/h_index"),
                client.get("/scholars", params={"q": " "}),
                client.post("/recommend/advisor", json={}),
                client.get("/export", params={"format": "xml"}),
            ):
                jsonschema.validate(response.json(), RESPONSE_SCHEMAS["error"])

            assert client.get("/export").text == to_nodelink(f1_mined)

            # pagination: concatenated pages equal the full list
            _, records = synth_records(91, 40, 120)
            graph = build_graph(records)
            mine_all(graph)
            paged_client = TestClient(create_app(AppState(graph)))
            for measure in Measure:
                full = paged_client.get(
                    f"/rankings/{measure.value}", params={"limit": 500}
                ).json()["entries"]
                pages = []
                offset = 0
                while True:
                    page = paged_client.get(
                        f"/rankings/{measure.value}", params={"offset": offset, "limit": 9}
                    ).json()["entries"]
                    if not page:
                        break
                    pages.extend(page)
                    offset += 9
                assert pages == full
