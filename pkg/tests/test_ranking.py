import json
import random

import pytest

from scholargraph.graph import build_graph, ScholarGraph
from scholargraph.mining import mine_all
from scholargraph.ranking import Measure, RankingCache, compute_measure, paginate, ranked_list
from scholargraph.records import AuthorRef, PublicationRecord, parse_corpus
from scholargraph.synth import SynthConfig, generate

import oracles


def mined_graph(seed, scholars=20, pubs=60):
    result = generate(SynthConfig(scholars=scholars, pubs=pubs, seed=seed))
    graph = build_graph(parse_corpus(result.corpus_jsonl.splitlines()).records)
    mine_all(graph)
    return graph


class TestComputeMeasure:
    def test_f1_collaborators(self, f1_mined):
        assert compute_measure(Measure.COLLABORATORS, f1_mined) == {
            "s1": 2,
            "s2": 1,
            "s3": 1,
        }

    def test_f1_citations(self, f1_mined):
        # only p4 cites s2's work without s2 on the author list
        assert compute_measure(Measure.CITATIONS, f1_mined) == {"s1": 0, "s2": 1, "s3": 0}

    def test_empty_graph_every_measure_empty(self):
        g = ScholarGraph()
        for measure in Measure:
            assert compute_measure(measure, g) == {}

    def test_f1_potential_index(self, f1_mined):
        values = compute_measure(Measure.POTENTIAL_INDEX, f1_mined)
        # window [2008, 2012]; s2 has one qualifying citation, age 14
        assert values["s2"] == pytest.approx(1 / 14)
        assert values["s1"] == 0 and values["s3"] == 0

    def test_synthetic_against_oracles(self):
        result = generate(SynthConfig(scholars=25, pubs=80, seed=21))
        records = parse_corpus(result.corpus_jsonl.splitlines()).records
        graph = build_graph(records)
        mine_all(graph)
        from scholargraph.graph import EdgeKind

        advisor_edges = graph.edges_of_kind(EdgeKind.ADVISOR_OF)
        team_edges = graph.edges_of_kind(EdgeKind.TEAM)
        first_years = {sid: s.first_pub_year for sid, s in graph.scholars.items()}

        expectations = {
            Measure.COLLABORATORS: oracles.collaborators_per_scholar(records),
            Measure.CITATIONS: oracles.citations_per_scholar(records),
            Measure.ADVISEES: oracles.out_degree(advisor_edges, EdgeKind.ADVISOR_OF),
            Measure.TEAM_MEMBERS: oracles.out_degree(team_edges, EdgeKind.TEAM),
            Measure.ADVISOR_INFLUENCE: oracles.advisor_influence(records, advisor_edges),
            Measure.POTENTIAL_INDEX: oracles.potential_index(records, first_years),
        }
        for measure, expected in expectations.items():
            computed = compute_measure(measure, graph)
            for sid in graph.scholars:
                assert computed[sid] == pytest.approx(expected.get(sid, 0)), (
                    measure,
                    sid,
                )

    def test_adding_publication_never_decreases_collabs_or_citations(self, f1_records):
        g1 = build_graph(f1_records)
        mine_all(g1)
        extra = PublicationRecord(
            pub_id="p5",
            title="later work",
            year=2013,
            authors=[AuthorRef("s4", "Dana", "I3"), AuthorRef("s1", "Alice", "I1")],
            refs=["p1", "p4"],
        )
        g2 = build_graph(f1_records + [extra])
        mine_all(g2)
        for measure in (Measure.COLLABORATORS, Measure.CITATIONS):
            before = compute_measure(measure, g1)
            after = compute_measure(measure, g2)
            for sid, value in before.items():
                assert after[sid] >= value


class TestRankedList:
    def test_f1_collaborators_order_and_tiebreak(self, f1_mined):
        ranking = ranked_list(Measure.COLLABORATORS, f1_mined)
        assert ranking.entries == [("s1", 2), ("s2", 1), ("s3", 1)]

    def test_zero_values_excluded(self, f1_mined):
        ranking = ranked_list(Measure.CITATIONS, f1_mined)
        assert ranking.entries == [("s2", 1)]

    def test_offset_beyond_end_empty_page(self, f1_mined):
        ranking = ranked_list(Measure.COLLABORATORS, f1_mined)
        assert paginate(ranking.entries, offset=99, limit=10) == []

    def test_pagination_concatenation(self):
        graph = mined_graph(31, scholars=30, pubs=90)
        ranking = ranked_list(Measure.COLLABORATORS, graph)
        pages = []
        offset = 0
        while True:
            page = paginate(ranking.entries, offset, 7)
            if not page:
                break
            pages.extend(page)
            offset += 7
        assert pages == ranking.entries

    def test_repeated_runs_byte_identical(self):
        g1 = mined_graph(32)
        g2 = mined_graph(32)
        for measure in Measure:
            a = json.dumps(ranked_list(measure, g1).entries)
            b = json.dumps(ranked_list(measure, g2).entries)
            assert a == b

    def test_values_non_increasing(self):
        graph = mined_graph(33)
        for measure in Measure:
            entries = ranked_list(measure, graph).entries
            values = [v for _, v in entries]
            assert values == sorted(values, reverse=True)


class TestRankingCache:
    def test_second_get_served_from_cache(self, f1_mined):
        cache = RankingCache(lambda: f1_mined)
        first = cache.get(Measure.COLLABORATORS)
        second = cache.get(Measure.COLLABORATORS)
        assert second is first

    def test_new_snapshot_triggers_recompute(self, f1_mined):
        holder = {"graph": f1_mined}
        cache = RankingCache(lambda: holder["graph"])
        first = cache.get(Measure.COLLABORATORS)
        holder["graph"] = mined_graph(41)
        second = cache.get(Measure.COLLABORATORS)
        assert second.computed_at != first.computed_at

    def test_invalidate_forces_fresh_object(self, f1_mined):
        cache = RankingCache(lambda: f1_mined)
        first = cache.get(Measure.ADVISEES)
        cache.invalidate(Measure.ADVISEES)
        second = cache.get(Measure.ADVISEES)
        assert second is not first
        assert second.entries == first.entries

    def test_randomized_interleaving_coherent(self, f1_mined):
        rng = random.Random(99)
        graphs = [f1_mined, mined_graph(42), mined_graph(43)]
        holder = {"graph": graphs[0]}
        cache = RankingCache(lambda: holder["graph"])
        for _ in range(300):
            op = rng.random()
            if op < 0.2:
                holder["graph"] = rng.choice(graphs)
            elif op < 0.3:
                cache.invalidate(rng.choice(list(Measure)))
            else:
                measure = rng.choice(list(Measure))
                cached = cache.get(measure)
                fresh = ranked_list(measure, holder["graph"])
                assert cached.entries == fresh.entries
