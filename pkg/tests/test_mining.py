import math

import pytest

from scholargraph.graph import EdgeKind, RelEdge, build_graph
from scholargraph.mining import (
    CandidatePair,
    DEFAULT_ADVISOR_BIAS,
    DEFAULT_ADVISOR_WEIGHTS,
    collab_profile,
    find_advisor_cycles,
    logistic,
    mine_advisors,
    mine_citations,
    mine_coauthors,
    mine_cocitations,
    mine_teams,
)
from scholargraph.records import AuthorRef, PublicationRecord, build_scholars, parse_corpus
from scholargraph.synth import SynthConfig, generate

import oracles

from conftest import F1_GEO


def _record(pid, year, authors, refs=()):
    return PublicationRecord(
        pub_id=pid,
        title=f"t-{pid}",
        year=year,
        authors=[AuthorRef(a, a.upper(), f"inst-{a}") for a in authors],
        refs=list(refs),
    )


def synth_records(seed, scholars=20, pubs=60):
    result = generate(SynthConfig(scholars=scholars, pubs=pubs, seed=seed))
    return parse_corpus(result.corpus_jsonl.splitlines()).records


class TestCoauthors:
    def test_f1_weights(self, f1_records):
        weights = {(e.src, e.dst): e.weight for e in mine_coauthors(f1_records)}
        assert weights == {("s1", "s2"): 2, ("s1", "s3"): 1}

    def test_single_author_corpus(self):
        records = [_record("p1", 2001, ["a"]), _record("p2", 2002, ["b"])]
        assert mine_coauthors(records) == []

    def test_matches_brute_force_on_random_corpus(self):
        records = synth_records(11, scholars=40, pubs=200)
        mined = {(e.src, e.dst): e.weight for e in mine_coauthors(records)}
        assert mined == oracles.coauthor_weights(records)


class TestCollabProfile:
    def test_f1_yearly_counts(self, f1_records):
        profile = collab_profile(f1_records, "s1", geo_table={})
        assert profile.yearly_counts == {2010: 1, 2011: 1, 2012: 1}

    def test_out_of_range_years_absent(self, f1_records):
        profile = collab_profile(f1_records, "s1", geo_table={}, year_range=(1980, 2000))
        assert profile.yearly_counts == {}

    def test_weights_equal_coauthor_edges(self, f1_records):
        profile = collab_profile(f1_records, "s1", geo_table={})
        assert profile.weights == {"s2": 2, "s3": 1}

    def test_geo_points_lookup(self, f1_records):
        profile = collab_profile(f1_records, "s1", geo_table={"I2": (52.1, 13.4)})
        assert profile.geo_points == [("s2", 52.1, 13.4)]
        assert profile.missing_geo == 1  # s3's I1 not in the table

    def test_unknown_scholar(self, f1_records):
        with pytest.raises(KeyError):
            collab_profile(f1_records, "ghost", geo_table={})


class TestAdvisorMining:
    def _scholars(self, records):
        return {s.scholar_id: s for s in build_scholars(records)}

    def test_f1_forward_pair_features_and_score(self, f1_records):
        edges, audit = mine_advisors(f1_records, self._scholars(f1_records))
        pair = next(p for p in audit if p.advisor == "s2" and p.advisee == "s1")
        f1_, f2, f3, f4 = pair.features
        assert f1_ == pytest.approx(0.4)
        assert f2 == pytest.approx(2 / 3)
        assert f3 == pytest.approx(0.2)
        assert f4 == 1.0
        assert pair.score == pytest.approx(logistic(1.5), abs=1e-12)
        edge = next(e for e in edges if e.dst == "s1")
        assert edge.src == "s2"
        assert edge.years == (2010, 2011)
        assert edge.weight == pytest.approx(0.8175744761936437, abs=1e-9)

    def test_f1_reversed_pair_below_threshold(self, f1_records):
        edges, audit = mine_advisors(f1_records, self._scholars(f1_records))
        pair = next(p for p in audit if p.advisor == "s1" and p.advisee == "s2")
        assert pair.features == pytest.approx((0.0, 0.0, 0.2, 0.0))
        assert pair.score == pytest.approx(logistic(-2.3), abs=1e-12)
        assert not any(e.dst == "s2" for e in edges)

    def test_advisee_in_degree_at_most_one(self):
        records = synth_records(5, scholars=30, pubs=100)
        edges, _ = mine_advisors(records, self._scholars(records))
        advisees = [e.dst for e in edges]
        assert len(advisees) == len(set(advisees))

    def test_threshold_monotonicity(self):
        records = synth_records(6, scholars=25, pubs=80)
        scholars = self._scholars(records)
        previous = None
        for tau in (0.3, 0.5, 0.7, 0.9):
            edges, _ = mine_advisors(records, scholars, threshold=tau)
            pairs = {(e.src, e.dst) for e in edges}
            if previous is not None:
                assert pairs <= previous
            previous = pairs

    def test_argmax_invariant_under_positive_scaling(self):
        def chosen(audit: list[CandidatePair]) -> dict[str, str]:
            best: dict[str, CandidatePair] = {}
            for pair in audit:
                cur = best.get(pair.advisee)
                if (
                    cur is None
                    or pair.score > cur.score
                    or (pair.score == cur.score and pair.advisor < cur.advisor)
                ):
                    best[pair.advisee] = pair
            return {advisee: p.advisor for advisee, p in best.items()}

        records = synth_records(8, scholars=25, pubs=80)
        scholars = self._scholars(records)
        _, base_audit = mine_advisors(records, scholars)
        scaled_w = tuple(3.5 * w for w in DEFAULT_ADVISOR_WEIGHTS)
        _, scaled_audit = mine_advisors(
            records, scholars, weights=scaled_w, bias=3.5 * DEFAULT_ADVISOR_BIAS
        )
        assert chosen(base_audit) == chosen(scaled_audit)
        # at tau = 0.5 acceptance is sign-based, so the edge set is invariant too
        base_edges, _ = mine_advisors(records, scholars)
        scaled_edges, _ = mine_advisors(
            records, scholars, weights=scaled_w, bias=3.5 * DEFAULT_ADVISOR_BIAS
        )
        assert {(e.src, e.dst) for e in base_edges} == {
            (e.src, e.dst) for e in scaled_edges
        }

    def test_tie_break_prefers_smaller_id(self):
        # two identical candidate advisors -> same features, same score
        records = [
            _record("a1", 1990, ["adv1"]),
            _record("a2", 1990, ["adv2"]),
            _record("j1", 2010, ["kid", "adv1"]),
            _record("j2", 2010, ["kid", "adv2"]),
        ]
        edges, _ = mine_advisors(records, self._scholars(records))
        assert len(edges) == 1
        assert edges[0].src == "adv1"

    def test_bad_threshold_rejected(self, f1_records):
        with pytest.raises(ValueError):
            mine_advisors(f1_records, self._scholars(f1_records), threshold=1.5)

    def test_cycles_reported(self):
        edges = [
            RelEdge("a", "b", EdgeKind.ADVISOR_OF, 0.9),
            RelEdge("b", "a", EdgeKind.ADVISOR_OF, 0.9),
        ]
        cycles = find_advisor_cycles(edges)
        assert cycles

    def test_synthetic_corpora_acyclic(self):
        records = synth_records(9, scholars=30, pubs=100)
        edges, _ = mine_advisors(records, self._scholars(records))
        assert find_advisor_cycles(edges) == []


class TestCitations:
    def test_f1_weights_match_brute_force(self, f1_records):
        edges, _ = mine_citations(f1_records)
        mined = {(e.src, e.dst): e.weight for e in edges}
        assert mined == oracles.cites_weights(f1_records)
        # the hand-derived values under the no-self-citation rule
        assert mined == {("s1", "s2"): 1, ("s3", "s2"): 1}

    def test_no_refs_no_edges(self):
        records = [_record("p1", 2000, ["a"]), _record("p2", 2001, ["b"])]
        edges, tags = mine_citations(records)
        assert edges == [] and tags == {}

    def test_no_self_citation_edges(self):
        records = synth_records(4, scholars=25, pubs=90)
        edges, _ = mine_citations(records)
        assert all(e.src != e.dst for e in edges)

    def test_cited_author_on_citing_pub_never_counts(self, f1_records):
        # p4 references s1's work but s1 co-authored p4, so no s3 -> s1 edge
        edges, _ = mine_citations(f1_records)
        assert not any((e.src, e.dst) == ("s3", "s1") for e in edges)

    def test_identity_tags(self, f1_records):
        scholars = {s.scholar_id: s for s in build_scholars(f1_records)}
        advisor_edges, _ = mine_advisors(f1_records, scholars)
        coauthor_edges = mine_coauthors(f1_records)
        _, tags = mine_citations(f1_records, advisor_edges, coauthor_edges)
        assert tags[("s2", "s1")] == "advisee"  # s1 cites s2; s1 is s2's advisee
        assert tags[("s2", "s3")] == "other"

    def test_matches_brute_force_on_random_corpus(self):
        records = synth_records(12, scholars=30, pubs=120)
        edges, _ = mine_citations(records)
        assert {(e.src, e.dst): e.weight for e in edges} == oracles.cites_weights(records)


class TestCocitations:
    def test_f1_weight(self, f1_records):
        edges = mine_cocitations(f1_records)
        assert {(e.src, e.dst): e.weight for e in edges} == {("s1", "s2"): 2}

    def test_never_jointly_referenced(self):
        records = [
            _record("p1", 2000, ["a"]),
            _record("p2", 2000, ["b"]),
            _record("p3", 2005, ["c"], refs=["p1"]),
            _record("p4", 2006, ["d"], refs=["p2"]),
        ]
        assert mine_cocitations(records) == []

    def test_matches_triple_scan_oracle(self):
        records = synth_records(13, scholars=25, pubs=100)
        mined = {(e.src, e.dst): e.weight for e in mine_cocitations(records)}
        assert mined == oracles.cocited_weights(records)

    def test_symmetric_canonical_storage(self):
        records = synth_records(14, scholars=20, pubs=70)
        for e in mine_cocitations(records):
            assert e.src < e.dst


class TestTeams:
    def test_f1_with_premise_advisor_edge(self, f1_records):
        # premise: the advisor example's edge only
        advisor_edges = [RelEdge("s2", "s1", EdgeKind.ADVISOR_OF, 0.8176)]
        coauthor_edges = mine_coauthors(f1_records)
        team = mine_teams(advisor_edges, coauthor_edges, team_threshold=3)
        assert [(e.src, e.dst) for e in team] == [("s2", "s1")]

    def test_threshold_one_mirrors_coauthors_plus_advisees(self, f1_records):
        coauthor_edges = mine_coauthors(f1_records)
        team = mine_teams([], coauthor_edges, team_threshold=1)
        expected = set()
        for e in coauthor_edges:
            expected.add((e.src, e.dst))
            expected.add((e.dst, e.src))
        assert {(e.src, e.dst) for e in team} == expected

    def test_no_advisors_infinite_threshold(self, f1_records):
        team = mine_teams([], mine_coauthors(f1_records), team_threshold=math.inf)
        assert team == []

    def test_team_weight_is_one(self, f1_records):
        team = mine_teams([], mine_coauthors(f1_records), team_threshold=1)
        assert all(e.weight == 1 for e in team)
