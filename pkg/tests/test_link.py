"""Temporal tracking and cross-lingual cluster linking."""

import random

import pytest

from newsmill.cluster import Cluster
from newsmill.link import (
    ClusterLink, crosslingual_similarity, link_crosslingual, track_over_time,
)


def make_cluster(cluster_id, language="en", date="2005-04-25", vector=None,
                 descriptor_vector=None, country_vector=None):
    return Cluster(
        cluster_id=cluster_id, language=language, date=date,
        doc_ids=[f"{cluster_id}-d"], vector=vector or {"a": 1.0},
        cohesiveness=0.8, title=f"title {cluster_id}", title_doc_id=f"{cluster_id}-d",
        descriptor_vector=descriptor_vector or {}, country_vector=country_vector or {},
    )


class TestTrackOverTime:
    def test_identical_vector_links_at_one(self):
        today = [make_cluster("en-2005-04-26-000", date="2005-04-26", vector={"a": 1.0})]
        past = [make_cluster("en-2005-04-25-000", date="2005-04-25", vector={"a": 2.0})]
        links = track_over_time(today, past)
        assert len(links) == 1
        assert links[0].score == pytest.approx(1.0)
        assert links[0].kind == "temporal"

    def test_orthogonal_no_link(self):
        today = [make_cluster("t", date="2005-04-26", vector={"a": 1.0})]
        past = [make_cluster("p", date="2005-04-25", vector={"b": 1.0})]
        assert track_over_time(today, past) == []

    def test_threshold_filters_past_days(self):
        today = [make_cluster("t", date="2005-04-28", vector={"a": 1.0, "b": 1.0})]
        # three past days engineered to score ~{0.9, 0.6, 0.3}
        past = [
            make_cluster("p1", date="2005-04-27", vector={"a": 1.0, "b": 0.63}),
            make_cluster("p2", date="2005-04-26", vector={"a": 1.0, "b": 0.05}),
            make_cluster("p3", date="2005-04-25", vector={"b": 1.0, "c": 2.2}),
        ]
        scores = {
            p.cluster_id: crosslingual_cos(today[0].vector, p.vector) for p in past
        }
        assert scores["p1"] > 0.5 > scores["p3"]
        links = track_over_time(today, past, threshold=0.5)
        linked = {l.to_cluster for l in links}
        assert linked == {p.cluster_id for p in past if scores[p.cluster_id] >= 0.5}
        assert len(links) == 2

    def test_max_links_per_past_day(self):
        today = [make_cluster("t", date="2005-04-26", vector={"a": 1.0})]
        past = [
            make_cluster("p1", date="2005-04-25", vector={"a": 1.0}),
            make_cluster("p2", date="2005-04-25", vector={"a": 1.0, "b": 0.1}),
        ]
        links = track_over_time(today, past, max_links_per_day=1)
        assert len(links) == 1
        assert links[0].to_cluster == "p1"  # best score wins

    def test_mixed_language_rejected(self):
        today = [make_cluster("t", language="en", date="2005-04-26")]
        past = [make_cluster("p", language="fr", date="2005-04-25")]
        with pytest.raises(ValueError, match="one language"):
            track_over_time(today, past)

    def test_future_history_ignored(self):
        today = [make_cluster("t", date="2005-04-25", vector={"a": 1.0})]
        future = [make_cluster("f", date="2005-04-26", vector={"a": 1.0})]
        assert track_over_time(today, future) == []


def crosslingual_cos(a, b):
    from newsmill.vectors import cosine

    return cosine(a, b)


class TestCrosslingualSimilarity:
    def test_all_ones(self):
        a = make_cluster("a", "en", vector={"x": 1.0},
                         descriptor_vector={"1": 1.0}, country_vector={"FR": 1.0})
        b = make_cluster("b", "fr", vector={"x": 1.0},
                         descriptor_vector={"1": 1.0}, country_vector={"FR": 1.0})
        assert crosslingual_similarity(a, b) == pytest.approx(1.0)

    def test_descriptor_only_gives_point_seven(self):
        a = make_cluster("a", "en", vector={"x": 1.0},
                         descriptor_vector={"1": 1.0}, country_vector={"FR": 1.0})
        b = make_cluster("b", "fr", vector={"y": 1.0},
                         descriptor_vector={"1": 1.0}, country_vector={"US": 1.0})
        assert crosslingual_similarity(a, b) == pytest.approx(0.7)

    def test_same_language_is_usage_error(self):
        a = make_cluster("a", "en")
        b = make_cluster("b", "en")
        with pytest.raises(ValueError):
            crosslingual_similarity(a, b)

    def test_symmetry(self):
        rng = random.Random(11)
        for _ in range(20):
            a = make_cluster(
                "a", "en",
                vector={k: rng.random() for k in "xyz"},
                descriptor_vector={str(i): rng.random() for i in range(3)},
                country_vector={"FR": rng.random(), "US": rng.random()},
            )
            b = make_cluster(
                "b", "de",
                vector={k: rng.random() for k in "xwv"},
                descriptor_vector={str(i): rng.random() for i in range(1, 4)},
                country_vector={"DE": rng.random(), "US": rng.random()},
            )
            assert crosslingual_similarity(a, b) == pytest.approx(
                crosslingual_similarity(b, a), abs=1e-15
            )

    def test_country_scores_excluded_from_keyword_ingredient(self):
        # identical keywords plus wildly different country components: the
        # third ingredient must ignore the ISO keys entirely
        a = make_cluster("a", "en", vector={"x": 1.0, "FR": 9.0})
        b = make_cluster("b", "fr", vector={"x": 1.0, "US": 9.0})
        assert crosslingual_similarity(a, b) == pytest.approx(0.1)

    def test_scaling_invariance(self):
        a = make_cluster("a", "en", vector={"x": 2.0, "y": 1.0},
                         descriptor_vector={"1": 0.5}, country_vector={"FR": 1.0})
        b = make_cluster("b", "fr", vector={"x": 1.0},
                         descriptor_vector={"1": 0.25}, country_vector={"FR": 3.0})
        base = crosslingual_similarity(a, b)
        scaled = make_cluster(
            "a2", "en",
            vector={k: v * 100 for k, v in a.vector.items()},
            descriptor_vector={k: v * 100 for k, v in a.descriptor_vector.items()},
            country_vector={k: v * 100 for k, v in a.country_vector.items()},
        )
        assert crosslingual_similarity(scaled, b) == pytest.approx(base, abs=1e-12)


class TestLinkCrosslingual:
    def test_single_pair_links(self):
        groups = {
            "en": [make_cluster("en-1", "en", descriptor_vector={"1": 1.0})],
            "fr": [make_cluster("fr-1", "fr", descriptor_vector={"1": 1.0})],
        }
        links = link_crosslingual(groups, threshold=0.3)
        assert len(links) == 1
        assert links[0].kind == "crosslingual"
        assert {links[0].from_cluster, links[0].to_cluster} == {"en-1", "fr-1"}

    def test_below_threshold_no_link(self):
        groups = {
            "en": [make_cluster("en-1", "en", descriptor_vector={"1": 1.0})],
            "fr": [make_cluster("fr-1", "fr", descriptor_vector={"2": 1.0})],
        }
        assert link_crosslingual(groups, threshold=0.3) == []

    def test_fixture_argmax_above_threshold(self):
        # 2x3 grid with a hand-computed similarity matrix: descriptor cosine
        # drives everything (keyword vectors distinct, country vectors empty)
        en = [
            make_cluster("en-0", "en", vector={"en0": 1.0}, descriptor_vector={"1": 1.0}),
            make_cluster("en-1", "en", vector={"en1": 1.0}, descriptor_vector={"2": 1.0}),
        ]
        fr = [
            make_cluster("fr-0", "fr", vector={"fr0": 1.0}, descriptor_vector={"1": 1.0}),
            make_cluster("fr-1", "fr", vector={"fr1": 1.0}, descriptor_vector={"1": 1.0, "2": 1.0}),
            make_cluster("fr-2", "fr", vector={"fr2": 1.0}, descriptor_vector={"3": 1.0}),
        ]
        links = link_crosslingual({"en": en, "fr": fr}, threshold=0.3)
        pairs = {(l.from_cluster, l.to_cluster): l.score for l in links}
        # en-0 best: fr-0 at 0.7; en-1 best: fr-1 at 0.7/sqrt(2);
        # fr-1 best: tie between en-0 and en-1 at 0.7/sqrt(2), smaller id wins;
        # fr-2 matches nothing above threshold
        assert pairs[("en-0", "fr-0")] == pytest.approx(0.7)
        assert pairs[("en-1", "fr-1")] == pytest.approx(0.7 / 2 ** 0.5)
        assert ("en-0", "fr-1") in pairs  # fr-1's own best match, tie-broken
        assert not any("fr-2" in pair for pair in pairs)

    def test_one_language_no_links(self):
        assert link_crosslingual({"en": [make_cluster("a")]}) == []

    def test_stored_once_per_unordered_pair(self):
        groups = {
            "en": [make_cluster("en-1", "en", descriptor_vector={"1": 1.0})],
            "fr": [make_cluster("fr-1", "fr", descriptor_vector={"1": 1.0})],
            "de": [make_cluster("de-1", "de", descriptor_vector={"1": 1.0})],
        }
        links = link_crosslingual(groups, threshold=0.3)
        seen = set()
        for l in links:
            key = frozenset((l.from_cluster, l.to_cluster))
            assert key not in seen
            seen.add(key)
        assert len(links) == 3  # en-fr, en-de, fr-de


class TestWeightedGrid:
    def test_exact_linear_combination_with_stubbed_cosine(self, monkeypatch):
        # stub the sub-similarity computation itself: the combined score
        # must equal 0.7a + 0.2b + 0.1c to 1e-12 across a randomized grid
        import newsmill.link as link_module

        rng = random.Random(20050428)
        for _ in range(500):
            a_sim, b_sim, c_sim = rng.random(), rng.random(), rng.random()
            stub_values = {"desc": a_sim, "geo": b_sim, "kw": c_sim}

            def stub_cosine(u, v):
                return stub_values[next(iter(u))]

            monkeypatch.setattr(link_module, "cosine", stub_cosine)
            a = make_cluster("a", "en", vector={"kw": 1.0},
                             descriptor_vector={"desc": 1.0}, country_vector={"geo": 1.0})
            b = make_cluster("b", "fr", vector={"kw": 1.0},
                             descriptor_vector={"desc": 1.0}, country_vector={"geo": 1.0})
            got = crosslingual_similarity(a, b)
            expected = 0.7 * a_sim + 0.2 * b_sim + 0.1 * c_sim
            assert abs(got - expected) < 1e-12

    def test_linear_combination_with_geometric_sub_similarities(self):
        # realize the stub values as actual unit vectors; cosine introduces
        # only last-ulp rounding so 1e-9 holds
        rng = random.Random(20050429)

        def unit_pair(sim, key_main, key_other):
            if sim == 0.0:
                return {key_other: 1.0}
            vec = {key_main: sim}
            ortho = (1 - sim * sim) ** 0.5
            if ortho > 0:
                vec[key_other] = ortho
            return vec

        for _ in range(200):
            a_sim, b_sim, c_sim = rng.random(), rng.random(), rng.random()
            a = make_cluster("a", "en", vector={"k": 1.0},
                             descriptor_vector={"1": 1.0}, country_vector={"FR": 1.0})
            b = make_cluster(
                "b", "fr",
                vector=unit_pair(c_sim, "k", "m"),
                descriptor_vector=unit_pair(a_sim, "1", "2"),
                country_vector=unit_pair(b_sim, "FR", "US"),
            )
            got = crosslingual_similarity(a, b)
            expected = 0.7 * a_sim + 0.2 * b_sim + 0.1 * c_sim
            assert abs(got - expected) < 1e-9
