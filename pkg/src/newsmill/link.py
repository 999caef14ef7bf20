"""Cluster linking over time and across languages.

Temporal links connect a day's clusters to similar same-language clusters
of previous days.  Cross-lingual links combine three ingredients with
fixed relative impact: descriptor vectors (70%), country vectors (20%)
and the raw keyword vectors without the country enhancement (10%).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cluster import Cluster
from .vectors import cosine

DEFAULT_TEMPORAL_THRESHOLD = 0.5
DEFAULT_CROSSLINGUAL_THRESHOLD = 0.3
CROSSLINGUAL_WEIGHTS = (0.7, 0.2, 0.1)


@dataclass(frozen=True)
class ClusterLink:
    from_cluster: str
    to_cluster: str
    kind: str            # "temporal" | "crosslingual"
    score: float


def track_over_time(
    today: list[Cluster],
    history: list[Cluster],
    threshold: float = DEFAULT_TEMPORAL_THRESHOLD,
    max_links_per_day: int = 1,
) -> list[ClusterLink]:
    """Link each of today's clusters to its best matches on each past day.

    All clusters must share one language; a link is emitted when the
    cosine of the cluster vectors reaches the threshold, keeping at most
    ``max_links_per_day`` best matches per past day.
    """
    languages = {c.language for c in today} | {c.language for c in history}
    if len(languages) > 1:
        raise ValueError(f"temporal tracking needs one language, got {sorted(languages)}")
    by_day: dict[str, list[Cluster]] = {}
    for c in history:
        by_day.setdefault(c.date, []).append(c)

    links: list[ClusterLink] = []
    for cluster in sorted(today, key=lambda c: c.cluster_id):
        for date in sorted(by_day):
            if date >= cluster.date:
                continue
            scored = [
                (cosine(cluster.vector, past.vector), past)
                for past in by_day[date]
            ]
            qualifying = sorted(
                ((s, p) for s, p in scored if s >= threshold),
                key=lambda sp: (-sp[0], sp[1].cluster_id),
            )
            for score, past in qualifying[:max_links_per_day]:
                links.append(
                    ClusterLink(cluster.cluster_id, past.cluster_id, "temporal", score)
                )
    return links


def crosslingual_similarity(
    a: Cluster, b: Cluster, weights: tuple[float, float, float] = CROSSLINGUAL_WEIGHTS
) -> float:
    """Weighted cross-lingual similarity of two clusters in different languages.

    weights[0] * cosine of descriptor vectors
    + weights[1] * cosine of country vectors
    + weights[2] * cosine of keyword vectors (country scores excluded).
    """
    if a.language == b.language:
        raise ValueError("cross-lingual similarity needs clusters in different languages")
    w_desc, w_geo, w_kw = weights
    return (
        w_desc * cosine(a.descriptor_vector, b.descriptor_vector)
        + w_geo * cosine(a.country_vector, b.country_vector)
        + w_kw * cosine(a.keyword_vector, b.keyword_vector)
    )


def link_crosslingual(
    clusters_by_language: dict[str, list[Cluster]],
    threshold: float = DEFAULT_CROSSLINGUAL_THRESHOLD,
    weights: tuple[float, float, float] = CROSSLINGUAL_WEIGHTS,
) -> list[ClusterLink]:
    """Best-match links between same-day clusters of different languages.

    For every language pair each cluster may link to its single best match
    in the other language when the similarity reaches the threshold; each
    unordered cluster pair is stored once, from the lexicographically
    smaller cluster_id.
    """
    languages = sorted(clusters_by_language)
    if len(languages) < 2:
        return []
    pairs: dict[tuple[str, str], float] = {}
    for i, lang_a in enumerate(languages):
        for lang_b in languages[i + 1 :]:
            for side_a, side_b in (
                (clusters_by_language[lang_a], clusters_by_language[lang_b]),
                (clusters_by_language[lang_b], clusters_by_language[lang_a]),
            ):
                for cluster in side_a:
                    best: tuple[float, str] | None = None
                    for other in side_b:
                        score = crosslingual_similarity(cluster, other, weights)
                        candidate = (score, other.cluster_id)
                        if score >= threshold and (
                            best is None or (-candidate[0], candidate[1]) < (-best[0], best[1])
                        ):
                            best = candidate
                    if best is not None:
                        key = tuple(sorted((cluster.cluster_id, best[1])))
                        prior = pairs.get(key)
                        if prior is None or best[0] > prior:
                            pairs[key] = best[0]
    return [
        ClusterLink(from_cluster=a, to_cluster=b, kind="crosslingual", score=score)
        for (a, b), score in sorted(pairs.items())
    ]
