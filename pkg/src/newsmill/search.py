"""Search across entities, keywords and countries.

Exact matches (variant string, keyword, ISO code) come first; only when no
entity variant matches exactly does the approximate name matcher kick in,
ranking stored variants by n-gram cosine against the query.
"""

from __future__ import annotations

from .identity import name_similarity
from .store import Store

DEFAULT_FUZZY_THRESHOLD = 0.5


def run_search(store: Store, query: str, fuzzy_threshold: float = DEFAULT_FUZZY_THRESHOLD) -> dict:
    query = query.strip()
    if not query:
        return {"query": query, "entities": [], "keywords": [], "countries": []}

    entities: list[dict] = []
    exact_ids = store.find_entity_by_variant(query)
    for entity_id in exact_ids:
        entities.append({
            "entity_id": entity_id,
            "canonical": store._canonical(entity_id),
            "matched_variant": query,
            "similarity": 1.0,
            "fuzzy": False,
        })

    if not exact_ids:
        scored: dict[int, tuple[float, str]] = {}
        con = store._conn
        for row in con.execute(
            "SELECT entity_id, variant FROM entity_variants ORDER BY entity_id, variant"
        ):
            try:
                sim = name_similarity(query, row["variant"])
            except ValueError:
                continue
            if sim < fuzzy_threshold:
                continue
            best = scored.get(row["entity_id"])
            if best is None or sim > best[0]:
                scored[row["entity_id"]] = (sim, row["variant"])
        ranked = sorted(scored.items(), key=lambda kv: (-kv[1][0], kv[0]))
        for entity_id, (sim, variant) in ranked:
            entities.append({
                "entity_id": entity_id,
                "canonical": store._canonical(entity_id),
                "matched_variant": variant,
                "similarity": sim,
                "fuzzy": True,
            })

    keywords = []
    for language in store.keyword_languages(query.lower()):
        clusters = store.pivot_keyword(query.lower(), language, limit=1)
        if clusters:
            keywords.append({"keyword": query.lower(), "language": language})

    countries = []
    iso = query.upper()
    if len(iso) == 2 and iso.isalpha() and store.pivot_country(iso, limit=1):
        countries.append({"iso": iso})

    return {"query": query, "entities": entities, "keywords": keywords, "countries": countries}
