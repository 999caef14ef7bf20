"""Embedded relational store for all pipeline outputs.

Single SQLite file; one writer (the pipeline) at a time, any number of
readers.  A (language, date) batch is replaced inside one transaction so
it is either fully visible or absent.  All read queries carry explicit
ORDER BY clauses so API responses are pure functions of store state.
"""

from __future__ import annotations

import json
import sqlite3
import threading
from dataclasses import dataclass
from typing import Iterable

from .cluster import Cluster
from .corpus import Document
from .identity import IdentityState
from .lexicon import Mention
from .link import ClusterLink

SCHEMA_VERSION = 1

_SCHEMA = """
CREATE TABLE IF NOT EXISTS schema_meta (key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS batches (
    language TEXT NOT NULL, date TEXT NOT NULL,
    doc_count INTEGER NOT NULL, cluster_count INTEGER NOT NULL,
    PRIMARY KEY (language, date));
CREATE TABLE IF NOT EXISTS documents (
    doc_id TEXT PRIMARY KEY, language TEXT NOT NULL, date TEXT NOT NULL,
    source TEXT NOT NULL, url TEXT NOT NULL, title TEXT NOT NULL,
    body TEXT NOT NULL, published_at TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS mentions (
    doc_id TEXT NOT NULL, start INTEGER NOT NULL, end INTEGER NOT NULL,
    surface TEXT NOT NULL, entry_id INTEGER NOT NULL, kind TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS doc_titles (
    doc_id TEXT NOT NULL, language TEXT NOT NULL,
    name TEXT NOT NULL, title TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS clusters (
    cluster_id TEXT PRIMARY KEY, language TEXT NOT NULL, date TEXT NOT NULL,
    cohesiveness REAL NOT NULL, title TEXT NOT NULL, title_doc_id TEXT NOT NULL,
    vector TEXT NOT NULL, country_vector TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS cluster_members (
    cluster_id TEXT NOT NULL, doc_id TEXT NOT NULL, position INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS cluster_entities (
    cluster_id TEXT NOT NULL, name TEXT NOT NULL, kind TEXT NOT NULL, count INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS cluster_keywords (
    cluster_id TEXT NOT NULL, keyword TEXT NOT NULL, weight REAL NOT NULL);
CREATE TABLE IF NOT EXISTS cluster_countries (
    cluster_id TEXT NOT NULL, iso TEXT NOT NULL, weight REAL NOT NULL);
CREATE TABLE IF NOT EXISTS term_hits (
    cluster_id TEXT NOT NULL, term TEXT NOT NULL, freq INTEGER NOT NULL, rank INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS cluster_places (
    cluster_id TEXT NOT NULL, entry_id INTEGER NOT NULL, name TEXT NOT NULL,
    lat REAL NOT NULL, lon REAL NOT NULL, count INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS descriptor_vectors (
    cluster_id TEXT NOT NULL, descriptor_id TEXT NOT NULL, weight REAL NOT NULL, rank INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS cluster_links (
    from_cluster TEXT NOT NULL, to_cluster TEXT NOT NULL, kind TEXT NOT NULL, score REAL NOT NULL);
CREATE TABLE IF NOT EXISTS entities (
    entity_id INTEGER PRIMARY KEY, canonical TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS entity_variants (
    entity_id INTEGER NOT NULL, variant TEXT NOT NULL, count INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS entity_titles (
    entity_id INTEGER NOT NULL, language TEXT NOT NULL, title TEXT NOT NULL, count INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS entity_keywords (
    entity_id INTEGER NOT NULL, keyword TEXT NOT NULL, weight REAL NOT NULL);
CREATE TABLE IF NOT EXISTS entity_countries (
    entity_id INTEGER NOT NULL, iso TEXT NOT NULL, weight REAL NOT NULL);
CREATE TABLE IF NOT EXISTS relation_edges (
    entity_a INTEGER NOT NULL, entity_b INTEGER NOT NULL,
    co_cluster_count INTEGER NOT NULL, weight REAL NOT NULL);
CREATE INDEX IF NOT EXISTS idx_documents_batch ON documents (language, date);
CREATE INDEX IF NOT EXISTS idx_mentions_doc ON mentions (doc_id);
CREATE INDEX IF NOT EXISTS idx_clusters_batch ON clusters (language, date);
CREATE INDEX IF NOT EXISTS idx_members_cluster ON cluster_members (cluster_id);
CREATE INDEX IF NOT EXISTS idx_members_doc ON cluster_members (doc_id);
CREATE INDEX IF NOT EXISTS idx_centities_name ON cluster_entities (name);
CREATE INDEX IF NOT EXISTS idx_ckeywords_kw ON cluster_keywords (keyword);
CREATE INDEX IF NOT EXISTS idx_ccountries_iso ON cluster_countries (iso);
CREATE INDEX IF NOT EXISTS idx_places_entry ON cluster_places (entry_id);
CREATE INDEX IF NOT EXISTS idx_links_from ON cluster_links (from_cluster);
CREATE INDEX IF NOT EXISTS idx_links_to ON cluster_links (to_cluster);
CREATE INDEX IF NOT EXISTS idx_variants_variant ON entity_variants (variant);
CREATE INDEX IF NOT EXISTS idx_edges_a ON relation_edges (entity_a);
CREATE INDEX IF NOT EXISTS idx_edges_b ON relation_edges (entity_b);
"""


class NotFoundError(LookupError):
    pass


def _dump_vector(vec: dict[str, float]) -> str:
    return json.dumps(vec, sort_keys=True, ensure_ascii=False)


@dataclass
class BatchInput:
    """Everything the pipeline produced for one (language, date) batch."""

    language: str
    date: str
    documents: list[Document]
    mentions: dict[str, list[Mention]]
    titles: dict[str, list[tuple[str, str]]]   # doc_id -> [(name, title)]
    clusters: list[Cluster]


class Store:
    """One writer at a time; readers open per-thread connections."""

    def __init__(self, path: str):
        self.path = path
        self._local = threading.local()
        con = self._conn
        con.executescript(_SCHEMA)
        con.execute(
            "INSERT OR IGNORE INTO schema_meta (key, value) VALUES ('version', ?)",
            (str(SCHEMA_VERSION),),
        )
        con.commit()

    @property
    def _conn(self) -> sqlite3.Connection:
        con = getattr(self._local, "con", None)
        if con is None:
            con = sqlite3.connect(self.path)
            con.row_factory = sqlite3.Row
            self._local.con = con
        return con

    def close(self) -> None:
        con = getattr(self._local, "con", None)
        if con is not None:
            con.close()
            self._local.con = None

    def __enter__(self) -> "Store":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # --- writes -------------------------------------------------------------

    def replace_batch(self, batch: BatchInput, place_names: dict[int, str] | None = None) -> None:
        """Atomically swap in one (language, date) batch."""
        con = self._conn
        lang, date = batch.language, batch.date
        place_names = place_names or {}
        with con:
            old_docs = [r["doc_id"] for r in con.execute(
                "SELECT doc_id FROM documents WHERE language = ? AND date = ?", (lang, date))]
            old_clusters = [r["cluster_id"] for r in con.execute(
                "SELECT cluster_id FROM clusters WHERE language = ? AND date = ?", (lang, date))]
            if old_docs:
                marks = ",".join("?" * len(old_docs))
                con.execute(f"DELETE FROM mentions WHERE doc_id IN ({marks})", old_docs)
                con.execute(f"DELETE FROM doc_titles WHERE doc_id IN ({marks})", old_docs)
            if old_clusters:
                marks = ",".join("?" * len(old_clusters))
                for table in (
                    "cluster_members", "cluster_entities", "cluster_keywords",
                    "cluster_countries", "term_hits", "cluster_places", "descriptor_vectors",
                ):
                    con.execute(f"DELETE FROM {table} WHERE cluster_id IN ({marks})", old_clusters)
            con.execute("DELETE FROM documents WHERE language = ? AND date = ?", (lang, date))
            con.execute("DELETE FROM clusters WHERE language = ? AND date = ?", (lang, date))
            con.execute("DELETE FROM batches WHERE language = ? AND date = ?", (lang, date))

            for doc in batch.documents:
                con.execute(
                    "INSERT INTO documents VALUES (?,?,?,?,?,?,?,?)",
                    (doc.doc_id, doc.language, doc.date, doc.source, doc.url,
                     doc.title, doc.body, doc.published_at.isoformat()),
                )
                for m in batch.mentions.get(doc.doc_id, []):
                    con.execute(
                        "INSERT INTO mentions VALUES (?,?,?,?,?,?)",
                        (doc.doc_id, m.start, m.end, m.surface, m.entry_id, m.kind),
                    )
                for name, title in batch.titles.get(doc.doc_id, []):
                    con.execute(
                        "INSERT INTO doc_titles VALUES (?,?,?,?)",
                        (doc.doc_id, doc.language, name, title),
                    )
            for cluster in batch.clusters:
                con.execute(
                    "INSERT INTO clusters VALUES (?,?,?,?,?,?,?,?)",
                    (cluster.cluster_id, cluster.language, cluster.date,
                     cluster.cohesiveness, cluster.title, cluster.title_doc_id,
                     _dump_vector(cluster.vector), _dump_vector(cluster.country_vector)),
                )
                for position, doc_id in enumerate(cluster.doc_ids):
                    con.execute(
                        "INSERT INTO cluster_members VALUES (?,?,?)",
                        (cluster.cluster_id, doc_id, position),
                    )
                for name in sorted(cluster.entities):
                    kind, count = cluster.entities[name]
                    con.execute(
                        "INSERT INTO cluster_entities VALUES (?,?,?,?)",
                        (cluster.cluster_id, name, kind, count),
                    )
                for keyword, weight in sorted(cluster.keyword_vector.items()):
                    con.execute(
                        "INSERT INTO cluster_keywords VALUES (?,?,?)",
                        (cluster.cluster_id, keyword, weight),
                    )
                for iso, weight in sorted(cluster.country_vector.items()):
                    con.execute(
                        "INSERT INTO cluster_countries VALUES (?,?,?)",
                        (cluster.cluster_id, iso, weight),
                    )
                for rank, (term, freq) in enumerate(cluster.term_hits):
                    con.execute(
                        "INSERT INTO term_hits VALUES (?,?,?,?)",
                        (cluster.cluster_id, term, freq, rank),
                    )
                for entry_id, lat, lon, count in cluster.places:
                    con.execute(
                        "INSERT INTO cluster_places VALUES (?,?,?,?,?,?)",
                        (cluster.cluster_id, entry_id, place_names.get(entry_id, ""), lat, lon, count),
                    )
                for rank, (descriptor_id, weight) in enumerate(
                    sorted(cluster.descriptor_vector.items(), key=lambda kv: (-kv[1], kv[0]))
                ):
                    con.execute(
                        "INSERT INTO descriptor_vectors VALUES (?,?,?,?)",
                        (cluster.cluster_id, descriptor_id, weight, rank),
                    )
            con.execute(
                "INSERT INTO batches VALUES (?,?,?,?)",
                (lang, date, len(batch.documents), len(batch.clusters)),
            )

    def replace_links_for_date(self, date: str, links: Iterable[ClusterLink]) -> None:
        """Rewrite all links originating from the given date's clusters."""
        con = self._conn
        with con:
            con.execute(
                """DELETE FROM cluster_links WHERE from_cluster IN
                   (SELECT cluster_id FROM clusters WHERE date = ?)""",
                (date,),
            )
            con.execute(
                """DELETE FROM cluster_links WHERE kind = 'crosslingual' AND to_cluster IN
                   (SELECT cluster_id FROM clusters WHERE date = ?)""",
                (date,),
            )
            for link in sorted(links, key=lambda l: (l.kind, l.from_cluster, l.to_cluster)):
                con.execute(
                    "INSERT INTO cluster_links VALUES (?,?,?,?)",
                    (link.from_cluster, link.to_cluster, link.kind, link.score),
                )

    def replace_entities(self, state: IdentityState) -> None:
        """Rebuild all entity tables from a replayed identity state."""
        con = self._conn
        with con:
            for table in ("entities", "entity_variants", "entity_titles",
                          "entity_keywords", "entity_countries", "relation_edges"):
                con.execute(f"DELETE FROM {table}")
            for entity_id in sorted(state.groups):
                group = state.groups[entity_id]
                con.execute("INSERT INTO entities VALUES (?,?)", (entity_id, group.canonical))
                for variant in sorted(group.variants):
                    con.execute(
                        "INSERT INTO entity_variants VALUES (?,?,?)",
                        (entity_id, variant, group.variant_counts[variant]),
                    )
                for language in sorted(group.titles):
                    for title in sorted(group.titles[language]):
                        con.execute(
                            "INSERT INTO entity_titles VALUES (?,?,?,?)",
                            (entity_id, language, title, group.titles[language][title]),
                        )
                for keyword, weight in sorted(state.entity_keywords.get(entity_id, {}).items()):
                    con.execute(
                        "INSERT INTO entity_keywords VALUES (?,?,?)", (entity_id, keyword, weight)
                    )
                for iso, weight in sorted(state.entity_countries.get(entity_id, {}).items()):
                    con.execute(
                        "INSERT INTO entity_countries VALUES (?,?,?)", (entity_id, iso, weight)
                    )
            for (a, b), count in sorted(state.edges.items()):
                weight = count / ((state.degree(a) * state.degree(b)) ** 0.5)
                con.execute("INSERT INTO relation_edges VALUES (?,?,?,?)", (a, b, count, weight))

    # --- reads ----------------------------------------------------------------

    def has_batch(self, date: str) -> bool:
        row = self._conn.execute(
            "SELECT COUNT(*) AS n FROM batches WHERE date = ?", (date,)
        ).fetchone()
        return row["n"] > 0

    def batch_dates(self) -> list[str]:
        return [r["date"] for r in self._conn.execute(
            "SELECT DISTINCT date FROM batches ORDER BY date")]

    def load_documents(self, doc_ids: list[str]) -> dict[str, Document]:
        if not doc_ids:
            return {}
        marks = ",".join("?" * len(doc_ids))
        rows = self._conn.execute(
            f"SELECT * FROM documents WHERE doc_id IN ({marks})", doc_ids
        ).fetchall()
        return {
            r["doc_id"]: Document(
                doc_id=r["doc_id"], language=r["language"], source=r["source"],
                url=r["url"], title=r["title"], body=r["body"],
                published_at=_ts(r["published_at"]),
            )
            for r in rows
        }

    def load_clusters(self, language: str, dates: list[str]) -> list[Cluster]:
        """Clusters for temporal tracking: vector data only, ordered by id."""
        if not dates:
            return []
        marks = ",".join("?" * len(dates))
        rows = self._conn.execute(
            f"""SELECT * FROM clusters WHERE language = ? AND date IN ({marks})
                ORDER BY cluster_id""",
            [language] + dates,
        ).fetchall()
        return [self._row_to_cluster(r) for r in rows]

    def _row_to_cluster(self, r: sqlite3.Row) -> Cluster:
        cluster_id = r["cluster_id"]
        members = [m["doc_id"] for m in self._conn.execute(
            "SELECT doc_id FROM cluster_members WHERE cluster_id = ? ORDER BY position",
            (cluster_id,))]
        descriptors = {
            d["descriptor_id"]: d["weight"] for d in self._conn.execute(
                "SELECT descriptor_id, weight FROM descriptor_vectors WHERE cluster_id = ? ORDER BY rank",
                (cluster_id,))
        }
        return Cluster(
            cluster_id=cluster_id, language=r["language"], date=r["date"],
            doc_ids=members, vector=json.loads(r["vector"]),
            cohesiveness=r["cohesiveness"], title=r["title"], title_doc_id=r["title_doc_id"],
            descriptor_vector=descriptors, country_vector=json.loads(r["country_vector"]),
        )

    def cluster_summaries(self, date: str | None, language: str | None,
                          limit: int = 50, offset: int = 0) -> list[dict]:
        where = []
        args: list[object] = []
        if date:
            where.append("date = ?")
            args.append(date)
        if language:
            where.append("language = ?")
            args.append(language)
        clause = ("WHERE " + " AND ".join(where)) if where else ""
        rows = self._conn.execute(
            f"""SELECT cluster_id, language, date, cohesiveness, title,
                       (SELECT COUNT(*) FROM cluster_members m WHERE m.cluster_id = c.cluster_id) AS size
                FROM clusters c {clause}
                ORDER BY date, language, cluster_id LIMIT ? OFFSET ?""",
            args + [limit, offset],
        ).fetchall()
        return [dict(r) for r in rows]

    def get_cluster_page(self, cluster_id: str, keyword_limit: int = 10) -> dict:
        """The full cluster view: members, keywords, entities, terms, places, links."""
        r = self._conn.execute(
            "SELECT * FROM clusters WHERE cluster_id = ?", (cluster_id,)
        ).fetchone()
        if r is None:
            raise NotFoundError(f"unknown cluster {cluster_id}")
        con = self._conn
        members = [
            {
                "doc_id": m["doc_id"], "title": m["title"], "url": m["url"],
                "source": m["source"], "published_at": m["published_at"],
            }
            for m in con.execute(
                """SELECT d.doc_id, d.title, d.url, d.source, d.published_at
                   FROM cluster_members cm JOIN documents d ON d.doc_id = cm.doc_id
                   WHERE cm.cluster_id = ? ORDER BY cm.position""",
                (cluster_id,))
        ]
        keywords = [
            {"keyword": k["keyword"], "weight": k["weight"]}
            for k in con.execute(
                """SELECT keyword, weight FROM cluster_keywords WHERE cluster_id = ?
                   ORDER BY weight DESC, keyword LIMIT ?""",
                (cluster_id, keyword_limit))
        ]
        entities = [
            {"name": e["name"], "kind": e["kind"], "count": e["count"],
             "entity_id": e["entity_id"]}
            for e in con.execute(
                """SELECT ce.name, ce.kind, ce.count,
                          (SELECT ev.entity_id FROM entity_variants ev
                           WHERE ev.variant = ce.name ORDER BY ev.entity_id LIMIT 1) AS entity_id
                   FROM cluster_entities ce WHERE ce.cluster_id = ?
                   ORDER BY ce.count DESC, ce.name""",
                (cluster_id,))
        ]
        terms = [
            {"term": t["term"], "frequency": t["freq"]}
            for t in con.execute(
                "SELECT term, freq FROM term_hits WHERE cluster_id = ? ORDER BY rank",
                (cluster_id,))
        ]
        places = [
            {"entry_id": p["entry_id"], "name": p["name"], "lat": p["lat"],
             "lon": p["lon"], "count": p["count"]}
            for p in con.execute(
                """SELECT entry_id, name, lat, lon, count FROM cluster_places
                   WHERE cluster_id = ? ORDER BY count DESC, entry_id""",
                (cluster_id,))
        ]
        countries = [
            {"iso": c["iso"], "weight": c["weight"]}
            for c in con.execute(
                """SELECT iso, weight FROM cluster_countries WHERE cluster_id = ?
                   ORDER BY weight DESC, iso""",
                (cluster_id,))
        ]
        descriptors = [
            {"descriptor_id": d["descriptor_id"], "weight": d["weight"]}
            for d in con.execute(
                "SELECT descriptor_id, weight FROM descriptor_vectors WHERE cluster_id = ? ORDER BY rank",
                (cluster_id,))
        ]
        links = {"temporal": [], "crosslingual": []}
        link_rows = con.execute(
            """SELECT from_cluster, to_cluster, kind, score FROM cluster_links
               WHERE from_cluster = ? OR to_cluster = ?
               ORDER BY kind, score DESC, from_cluster, to_cluster""",
            (cluster_id, cluster_id)).fetchall()
        for row in link_rows:
            other_id = row["to_cluster"] if row["from_cluster"] == cluster_id else row["from_cluster"]
            other = con.execute(
                "SELECT cluster_id, language, date, title FROM clusters WHERE cluster_id = ?",
                (other_id,)).fetchone()
            if other is None:
                continue
            links[row["kind"]].append({
                "cluster_id": other["cluster_id"], "language": other["language"],
                "date": other["date"], "title": other["title"], "score": row["score"],
            })
        return {
            "cluster_id": cluster_id, "language": r["language"], "date": r["date"],
            "cohesiveness": r["cohesiveness"], "title": r["title"],
            "title_doc_id": r["title_doc_id"], "members": members,
            "keywords": keywords, "entities": entities, "term_hits": terms,
            "places": places, "countries": countries, "descriptors": descriptors,
            "links": links,
        }

    def get_entity_page(self, entity_id: int, cluster_limit: int = 20) -> dict:
        con = self._conn
        row = con.execute(
            "SELECT entity_id, canonical FROM entities WHERE entity_id = ?", (entity_id,)
        ).fetchone()
        if row is None:
            raise NotFoundError(f"unknown entity {entity_id}")
        variants = [
            {"variant": v["variant"], "count": v["count"]}
            for v in con.execute(
                """SELECT variant, count FROM entity_variants WHERE entity_id = ?
                   ORDER BY count DESC, variant""", (entity_id,))
        ]
        titles: dict[str, list[dict]] = {}
        for t in con.execute(
            """SELECT language, title, count FROM entity_titles WHERE entity_id = ?
               ORDER BY language, count DESC, title""", (entity_id,)):
            titles.setdefault(t["language"], []).append(
                {"title": t["title"], "count": t["count"]})
        clusters = [
            dict(c)
            for c in con.execute(
                """SELECT DISTINCT c.cluster_id, c.language, c.date, c.title
                   FROM entity_variants ev
                   JOIN cluster_entities ce ON ce.name = ev.variant
                   JOIN clusters c ON c.cluster_id = ce.cluster_id
                   WHERE ev.entity_id = ?
                   ORDER BY c.date DESC, c.language, c.cluster_id LIMIT ?""",
                (entity_id, cluster_limit))
        ]
        keywords = [
            {"keyword": k["keyword"], "weight": k["weight"]}
            for k in con.execute(
                """SELECT keyword, weight FROM entity_keywords WHERE entity_id = ?
                   ORDER BY weight DESC, keyword LIMIT 10""", (entity_id,))
        ]
        countries = [
            {"iso": c["iso"], "weight": c["weight"]}
            for c in con.execute(
                """SELECT iso, weight FROM entity_countries WHERE entity_id = ?
                   ORDER BY weight DESC, iso LIMIT 10""", (entity_id,))
        ]
        associations = [
            {
                "entity_id": other_id,
                "name": self._canonical(other_id),
                "co_cluster_count": count,
                "weight": weight,
            }
            for other_id, count, weight in self.weighted_associations(entity_id)
        ]
        return {
            "entity_id": entity_id, "canonical": row["canonical"],
            "variants": variants, "titles": titles, "clusters": clusters,
            "keywords": keywords, "countries": countries,
            "associations": associations,
        }

    def _canonical(self, entity_id: int) -> str:
        row = self._conn.execute(
            "SELECT canonical FROM entities WHERE entity_id = ?", (entity_id,)).fetchone()
        return row["canonical"] if row else str(entity_id)

    def weighted_associations(self, entity_id: int) -> list[tuple[int, int, float]]:
        rows = self._conn.execute(
            """SELECT entity_a, entity_b, co_cluster_count, weight FROM relation_edges
               WHERE entity_a = ? OR entity_b = ?""", (entity_id, entity_id)).fetchall()
        out = [
            (r["entity_b"] if r["entity_a"] == entity_id else r["entity_a"],
             r["co_cluster_count"], r["weight"])
            for r in rows
        ]
        out.sort(key=lambda r: (-r[2], -r[1], r[0]))
        return out

    def entity_canonicals(self) -> list[tuple[int, str]]:
        return [
            (r["entity_id"], r["canonical"])
            for r in self._conn.execute(
                "SELECT entity_id, canonical FROM entities ORDER BY entity_id")
        ]

    def find_entity_by_variant(self, name: str) -> list[int]:
        return [
            r["entity_id"] for r in self._conn.execute(
                "SELECT DISTINCT entity_id FROM entity_variants WHERE variant = ? ORDER BY entity_id",
                (name,))
        ]

    def keyword_languages(self, keyword: str) -> list[str]:
        return [
            r["language"] for r in self._conn.execute(
                """SELECT DISTINCT c.language FROM cluster_keywords ck
                   JOIN clusters c ON c.cluster_id = ck.cluster_id
                   WHERE ck.keyword = ? ORDER BY c.language""", (keyword,))
        ]

    def pivot_keyword(self, keyword: str, language: str,
                      limit: int = 50, offset: int = 0) -> list[dict]:
        rows = self._conn.execute(
            """SELECT c.cluster_id, c.language, c.date, c.title, ck.weight
               FROM cluster_keywords ck JOIN clusters c ON c.cluster_id = ck.cluster_id
               WHERE ck.keyword = ? AND c.language = ?
               ORDER BY c.date DESC, c.cluster_id LIMIT ? OFFSET ?""",
            (keyword, language, limit, offset)).fetchall()
        return [dict(r) for r in rows]

    def pivot_place(self, entry_id: int, limit: int = 50, offset: int = 0) -> list[dict]:
        rows = self._conn.execute(
            """SELECT c.cluster_id, c.language, c.date, c.title, p.count
               FROM cluster_places p JOIN clusters c ON c.cluster_id = p.cluster_id
               WHERE p.entry_id = ?
               ORDER BY c.date DESC, c.language, c.cluster_id LIMIT ? OFFSET ?""",
            (entry_id, limit, offset)).fetchall()
        return [dict(r) for r in rows]

    def pivot_country(self, iso: str, limit: int = 50, offset: int = 0) -> list[dict]:
        rows = self._conn.execute(
            """SELECT c.cluster_id, c.language, c.date, c.title, cc.weight
               FROM cluster_countries cc JOIN clusters c ON c.cluster_id = cc.cluster_id
               WHERE cc.iso = ?
               ORDER BY c.date DESC, c.language, c.cluster_id LIMIT ? OFFSET ?""",
            (iso, limit, offset)).fetchall()
        return [dict(r) for r in rows]

    def stats(self) -> dict:
        con = self._conn
        count = lambda table: con.execute(f"SELECT COUNT(*) AS n FROM {table}").fetchone()["n"]
        languages = [r["language"] for r in con.execute(
            "SELECT DISTINCT language FROM batches ORDER BY language")]
        return {
            "documents": count("documents"),
            "clusters": count("clusters"),
            "entities": count("entities"),
            "links": count("cluster_links"),
            "relation_edges": count("relation_edges"),
            "languages": languages,
            "dates": self.batch_dates(),
        }

    def all_cluster_rows_for_replay(self) -> list[dict]:
        """Per-cluster data needed to rebuild identity state, in replay order."""
        out = []
        for r in self._conn.execute(
            "SELECT cluster_id, language, date FROM clusters ORDER BY date, language, cluster_id"
        ):
            cluster_id = r["cluster_id"]
            names = [
                (e["name"], e["kind"], e["count"]) for e in self._conn.execute(
                    """SELECT name, kind, count FROM cluster_entities WHERE cluster_id = ?
                       ORDER BY name""", (cluster_id,))
            ]
            keywords = {
                k["keyword"]: k["weight"] for k in self._conn.execute(
                    """SELECT keyword, weight FROM cluster_keywords WHERE cluster_id = ?
                       ORDER BY weight DESC, keyword LIMIT 10""", (cluster_id,))
            }
            countries = {
                c["iso"]: c["weight"] for c in self._conn.execute(
                    "SELECT iso, weight FROM cluster_countries WHERE cluster_id = ?", (cluster_id,))
            }
            titles = [
                (t["language"], t["name"], t["title"]) for t in self._conn.execute(
                    """SELECT dt.language, dt.name, dt.title
                       FROM doc_titles dt JOIN cluster_members cm ON cm.doc_id = dt.doc_id
                       WHERE cm.cluster_id = ? ORDER BY dt.name, dt.title""", (cluster_id,))
            ]
            out.append({
                "cluster_id": cluster_id, "language": r["language"], "date": r["date"],
                "names": names, "keywords": keywords, "countries": countries,
                "titles": titles,
            })
        return out


def _ts(value: str):
    from .corpus import _parse_timestamp

    return _parse_timestamp(value)
