"""Daily snapshot export: XML files with a JSON mirror.

Per date three documents are written, each as ``<name>-<date>.xml`` plus a
``.json`` mirror: clusters (full cluster representations including member
documents), links, and the entity records touched by that date's
clusters.  The JSON mirror carries the raw vectors so a snapshot can be
re-imported into a fresh store and reproduce identical API responses.

The XML structure is versioned and documented in docs/snapshot-schema.md;
:func:`validate_snapshot_xml` checks a document against that schema.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from pathlib import Path

from .store import NotFoundError, Store

SNAPSHOT_VERSION = 1


def _json_dump(payload: dict, path: Path) -> None:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def _xml_dump(root: ET.Element, path: Path) -> None:
    tree = ET.ElementTree(root)
    ET.indent(tree)
    tree.write(path, encoding="utf-8", xml_declaration=True)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write("\n")


def _snapshot_root(kind: str, date: str) -> ET.Element:
    return ET.Element(
        "newsmill-snapshot",
        {"kind": kind, "date": date, "version": str(SNAPSHOT_VERSION)},
    )


def _collect_clusters(store: Store, date: str) -> list[dict]:
    rows = store.cluster_summaries(date=date, language=None, limit=1_000_000)
    out = []
    for row in rows:
        page = store.get_cluster_page(row["cluster_id"], keyword_limit=1_000_000)
        full = store.load_clusters(row["language"], [date])
        vector = next(c.vector for c in full if c.cluster_id == row["cluster_id"])
        page["vector"] = vector
        del page["links"]  # links are their own snapshot document
        out.append(page)
    return out


def _collect_links(store: Store, date: str) -> list[dict]:
    con = store._conn
    rows = con.execute(
        """SELECT l.from_cluster, l.to_cluster, l.kind, l.score FROM cluster_links l
           JOIN clusters c ON c.cluster_id = l.from_cluster
           WHERE c.date = ? ORDER BY l.kind, l.from_cluster, l.to_cluster""",
        (date,),
    ).fetchall()
    return [dict(r) for r in rows]


def _collect_entities(store: Store, date: str) -> list[dict]:
    con = store._conn
    touched = [
        r["entity_id"]
        for r in con.execute(
            """SELECT DISTINCT ev.entity_id
               FROM clusters c
               JOIN cluster_entities ce ON ce.cluster_id = c.cluster_id
               JOIN entity_variants ev ON ev.variant = ce.name
               WHERE c.date = ? ORDER BY ev.entity_id""",
            (date,),
        )
    ]
    out = []
    for entity_id in touched:
        page = store.get_entity_page(entity_id, cluster_limit=1_000_000)
        edges = [
            dict(r)
            for r in con.execute(
                """SELECT entity_a, entity_b, co_cluster_count, weight FROM relation_edges
                   WHERE entity_a = ? OR entity_b = ? ORDER BY entity_a, entity_b""",
                (entity_id, entity_id),
            )
        ]
        out.append(
            {
                "entity_id": entity_id,
                "canonical": page["canonical"],
                "variants": page["variants"],
                "titles": page["titles"],
                "keywords": page["keywords"],
                "countries": page["countries"],
                "edges": edges,
            }
        )
    return out


def export_snapshot(store: Store, date: str, out_dir) -> list[str]:
    """Write the six snapshot files for one date; returns the paths."""
    if not store.has_batch(date):
        raise NotFoundError(f"no batch for date {date}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    clusters = _collect_clusters(store, date)
    links = _collect_links(store, date)
    entities = _collect_entities(store, date)
    written: list[str] = []

    payloads = {
        "clusters": {"date": date, "version": SNAPSHOT_VERSION, "clusters": clusters},
        "links": {"date": date, "version": SNAPSHOT_VERSION, "links": links},
        "entities": {"date": date, "version": SNAPSHOT_VERSION, "entities": entities},
    }
    for kind, payload in payloads.items():
        json_path = out / f"{kind}-{date}.json"
        _json_dump(payload, json_path)
        written.append(str(json_path))

    xml_clusters = _snapshot_root("clusters", date)
    for c in clusters:
        el = ET.SubElement(
            xml_clusters, "cluster",
            {"id": c["cluster_id"], "language": c["language"], "date": c["date"],
             "cohesiveness": repr(c["cohesiveness"])},
        )
        ET.SubElement(el, "title").text = c["title"]
        members = ET.SubElement(el, "members")
        for m in c["members"]:
            member = ET.SubElement(
                members, "member",
                {"doc-id": m["doc_id"], "url": m["url"], "source": m["source"],
                 "published-at": m["published_at"]},
            )
            member.text = m["title"]
        keywords = ET.SubElement(el, "keywords")
        for k in c["keywords"][:10]:
            kw = ET.SubElement(keywords, "keyword", {"weight": repr(k["weight"])})
            kw.text = k["keyword"]
        entities_el = ET.SubElement(el, "entities")
        for e in c["entities"]:
            ent = ET.SubElement(entities_el, "entity", {"kind": e["kind"], "count": str(e["count"])})
            ent.text = e["name"]
        terms = ET.SubElement(el, "term-hits")
        for t in c["term_hits"]:
            term = ET.SubElement(terms, "term", {"frequency": str(t["frequency"])})
            term.text = t["term"]
        places = ET.SubElement(el, "places")
        for p in c["places"]:
            place = ET.SubElement(
                places, "place",
                {"entry-id": str(p["entry_id"]), "lat": repr(p["lat"]),
                 "lon": repr(p["lon"]), "count": str(p["count"])},
            )
            place.text = p["name"]
        countries = ET.SubElement(el, "countries")
        for cc in c["countries"]:
            country = ET.SubElement(countries, "country", {"weight": repr(cc["weight"])})
            country.text = cc["iso"]
        descriptors = ET.SubElement(el, "descriptors")
        for d in c["descriptors"]:
            desc = ET.SubElement(descriptors, "descriptor", {"weight": repr(d["weight"])})
            desc.text = d["descriptor_id"]
    xml_path = out / f"clusters-{date}.xml"
    _xml_dump(xml_clusters, xml_path)
    written.append(str(xml_path))

    xml_links = _snapshot_root("links", date)
    for l in links:
        ET.SubElement(
            xml_links, "link",
            {"from": l["from_cluster"], "to": l["to_cluster"], "kind": l["kind"],
             "score": repr(l["score"])},
        )
    xml_path = out / f"links-{date}.xml"
    _xml_dump(xml_links, xml_path)
    written.append(str(xml_path))

    xml_entities = _snapshot_root("entities", date)
    for e in entities:
        el = ET.SubElement(xml_entities, "entity", {"id": str(e["entity_id"])})
        ET.SubElement(el, "canonical").text = e["canonical"]
        variants = ET.SubElement(el, "variants")
        for v in e["variants"]:
            var = ET.SubElement(variants, "variant", {"count": str(v["count"])})
            var.text = v["variant"]
        titles = ET.SubElement(el, "titles")
        for language in sorted(e["titles"]):
            for t in e["titles"][language]:
                title = ET.SubElement(titles, "title", {"language": language, "count": str(t["count"])})
                title.text = t["title"]
        assoc = ET.SubElement(el, "edges")
        for edge in e["edges"]:
            ET.SubElement(
                assoc, "edge",
                {"a": str(edge["entity_a"]), "b": str(edge["entity_b"]),
                 "common-clusters": str(edge["co_cluster_count"]),
                 "weight": repr(edge["weight"])},
            )
    xml_path = out / f"entities-{date}.xml"
    _xml_dump(xml_entities, xml_path)
    written.append(str(xml_path))
    return sorted(written)


_EXPECTED_CHILDREN = {
    "clusters": {"cluster"},
    "links": {"link"},
    "entities": {"entity"},
}

_CLUSTER_CHILDREN = {
    "title", "members", "keywords", "entities", "term-hits", "places",
    "countries", "descriptors",
}


def validate_snapshot_xml(path) -> None:
    """Structural schema check; raises ValueError on the first violation."""
    tree = ET.parse(path)
    root = tree.getroot()
    if root.tag != "newsmill-snapshot":
        raise ValueError(f"root element must be newsmill-snapshot, got {root.tag}")
    kind = root.get("kind")
    if kind not in _EXPECTED_CHILDREN:
        raise ValueError(f"unknown snapshot kind {kind!r}")
    if root.get("version") != str(SNAPSHOT_VERSION):
        raise ValueError(f"unsupported snapshot version {root.get('version')!r}")
    if not root.get("date"):
        raise ValueError("missing date attribute")
    allowed = _EXPECTED_CHILDREN[kind]
    for child in root:
        if child.tag not in allowed:
            raise ValueError(f"unexpected element <{child.tag}> under {kind} snapshot")
        if kind == "clusters":
            for attr in ("id", "language", "date", "cohesiveness"):
                if child.get(attr) is None:
                    raise ValueError(f"cluster missing attribute {attr!r}")
            tags = [el.tag for el in child]
            unknown = set(tags) - _CLUSTER_CHILDREN
            if unknown:
                raise ValueError(f"unexpected cluster children: {sorted(unknown)}")
            if "title" not in tags or "members" not in tags:
                raise ValueError("cluster must carry <title> and <members>")
            for member in child.find("members") or []:
                if member.tag != "member" or member.get("doc-id") is None:
                    raise ValueError("member elements need a doc-id attribute")
        elif kind == "links":
            for attr in ("from", "to", "kind", "score"):
                if child.get(attr) is None:
                    raise ValueError(f"link missing attribute {attr!r}")
            if child.get("kind") not in ("temporal", "crosslingual"):
                raise ValueError(f"bad link kind {child.get('kind')!r}")
        elif kind == "entities":
            if child.get("id") is None:
                raise ValueError("entity missing id attribute")
            if child.find("canonical") is None:
                raise ValueError("entity must carry <canonical>")


def import_snapshot(store: Store, snapshot_dir, date: str) -> None:
    """Load one date's JSON snapshot files into the store.

    Clusters and links replace that date's rows; entity records merge over
    whatever is present (later dates win), reproducing the exporting
    store's API responses for the imported dates.
    """
    base = Path(snapshot_dir)
    clusters = json.loads((base / f"clusters-{date}.json").read_text(encoding="utf-8"))
    links = json.loads((base / f"links-{date}.json").read_text(encoding="utf-8"))
    entities = json.loads((base / f"entities-{date}.json").read_text(encoding="utf-8"))

    con = store._conn
    with con:
        seen_langs: dict[str, int] = {}
        for c in clusters["clusters"]:
            seen_langs[c["language"]] = seen_langs.get(c["language"], 0) + 1
        con.execute("DELETE FROM cluster_links WHERE from_cluster IN (SELECT cluster_id FROM clusters WHERE date = ?)", (date,))
        old = [r["cluster_id"] for r in con.execute("SELECT cluster_id FROM clusters WHERE date = ?", (date,))]
        if old:
            marks = ",".join("?" * len(old))
            for table in ("cluster_members", "cluster_entities", "cluster_keywords",
                          "cluster_countries", "term_hits", "cluster_places", "descriptor_vectors"):
                con.execute(f"DELETE FROM {table} WHERE cluster_id IN ({marks})", old)
            con.execute(f"DELETE FROM clusters WHERE date = ?", (date,))
        con.execute("DELETE FROM batches WHERE date = ?", (date,))

        doc_counts: dict[str, int] = {}
        for c in clusters["clusters"]:
            vector = c["vector"]
            country_vector = {e["iso"]: e["weight"] for e in c["countries"]}
            con.execute(
                "INSERT OR REPLACE INTO clusters VALUES (?,?,?,?,?,?,?,?)",
                (c["cluster_id"], c["language"], c["date"], c["cohesiveness"],
                 c["title"], c["title_doc_id"],
                 json.dumps(vector, sort_keys=True, ensure_ascii=False),
                 json.dumps(country_vector, sort_keys=True, ensure_ascii=False)),
            )
            for position, m in enumerate(c["members"]):
                con.execute(
                    "INSERT OR REPLACE INTO documents VALUES (?,?,?,?,?,?,?,?)",
                    (m["doc_id"], c["language"], c["date"], m["source"], m["url"],
                     m["title"], "", m["published_at"]),
                )
                con.execute("INSERT INTO cluster_members VALUES (?,?,?)",
                            (c["cluster_id"], m["doc_id"], position))
                doc_counts[c["language"]] = doc_counts.get(c["language"], 0) + 1
            for e in c["entities"]:
                con.execute("INSERT INTO cluster_entities VALUES (?,?,?,?)",
                            (c["cluster_id"], e["name"], e["kind"], e["count"]))
            for k in c["keywords"]:
                con.execute("INSERT INTO cluster_keywords VALUES (?,?,?)",
                            (c["cluster_id"], k["keyword"], k["weight"]))
            for cc in c["countries"]:
                con.execute("INSERT INTO cluster_countries VALUES (?,?,?)",
                            (c["cluster_id"], cc["iso"], cc["weight"]))
            for rank, t in enumerate(c["term_hits"]):
                con.execute("INSERT INTO term_hits VALUES (?,?,?,?)",
                            (c["cluster_id"], t["term"], t["frequency"], rank))
            for p in c["places"]:
                con.execute("INSERT INTO cluster_places VALUES (?,?,?,?,?,?)",
                            (c["cluster_id"], p["entry_id"], p["name"], p["lat"], p["lon"], p["count"]))
            for rank, d in enumerate(c["descriptors"]):
                con.execute("INSERT INTO descriptor_vectors VALUES (?,?,?,?)",
                            (c["cluster_id"], d["descriptor_id"], d["weight"], rank))
        for language, n_clusters in sorted(seen_langs.items()):
            con.execute("INSERT INTO batches VALUES (?,?,?,?)",
                        (language, date, doc_counts.get(language, 0), n_clusters))

        for l in links["links"]:
            con.execute("INSERT INTO cluster_links VALUES (?,?,?,?)",
                        (l["from_cluster"], l["to_cluster"], l["kind"], l["score"]))

        for e in entities["entities"]:
            entity_id = e["entity_id"]
            con.execute("DELETE FROM entities WHERE entity_id = ?", (entity_id,))
            for table in ("entity_variants", "entity_titles", "entity_keywords", "entity_countries"):
                con.execute(f"DELETE FROM {table} WHERE entity_id = ?", (entity_id,))
            con.execute("DELETE FROM relation_edges WHERE entity_a = ? OR entity_b = ?",
                        (entity_id, entity_id))
        for e in entities["entities"]:
            entity_id = e["entity_id"]
            con.execute("INSERT INTO entities VALUES (?,?)", (entity_id, e["canonical"]))
            for v in e["variants"]:
                con.execute("INSERT INTO entity_variants VALUES (?,?,?)",
                            (entity_id, v["variant"], v["count"]))
            for language in sorted(e["titles"]):
                for t in e["titles"][language]:
                    con.execute("INSERT INTO entity_titles VALUES (?,?,?,?)",
                                (entity_id, language, t["title"], t["count"]))
            for k in e["keywords"]:
                con.execute("INSERT INTO entity_keywords VALUES (?,?,?)",
                            (entity_id, k["keyword"], k["weight"]))
            for cc in e["countries"]:
                con.execute("INSERT INTO entity_countries VALUES (?,?,?)",
                            (entity_id, cc["iso"], cc["weight"]))
        seen_edges: set[tuple[int, int]] = set()
        for e in entities["entities"]:
            for edge in e["edges"]:
                key = (edge["entity_a"], edge["entity_b"])
                if key in seen_edges:
                    continue
                seen_edges.add(key)
                con.execute(
                    "INSERT INTO relation_edges VALUES (?,?,?,?)",
                    (edge["entity_a"], edge["entity_b"], edge["co_cluster_count"], edge["weight"]),
                )
