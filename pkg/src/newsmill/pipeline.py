"""Daily batch orchestration.

One run processes a date: per language it ingests the day's normalized
documents, scans and disambiguates mentions, extracts vectors, clusters,
builds cluster representations and persists the batch atomically.  Then
it links the day's clusters over time and across languages, and finally
rebuilds the identity layer (variant groups, titles, relations) by
replaying every stored cluster, which makes re-running a date idempotent.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import date as date_cls, timedelta
from pathlib import Path

from .cluster import Cluster, build_dendrogram, detect_topics, represent
from .config import Config
from .corpus import Document, TokenizedDocument, read_jsonl, tokenize
from .eurovoc import ProfileSet, load_profiles, rank_descriptors
from .extract import (
    ReferenceModel, country_scores, doc_vector, extract_keywords, keyword_part,
    load_reference, match_terms,
)
from .identity import IdentityState, Overrides, load_overrides
from .lexicon import (
    Lexicon, TitleDetections, detect_new_persons, disambiguate, load_gazetteer,
    load_suffix_table, load_title_lexicon,
)
from .link import link_crosslingual, track_over_time
from .store import BatchInput, Store

logger = logging.getLogger(__name__)


class Engine:
    """All loaded resources a pipeline run needs: lexicon, references, profiles."""

    def __init__(self, config: Config):
        self.config = config
        entries = load_gazetteer(config.gazetteer_path)
        suffixes = load_suffix_table(config.suffix_paths())
        titles = load_title_lexicon(config.title_paths())
        self.lexicon = Lexicon(entries, suffixes, config.languages, titles)
        self.references: dict[str, ReferenceModel] = {}
        for lang in config.languages:
            path = Path(config.reference_path(lang))
            if path.exists():
                self.references[path.stem] = load_reference(path)
        profiles_path = Path(config.profiles_path)
        self.profiles: ProfileSet = (
            load_profiles(profiles_path) if profiles_path.exists() else ProfileSet()
        )
        self.overrides: Overrides = (
            load_overrides(config.overrides_path)
            if config.overrides_path and Path(config.overrides_path).exists()
            else Overrides()
        )
        self.place_names = {
            e.entry_id: e.canonical for e in entries if e.kind == "place"
        }


@dataclass
class LanguageReport:
    language: str
    documents: int = 0
    clusters: int = 0
    error: str | None = None
    stage: str | None = None

    def to_dict(self) -> dict:
        return {
            "language": self.language, "documents": self.documents,
            "clusters": self.clusters, "error": self.error, "stage": self.stage,
        }


@dataclass
class PipelineReport:
    date: str
    languages: list[LanguageReport] = field(default_factory=list)
    temporal_links: int = 0
    crosslingual_links: int = 0
    entities: int = 0

    @property
    def ok(self) -> bool:
        return all(r.error is None for r in self.languages)

    def to_dict(self) -> dict:
        return {
            "date": self.date,
            "languages": [r.to_dict() for r in self.languages],
            "temporal_links": self.temporal_links,
            "crosslingual_links": self.crosslingual_links,
            "entities": self.entities,
            "ok": self.ok,
        }


@dataclass
class ProcessedBatch:
    batch: BatchInput
    clusters: list[Cluster]


def docs_path(config: Config, date: str, language: str) -> Path:
    return Path(config.docs_dir) / date / f"{language}.jsonl"


def process_batch(engine: Engine, documents: list[Document], language: str, date: str) -> ProcessedBatch:
    """Run all per-language stages for one day's documents (no persistence)."""
    config = engine.config
    lexicon = engine.lexicon
    ref = engine.references.get(language)
    if ref is None:
        raise RuntimeError(f"no reference model for language {language!r}")

    tdocs: dict[str, TokenizedDocument] = {}
    mentions_by_doc = {}
    titles_by_doc: dict[str, list[tuple[str, str]]] = {}
    entity_mentions: dict[str, list[tuple[str, str]]] = {}
    place_mentions: dict[str, list[tuple[int, float, float]]] = {}
    doc_vectors = {}
    country_vectors = {}

    for doc in documents:
        tdoc = tokenize(doc)
        tdocs[doc.doc_id] = tdoc
        mentions = disambiguate(lexicon.scan(tdoc), tdoc, lexicon)
        mentions_by_doc[doc.doc_id] = mentions
        detections: TitleDetections = detect_new_persons(tdoc, lexicon)
        titles_by_doc[doc.doc_id] = detections.new_persons + [
            (lexicon.entry(eid).canonical, title)
            for eid, title in detections.known_person_titles
        ]
        names = [
            (lexicon.entry(m.entry_id).canonical, m.kind)
            for m in mentions
            if m.kind in ("person", "organisation")
        ]
        names += [(name, "person") for name, _ in detections.new_persons]
        entity_mentions[doc.doc_id] = names
        place_mentions[doc.doc_id] = [
            (m.entry_id, lexicon.entry(m.entry_id).latitude, lexicon.entry(m.entry_id).longitude)
            for m in mentions
            if m.kind == "place" and lexicon.entry(m.entry_id).latitude is not None
        ]
        keywords = extract_keywords(tdoc, ref, config.top_k_keywords)
        countries = country_scores(mentions, tdoc, ref, lexicon)
        doc_vectors[doc.doc_id] = doc_vector(keywords, countries, config.country_weight)
        country_vectors[doc.doc_id] = countries

    clusters: list[Cluster] = []
    if documents:
        root = build_dendrogram([(d, doc_vectors[d]) for d in doc_vectors])
        skeletons = detect_topics(root, config.topic_threshold, config.min_cluster_size)
        skeletons.sort(key=lambda s: s.doc_ids[0])
        docs_by_id = {d.doc_id: d for d in documents}
        for i, skeleton in enumerate(skeletons):
            cluster_id = f"{language}-{date}-{i:03d}"
            member_tdocs = [tdocs[d] for d in skeleton.doc_ids]
            hits = match_terms(member_tdocs, lexicon)
            descriptor_vector = rank_descriptors(
                keyword_part(skeleton.node.vector), engine.profiles, language,
                config.descriptor_limit,
            )
            clusters.append(
                represent(
                    skeleton, cluster_id, docs_by_id, doc_vectors,
                    entity_mentions, place_mentions, country_vectors,
                    hits, descriptor_vector,
                )
            )

    batch = BatchInput(
        language=language, date=date, documents=list(documents),
        mentions=mentions_by_doc, titles=titles_by_doc, clusters=clusters,
    )
    return ProcessedBatch(batch=batch, clusters=clusters)


def rebuild_identity(store: Store, overrides: Overrides, merge_threshold: float) -> IdentityState:
    """Replay every stored cluster into a fresh identity state."""
    state = IdentityState(overrides=overrides, merge_threshold=merge_threshold)
    for row in store.all_cluster_rows_for_replay():
        names = []
        for name, kind, count in row["names"]:
            if kind in ("person", "organisation"):
                names.extend([name] * count)
        if not names:
            continue
        assignment = state.merge_variants(names)
        for language, name, title in row["titles"]:
            state.record_title(name, language, title)
        entity_ids = sorted(set(assignment.values()))
        state.update_relations(
            row["cluster_id"], entity_ids,
            top_keywords=row["keywords"], countries=row["countries"],
        )
    return state


def run_pipeline(engine: Engine, store: Store, date: str, languages: list[str] | None = None) -> PipelineReport:
    """Execute the full daily flow for one date; returns the batch report."""
    config = engine.config
    languages = languages or config.languages
    report = PipelineReport(date=date)
    today_by_lang: dict[str, list[Cluster]] = {}

    for language in languages:
        lang_report = LanguageReport(language=language)
        report.languages.append(lang_report)
        stage = "ingest"
        try:
            path = docs_path(config, date, language)
            documents = read_jsonl(path) if path.exists() else []
            documents = [d for d in documents if d.language == language and d.date == date]
            documents.sort(key=lambda d: d.doc_id)
            lang_report.documents = len(documents)
            if not documents:
                logger.info("%s/%s: no documents, store untouched", date, language)
                continue
            stage = "process"
            processed = process_batch(engine, documents, language, date)
            stage = "persist"
            store.replace_batch(processed.batch, engine.place_names)
            today_by_lang[language] = processed.clusters
            lang_report.clusters = len(processed.clusters)
        except Exception as exc:  # noqa: BLE001 - report carries stage + cause
            logger.exception("%s/%s failed during %s", date, language, stage)
            lang_report.stage = stage
            lang_report.error = str(exc)

    links = []
    window_start = (date_cls.fromisoformat(date) - timedelta(days=config.window_days)).isoformat()
    for language, clusters in sorted(today_by_lang.items()):
        history_dates = [d for d in store.batch_dates() if window_start <= d < date]
        history = store.load_clusters(language, history_dates)
        links.extend(
            track_over_time(clusters, history, config.temporal_threshold, config.max_links_per_day)
        )
    if len(today_by_lang) >= 2:
        links.extend(
            link_crosslingual(today_by_lang, config.crosslingual_threshold, config.crosslingual_weights)
        )
    store.replace_links_for_date(date, links)
    report.temporal_links = sum(1 for l in links if l.kind == "temporal")
    report.crosslingual_links = sum(1 for l in links if l.kind == "crosslingual")

    state = rebuild_identity(store, engine.overrides, config.name_threshold)
    store.replace_entities(state)
    report.entities = len(state.groups)
    return report
