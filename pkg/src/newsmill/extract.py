"""Per-document feature extraction: keywords, country scores, term hits.

Keywords are scored with the log-likelihood (G-squared) statistic against
a reference word frequency table built from the same text type.  A word
is a keyword only when it is over-represented; under-represented words
clamp to zero.  Country scores reuse the same statistic over mention
counts of a country and its cities.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property

from .corpus import Document, TokenizedDocument, tokenize
from .lexicon import Lexicon, Mention, scan as matcher_scan
from .vectors import WeightedVector, merge_disjoint, scale, top_n, unit

logger = logging.getLogger(__name__)

OOV_SMOOTHING = 0.5   # contingency continuity correction for unseen words

REFERENCE_FORMAT_VERSION = 1


@dataclass
class ReferenceModel:
    """Word and country occurrence statistics over a reference news corpus."""

    language: str
    word_counts: dict[str, int]
    total_tokens: int
    doc_count: int
    country_counts: dict[str, int] = field(default_factory=dict)
    stopword_top_n: int = 200

    def __post_init__(self):
        if self.total_tokens < 0 or self.doc_count < 0:
            raise ValueError("reference totals must be >= 0")
        if any(c < 0 for c in self.word_counts.values()):
            raise ValueError("word counts must be >= 0")
        if self.word_counts and self.total_tokens < max(self.word_counts.values()):
            raise ValueError("total_tokens smaller than a single word count")

    @cached_property
    def stopwords(self) -> frozenset[str]:
        """Top-N most frequent reference words; ties broken by word."""
        ranked = sorted(self.word_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return frozenset(w for w, _ in ranked[: self.stopword_top_n])

    def word_ref_count(self, word: str) -> float:
        return float(self.word_counts.get(word, 0)) or OOV_SMOOTHING

    def country_ref_count(self, iso: str) -> float:
        return float(self.country_counts.get(iso, 0)) or OOV_SMOOTHING

    def country_expectation(self, iso: str) -> float:
        """Average occurrences per reference document."""
        if self.doc_count == 0:
            return 0.0
        return self.country_counts.get(iso, 0) / self.doc_count


def keyness(k_doc: float, n_doc: float, k_ref: float, n_ref: float) -> float:
    """Log-likelihood over-representation score.

    G2 of the 2x2 contingency table (word vs rest, document vs reference),
    with 0*ln(0) = 0, clamped to zero when the document rate does not
    exceed the reference rate.
    """
    if n_doc < 1 or n_ref < 1:
        raise ValueError("token totals must be >= 1")
    if not (0 <= k_doc <= n_doc):
        raise ValueError("need 0 <= k_doc <= n_doc")
    if not (0 <= k_ref <= n_ref):
        raise ValueError("need 0 <= k_ref <= n_ref")
    if k_doc / n_doc <= k_ref / n_ref:
        return 0.0
    observed = (k_doc, n_doc - k_doc, k_ref, n_ref - k_ref)
    row = (n_doc, n_ref)
    col = (k_doc + k_ref, (n_doc - k_doc) + (n_ref - k_ref))
    total = n_doc + n_ref
    g = 0.0
    for i in range(2):
        for j in range(2):
            o = observed[i * 2 + j]
            if o == 0:
                continue
            e = row[i] * col[j] / total
            g += o * math.log(o / e)
    return max(2.0 * g, 0.0)


def keywords_from_counts(
    counts: dict[str, int], n_tokens: int, ref: ReferenceModel, top_k: int = 100
) -> WeightedVector:
    """Keyness-ranked keyword vector from lowercase token counts."""
    if n_tokens == 0:
        return {}
    stop = ref.stopwords
    scored: WeightedVector = {}
    for word, count in counts.items():
        if word in stop:
            continue
        score = keyness(count, n_tokens, ref.word_ref_count(word), ref.total_tokens)
        if score > 0.0:
            scored[word] = score
    return top_n(scored, top_k)


def extract_keywords(tdoc: TokenizedDocument, ref: ReferenceModel, top_k: int = 100) -> WeightedVector:
    """Keyword vector of one document; empty document gives an empty vector."""
    if ref.language != tdoc.doc.language:
        raise ValueError(f"reference model is for {ref.language!r}, document is {tdoc.doc.language!r}")
    return keywords_from_counts(tdoc.lower_counts(), tdoc.token_count, ref, top_k)


def country_scores(
    mentions: list[Mention], tdoc: TokenizedDocument, ref: ReferenceModel, lexicon: Lexicon
) -> WeightedVector:
    """Country keyness from resolved place mentions.

    Every mention of a country or one of its cities adds one raw count for
    that country's ISO code; the raw count is then scored with the same
    G-squared statistic against the reference expectation.
    """
    if tdoc.token_count == 0:
        return {}
    raw: dict[str, int] = {}
    for m in mentions:
        if m.entry_id is None:
            continue
        entry = lexicon.entry(m.entry_id)
        if entry.kind == "place" and entry.country:
            raw[entry.country] = raw.get(entry.country, 0) + 1
    scores: WeightedVector = {}
    for iso, count in raw.items():
        score = keyness(count, tdoc.token_count, ref.country_ref_count(iso), ref.total_tokens)
        if score > 0.0:
            scores[iso] = score
    return scores


def doc_vector(
    keywords: WeightedVector, countries: WeightedVector, country_weight: float = 1.0
) -> WeightedVector:
    """Combined document vector: unit-normalized keywords plus country scores.

    Both sub-vectors are unit-normalized first, the country part is scaled
    by ``country_weight``, then the maps are unioned.  Key spaces are
    disjoint by construction (lowercase words vs uppercase ISO codes).
    """
    return merge_disjoint(unit(keywords), scale(unit(countries), country_weight))


def keyword_part(vector: WeightedVector) -> WeightedVector:
    """Strip country components (uppercase 2-letter ISO keys) from a vector."""
    return {k: v for k, v in vector.items() if not _is_iso_key(k)}


def country_part(vector: WeightedVector) -> WeightedVector:
    return {k: v for k, v in vector.items() if _is_iso_key(k)}


def _is_iso_key(key: str) -> bool:
    return len(key) == 2 and key.isascii() and key.isalpha() and key.isupper()


TermHitList = list[tuple[str, int]]


def match_terms(texts: list[TokenizedDocument], lexicon: Lexicon) -> TermHitList:
    """Exact specialist-term hit counts over one or more texts.

    Multi-word terms count once per phrase occurrence.  Output is ordered
    by descending frequency, ties by term string.
    """
    if lexicon.term_matcher is None:
        return []
    counts: dict[str, int] = {}
    for tdoc in texts:
        for m in matcher_scan(lexicon.term_matcher, tdoc):
            for entry_id in m.candidates:
                term = lexicon.entry(entry_id).canonical
                counts[term] = counts.get(term, 0) + 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


# --- reference model construction and persistence -------------------------

def build_reference(
    docs: list[Document], language: str, lexicon: Lexicon | None = None, stopword_top_n: int = 200
) -> ReferenceModel:
    """Build a reference model from a corpus of normalized documents.

    Country counts require a lexicon to resolve place mentions; without
    one the country table stays empty.
    """
    word_counts: dict[str, int] = {}
    country_counts: dict[str, int] = {}
    total = 0
    n_docs = 0
    for doc in docs:
        if doc.language != language:
            continue
        n_docs += 1
        tdoc = tokenize(doc)
        total += tdoc.token_count
        for w, c in tdoc.lower_counts().items():
            word_counts[w] = word_counts.get(w, 0) + c
        if lexicon is not None:
            from .lexicon import disambiguate

            mentions = disambiguate(lexicon.scan(tdoc), tdoc, lexicon)
            for m in mentions:
                entry = lexicon.entry(m.entry_id)
                if entry.kind == "place" and entry.country:
                    country_counts[entry.country] = country_counts.get(entry.country, 0) + 1
    if n_docs == 0:
        raise ValueError(f"no documents for language {language!r}")
    return ReferenceModel(
        language=language,
        word_counts=word_counts,
        total_tokens=total,
        doc_count=n_docs,
        country_counts=country_counts,
        stopword_top_n=stopword_top_n,
    )


def save_reference(model: ReferenceModel, path) -> None:
    """Write the canonical TSV form of a reference model."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"#reference-model\tv{REFERENCE_FORMAT_VERSION}\tlanguage={model.language}\n")
        fh.write(f"meta\ttotal_tokens\t{model.total_tokens}\n")
        fh.write(f"meta\tdoc_count\t{model.doc_count}\n")
        fh.write(f"meta\tstopword_top_n\t{model.stopword_top_n}\n")
        for word in sorted(model.word_counts):
            fh.write(f"word\t{word}\t{model.word_counts[word]}\n")
        for iso in sorted(model.country_counts):
            fh.write(f"country\t{iso}\t{model.country_counts[iso]}\n")


def load_reference(path) -> ReferenceModel:
    language = None
    meta: dict[str, int] = {}
    words: dict[str, int] = {}
    countries: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        if len(header) != 3 or header[0] != "#reference-model":
            raise ValueError(f"{path}: not a reference model file")
        if header[1] != f"v{REFERENCE_FORMAT_VERSION}":
            raise ValueError(f"{path}: unsupported format version {header[1]}")
        language = header[2].split("=", 1)[1]
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            kind, key, value = line.split("\t")
            if kind == "meta":
                meta[key] = int(value)
            elif kind == "word":
                words[key] = int(value)
            elif kind == "country":
                countries[key] = int(value)
            else:
                raise ValueError(f"{path}:{lineno}: unknown row kind {kind!r}")
    return ReferenceModel(
        language=language,
        word_counts=words,
        total_tokens=meta["total_tokens"],
        doc_count=meta["doc_count"],
        country_counts=countries,
        stopword_top_n=meta.get("stopword_top_n", 200),
    )
