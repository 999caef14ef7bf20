"""Thesaurus descriptor profiles and category ranking.

Each descriptor gets a per-language profile: the keyness vector of its
concatenated training documents, unit-normalized.  Ranking a cluster's
keyword content against the profiles yields a vector of up to 100
descriptor ids whose relevance is the cosine against each profile.
Descriptor ids are language-independent, which is what makes them usable
for cross-lingual cluster linking.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .corpus import Document, tokenize
from .extract import ReferenceModel, keywords_from_counts
from .vectors import WeightedVector, cosine, top_n, unit

logger = logging.getLogger(__name__)

DESCRIPTOR_LIMIT = 100
PROFILE_FORMAT_VERSION = 1


@dataclass
class ProfileSet:
    """Trained descriptor profiles keyed by (language, descriptor_id)."""

    profiles: dict[tuple[str, int], WeightedVector] = field(default_factory=dict)

    def languages(self) -> list[str]:
        return sorted({lang for lang, _ in self.profiles})

    def descriptors_for(self, language: str) -> list[int]:
        return sorted(d for lang, d in self.profiles if lang == language)

    def get(self, language: str, descriptor_id: int) -> WeightedVector | None:
        return self.profiles.get((language, descriptor_id))


def train_profiles(
    labeled: list[tuple[Document, list[int]]],
    references: dict[str, ReferenceModel],
    top_k: int = 100,
) -> ProfileSet:
    """Build per-descriptor, per-language profiles from a labeled corpus.

    Training documents of one descriptor and language are concatenated,
    keyword-scored against the language reference, and unit-normalized.
    Descriptors with no training document in any language are excluded
    with a warning.
    """
    grouped: dict[tuple[str, int], list[Document]] = {}
    all_descriptors: set[int] = set()
    for doc, descriptor_ids in labeled:
        for d in descriptor_ids:
            all_descriptors.add(d)
            grouped.setdefault((doc.language, d), []).append(doc)

    out = ProfileSet()
    for (language, descriptor_id), docs in sorted(grouped.items()):
        ref = references.get(language)
        if ref is None:
            logger.warning("no reference model for language %s; skipping its profiles", language)
            continue
        counts: dict[str, int] = {}
        total = 0
        for doc in docs:
            tdoc = tokenize(doc)
            total += tdoc.token_count
            for w, c in tdoc.lower_counts().items():
                counts[w] = counts.get(w, 0) + c
        profile = unit(keywords_from_counts(counts, total, ref, top_k))
        if profile:
            out.profiles[(language, descriptor_id)] = profile
    trained = {d for _, d in out.profiles}
    for missing in sorted(all_descriptors - trained):
        logger.warning("descriptor %s has no usable training documents; excluded", missing)
    return out


def rank_descriptors(
    content: WeightedVector,
    profiles: ProfileSet,
    language: str,
    limit: int = DESCRIPTOR_LIMIT,
) -> WeightedVector:
    """Relevance-ranked descriptor vector for keyword-only content.

    Relevance is the cosine between the content and each profile of the
    given language; zero-relevance descriptors are dropped and at most
    ``limit`` survive.
    """
    if not content:
        return {}
    scores: WeightedVector = {}
    for descriptor_id in profiles.descriptors_for(language):
        relevance = cosine(content, profiles.profiles[(language, descriptor_id)])
        if relevance > 0.0:
            scores[str(descriptor_id)] = relevance
    return top_n(scores, limit)


def save_profiles(profiles: ProfileSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"#eurovoc-profiles\tv{PROFILE_FORMAT_VERSION}\n")
        for (language, descriptor_id), vec in sorted(profiles.profiles.items()):
            for word in sorted(vec):
                fh.write(f"{language}\t{descriptor_id}\t{word}\t{vec[word]!r}\n")


def load_profiles(path) -> ProfileSet:
    out = ProfileSet()
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        if header[0] != "#eurovoc-profiles" or header[1] != f"v{PROFILE_FORMAT_VERSION}":
            raise ValueError(f"{path}: not a profile file of version {PROFILE_FORMAT_VERSION}")
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            language, d, word, weight = line.split("\t")
            out.profiles.setdefault((language, int(d)), {})[word] = float(weight)
    return out


def load_descriptor_catalog(path) -> dict[int, dict[str, str]]:
    """Descriptor catalog TSV: id, language, label."""
    catalog: dict[int, dict[str, str]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected id<TAB>language<TAB>label")
            catalog.setdefault(int(parts[0]), {})[parts[1]] = parts[2]
    return catalog


def load_labeled_corpus(path) -> list[tuple[Document, list[int]]]:
    """JSONL corpus where each record carries a ``descriptors`` id list."""
    out: list[tuple[Document, list[int]]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            descriptors = [int(d) for d in rec.pop("descriptors", [])]
            out.append((Document.from_record(rec), descriptors))
    return out
