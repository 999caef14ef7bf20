"""Name variant merging and entity relation statistics.

Names that co-occur in one cluster are compared by the cosine of their
letter bigram+trigram frequency profiles and chained into one entity when
the similarity reaches the merge threshold (default 0.7).  Manual
overrides (force-merge / force-split) outrank the automatic decision and
persist across runs.  Cluster-level co-occurrence counts feed a
degree-normalized association weight that favours exclusive pairs over
ubiquitous names.
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field

from .vectors import cosine


class OverrideConflictError(ValueError):
    pass


class UnknownEntityError(LookupError):
    pass


def normalize_name(name: str) -> str:
    """Lowercase, diacritics stripped, letters only, single-spaced."""
    decomposed = unicodedata.normalize("NFKD", name)
    kept = []
    for ch in decomposed:
        if unicodedata.combining(ch):
            continue
        if ch.isalpha():
            kept.append(ch.lower())
        else:
            kept.append(" ")
    return " ".join("".join(kept).split())


def ngram_profile(name: str) -> Counter:
    """Letter bigram+trigram frequencies, words padded with '_'.

    Bigram and trigram keys live in one space and cannot collide because
    their lengths differ.  Raises on names that normalize to fewer than
    two letters.
    """
    normalized = normalize_name(name)
    if len(normalized.replace(" ", "")) < 2:
        raise ValueError(f"name too short for n-gram profile: {name!r}")
    profile: Counter = Counter()
    for word in normalized.split():
        padded = f"_{word}_"
        for n in (2, 3):
            for i in range(len(padded) - n + 1):
                profile[padded[i : i + n]] += 1
    return profile


def name_similarity(a: str, b: str) -> float:
    """Cosine of the n-gram profiles; 1.0 on identical normalized names."""
    return cosine(ngram_profile(a), ngram_profile(b))


@dataclass
class Overrides:
    """Interactive corrections: pairs forced together or apart."""

    merges: list[tuple[str, str]] = field(default_factory=list)
    splits: list[tuple[str, str]] = field(default_factory=list)
    notes: dict[tuple[str, str], str] = field(default_factory=dict)

    def __post_init__(self):
        merge_keys = {tuple(sorted(p)) for p in self.merges}
        split_keys = {tuple(sorted(p)) for p in self.splits}
        conflict = merge_keys & split_keys
        if conflict:
            raise OverrideConflictError(f"pairs both merged and split: {sorted(conflict)}")

    def split_keys(self) -> set[tuple[str, str]]:
        return {tuple(sorted(p)) for p in self.splits}


def load_overrides(path) -> Overrides:
    """Read override lines ``merge|split<TAB>name_a<TAB>name_b<TAB>note``."""
    merges: list[tuple[str, str]] = []
    splits: list[tuple[str, str]] = []
    notes: dict[tuple[str, str], str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 3:
                raise ValueError(f"{path}:{lineno}: expected op<TAB>name_a<TAB>name_b[<TAB>note]")
            op, a, b = parts[0], parts[1], parts[2]
            note = parts[3] if len(parts) > 3 else ""
            if op == "merge":
                merges.append((a, b))
            elif op == "split":
                splits.append((a, b))
            else:
                raise ValueError(f"{path}:{lineno}: unknown override op {op!r}")
            notes[tuple(sorted((a, b)))] = note
    return Overrides(merges=merges, splits=splits, notes=notes)


@dataclass
class NameVariantGroup:
    entity_id: int
    variant_counts: Counter = field(default_factory=Counter)
    titles: dict[str, Counter] = field(default_factory=dict)   # language -> title counts

    @property
    def variants(self) -> set[str]:
        return set(self.variant_counts)

    @property
    def canonical(self) -> str:
        """Most frequently observed variant; ties go to the smaller string."""
        return min(self.variant_counts, key=lambda v: (-self.variant_counts[v], v))

    def add_title(self, language: str, title: str) -> None:
        self.titles.setdefault(language, Counter())[title] += 1


class IdentityState:
    """Variant groups plus co-occurrence statistics, built by replaying clusters."""

    def __init__(self, overrides: Overrides | None = None, merge_threshold: float = 0.7):
        self.overrides = overrides or Overrides()
        self.merge_threshold = merge_threshold
        self.groups: dict[int, NameVariantGroup] = {}
        self._by_variant: dict[str, int] = {}
        self._next_id = 1
        # relations
        self.edges: dict[tuple[int, int], int] = {}
        self.processed_clusters: set[str] = set()
        self.entity_keywords: dict[int, Counter] = {}
        self.entity_countries: dict[int, Counter] = {}
        self.entity_clusters: dict[int, list[str]] = {}

    # --- variant groups ---------------------------------------------------

    def entity_id_for(self, name: str) -> int | None:
        return self._by_variant.get(name)

    def _cannot_link(self, names_a: set[str], names_b: set[str]) -> bool:
        for x, y in self.overrides.split_keys():
            if (x in names_a and y in names_b) or (y in names_a and x in names_b):
                return True
        return False

    def merge_variants(self, cluster_names: list[str]) -> dict[str, int]:
        """Group one cluster's person/org names into entities.

        Single-linkage chaining at the merge threshold within the cluster,
        unified with existing groups on exact variant match; merge
        overrides outrank chaining and split overrides block it.  Returns
        the name -> entity_id mapping for the cluster.
        """
        unique = sorted(set(cluster_names))
        observed = Counter(cluster_names)

        profiles = {}
        for name in unique:
            try:
                profiles[name] = ngram_profile(name)
            except ValueError:
                profiles[name] = None

        # local connected components over (override-merge + similarity) edges
        parent = {n: n for n in unique}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def members(root: str) -> set[str]:
            return {n for n in unique if find(n) == root}

        def union(a: str, b: str, forced: bool) -> None:
            ra, rb = find(a), find(b)
            if ra == rb:
                return
            if self._cannot_link(members(ra), members(rb)):
                if forced:
                    raise OverrideConflictError(
                        f"merge override for ({a!r}, {b!r}) conflicts with a split override"
                    )
                return
            parent[max(ra, rb)] = min(ra, rb)

        for a, b in sorted(tuple(sorted(p)) for p in self.overrides.merges):
            if a in parent and b in parent:
                union(a, b, forced=True)

        edges = []
        for i, a in enumerate(unique):
            if profiles[a] is None:
                continue
            for b in unique[i + 1 :]:
                if profiles[b] is None:
                    continue
                sim = cosine(profiles[a], profiles[b])
                if sim >= self.merge_threshold:
                    edges.append((-sim, a, b))
        for _, a, b in sorted(edges):
            union(a, b, forced=False)

        # unify local components with global groups (exact variant match),
        # then with each other through shared global ids
        components: dict[str, list[str]] = {}
        for name in unique:
            components.setdefault(find(name), []).append(name)

        for root in sorted(components):
            names = components[root]
            matched_ids = sorted({
                self._by_variant[n] for n in names if n in self._by_variant
            })
            target: int | None = None
            for gid in matched_ids:
                if target is None:
                    target = gid
                    continue
                target = self._merge_groups(target, gid)
            if target is None:
                target = self._next_id
                self._next_id += 1
                self.groups[target] = NameVariantGroup(entity_id=target)
            for n in names:
                # a variant stays in its exact-match home when a split
                # override blocked the group union above
                gid = self._by_variant.get(n, target)
                self.groups[gid].variant_counts[n] += observed[n]
                self._by_variant[n] = gid
        self.apply_global_overrides()
        return {n: self._by_variant[n] for n in unique}

    def apply_global_overrides(self) -> None:
        """Union the groups of every merge-override pair present in the state."""
        for a, b in sorted(tuple(sorted(p)) for p in self.overrides.merges):
            ga, gb = self._by_variant.get(a), self._by_variant.get(b)
            if ga is None or gb is None or ga == gb:
                continue
            self._merge_groups(ga, gb, forced=True)

    def _merge_groups(self, keep: int, other: int, forced: bool = False) -> int:
        """Union two global groups, keeping the smaller id.

        A split override between any two member variants blocks the union
        (or raises when the union itself was forced by a merge override).
        """
        if keep == other:
            return keep
        g_keep, g_other = self.groups[keep], self.groups[other]
        if self._cannot_link(g_keep.variants, g_other.variants):
            if forced:
                raise OverrideConflictError(
                    f"merge override joining groups {keep} and {other} conflicts with a split override"
                )
            return keep
        keep, other = min(keep, other), max(keep, other)
        g_keep, g_other = self.groups[keep], self.groups[other]
        g_keep.variant_counts.update(g_other.variant_counts)
        for lang, titles in g_other.titles.items():
            g_keep.titles.setdefault(lang, Counter()).update(titles)
        for variant in g_other.variants:
            self._by_variant[variant] = keep
        del self.groups[other]
        # relations bookkeeping moves with the group
        self._relabel_entity(other, keep)
        return keep

    def _relabel_entity(self, old: int, new: int) -> None:
        moved: dict[tuple[int, int], int] = {}
        for (a, b), count in self.edges.items():
            a2 = new if a == old else a
            b2 = new if b == old else b
            if a2 == b2:
                continue
            key = (min(a2, b2), max(a2, b2))
            moved[key] = moved.get(key, 0) + count
        self.edges = moved
        if old in self.entity_keywords:
            self.entity_keywords.setdefault(new, Counter()).update(self.entity_keywords.pop(old))
        if old in self.entity_countries:
            self.entity_countries.setdefault(new, Counter()).update(self.entity_countries.pop(old))
        if old in self.entity_clusters:
            combined = self.entity_clusters.setdefault(new, []) + self.entity_clusters.pop(old)
            self.entity_clusters[new] = list(dict.fromkeys(combined))

    def record_title(self, name: str, language: str, title: str) -> None:
        entity_id = self._by_variant.get(name)
        if entity_id is not None:
            self.groups[entity_id].add_title(language, title)

    # --- relations ----------------------------------------------------------

    def update_relations(
        self,
        cluster_id: str,
        entity_ids: list[int],
        top_keywords: dict[str, float] | None = None,
        countries: dict[str, float] | None = None,
    ) -> None:
        """Count one cluster's unordered entity pairs; idempotent per cluster_id."""
        if cluster_id in self.processed_clusters:
            return
        self.processed_clusters.add(cluster_id)
        ids = sorted(set(entity_ids))
        for i, a in enumerate(ids):
            self.entity_clusters.setdefault(a, []).append(cluster_id)
            if top_keywords:
                kw = self.entity_keywords.setdefault(a, Counter())
                for key, weight in top_keywords.items():
                    kw[key] += weight
            if countries:
                cc = self.entity_countries.setdefault(a, Counter())
                for iso, weight in countries.items():
                    cc[iso] += weight
            for b in ids[i + 1 :]:
                key = (a, b)
                self.edges[key] = self.edges.get(key, 0) + 1

    def degree(self, entity_id: int) -> int:
        return sum(c for (a, b), c in self.edges.items() if entity_id in (a, b))

    def weighted_associations(self, entity_id: int) -> list[tuple[int, int, float]]:
        """Ranked (other_id, co_cluster_count, weight) rows for one entity.

        weight(a, b) = cooc(a, b) / sqrt(D(a) * D(b)) where D sums an
        entity's co-occurrences over all partners: pairs that appear
        mainly together score near 1, ubiquitous names are suppressed.
        """
        if entity_id not in self.groups:
            raise UnknownEntityError(f"unknown entity {entity_id}")
        neighbours = [
            (b if a == entity_id else a, count)
            for (a, b), count in self.edges.items()
            if entity_id in (a, b)
        ]
        if not neighbours:
            return []
        d_self = self.degree(entity_id)
        rows = []
        for other, count in neighbours:
            weight = count / ((d_self * self.degree(other)) ** 0.5)
            rows.append((other, count, weight))
        rows.sort(key=lambda r: (-r[2], -r[1], r[0]))
        return rows
