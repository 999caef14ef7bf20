"""Agglomerative clustering of one language/day batch and topic detection.

The dendrogram is built greedily: the currently most similar pair of
nodes (cosine over their vectors) merges into a new node whose vector is
the leaf-weighted key-wise mean, and the merged node re-enters the
similarity computation like a single document with summed weight.  Major
topics are the maximal subtrees whose merge similarity (cohesiveness)
reaches the threshold.

Batch sizes are daily-scale, so the loop is O(n^2) per merge with cached
similarities (O(n^3) total); no approximate scheme is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime

from .corpus import Document
from .extract import TermHitList, keyword_part
from .vectors import WeightedVector, cosine, weighted_mean

DEFAULT_TOPIC_THRESHOLD = 0.5
DEFAULT_MIN_CLUSTER_SIZE = 2


@dataclass
class DendroNode:
    node_id: int
    vector: WeightedVector
    weight: int
    merge_similarity: float           # 1.0 for leaves
    doc_id: str | None = None         # set on leaves
    left: "DendroNode | None" = None
    right: "DendroNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.doc_id is not None

    def leaf_doc_ids(self) -> list[str]:
        if self.is_leaf:
            return [self.doc_id]
        return self.left.leaf_doc_ids() + self.right.leaf_doc_ids()


def merge_nodes(left: DendroNode, right: DendroNode, node_id: int) -> DendroNode:
    """Merge two disjoint subtrees into a parent node.

    The parent vector is the key-wise weighted mean of the child vectors;
    weight is the summed leaf count; merge_similarity is the cosine of the
    children at merge time.
    """
    similarity = cosine(left.vector, right.vector)
    return DendroNode(
        node_id=node_id,
        vector=weighted_mean([(left.vector, float(left.weight)), (right.vector, float(right.weight))]),
        weight=left.weight + right.weight,
        merge_similarity=similarity,
        left=left,
        right=right,
    )


def build_dendrogram(docs: list[tuple[str, WeightedVector]]) -> DendroNode:
    """Cluster documents bottom-up into a binary dendrogram.

    Leaves are numbered 0..n-1 in sorted doc_id order and internal nodes
    continue from n in merge order, so the tree is identical for any
    permutation of the input.  Similarity ties break on the smallest
    (node_id_a, node_id_b) pair.
    """
    if not docs:
        raise ValueError("need at least one document")
    leaves = [
        DendroNode(node_id=i, vector=dict(vec), weight=1, merge_similarity=1.0, doc_id=doc_id)
        for i, (doc_id, vec) in enumerate(sorted(docs, key=lambda d: d[0]))
    ]
    if len(leaves) != len({l.doc_id for l in leaves}):
        raise ValueError("duplicate doc_id in batch")
    active: dict[int, DendroNode] = {n.node_id: n for n in leaves}
    sims: dict[tuple[int, int], float] = {}
    ids = sorted(active)
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            sims[(a, b)] = cosine(active[a].vector, active[b].vector)
    next_id = len(leaves)
    while len(active) > 1:
        best_pair = min(sims, key=lambda p: (-sims[p], p))
        a, b = best_pair
        parent = merge_nodes(active[a], active[b], next_id)
        next_id += 1
        del active[a], active[b]
        sims = {p: s for p, s in sims.items() if a not in p and b not in p}
        for other_id, other in active.items():
            sims[(other_id, parent.node_id)] = cosine(other.vector, parent.vector)
        active[parent.node_id] = parent
    return next(iter(active.values()))


@dataclass
class ClusterSkeleton:
    node: DendroNode
    doc_ids: list[str]

    @property
    def cohesiveness(self) -> float:
        return self.node.merge_similarity


def detect_topics(
    root: DendroNode,
    threshold: float = DEFAULT_TOPIC_THRESHOLD,
    min_cluster_size: int = DEFAULT_MIN_CLUSTER_SIZE,
) -> list[ClusterSkeleton]:
    """Cut the dendrogram into maximal subtrees above the cohesiveness threshold.

    A subtree qualifies when its merge similarity is >= threshold and it
    spans >= min_cluster_size documents; qualifying subtrees with a
    qualifying ancestor are not reported.  The default size of 2 excludes
    single documents.
    """
    found: list[ClusterSkeleton] = []

    def visit(node: DendroNode) -> None:
        if node.merge_similarity >= threshold and node.weight >= min_cluster_size:
            found.append(ClusterSkeleton(node=node, doc_ids=sorted(node.leaf_doc_ids())))
            return
        if not node.is_leaf:
            visit(node.left)
            visit(node.right)

    visit(root)
    return found


@dataclass
class Cluster:
    cluster_id: str
    language: str
    date: str
    doc_ids: list[str]
    vector: WeightedVector            # subtree vector (keywords + country scores)
    cohesiveness: float
    title: str
    title_doc_id: str
    entities: dict[str, tuple[str, int]] = field(default_factory=dict)  # name -> (kind, count)
    term_hits: TermHitList = field(default_factory=list)
    places: list[tuple[int, float, float, int]] = field(default_factory=list)  # entry_id, lat, lon, count
    descriptor_vector: WeightedVector = field(default_factory=dict)
    country_vector: WeightedVector = field(default_factory=dict)

    @property
    def keyword_vector(self) -> WeightedVector:
        """Cluster vector without the country-score enhancement."""
        return keyword_part(self.vector)


def choose_title(
    skeleton: ClusterSkeleton,
    doc_vectors: dict[str, WeightedVector],
    published: dict[str, datetime],
) -> str:
    """doc_id of the member most similar to the cluster centroid.

    Ties go to the earliest published document, then to the smaller
    doc_id so the choice is total.
    """
    centroid = skeleton.node.vector

    def rank(doc_id: str):
        return (-cosine(doc_vectors[doc_id], centroid), published[doc_id], doc_id)

    return min(skeleton.doc_ids, key=rank)


def represent(
    skeleton: ClusterSkeleton,
    cluster_id: str,
    docs: dict[str, Document],
    doc_vectors: dict[str, WeightedVector],
    entity_mentions: dict[str, list[tuple[str, str]]],   # doc_id -> [(name, kind)]
    place_mentions: dict[str, list[tuple[int, float, float]]],  # doc_id -> [(entry_id, lat, lon)]
    country_vectors: dict[str, WeightedVector],
    term_hits: TermHitList,
    descriptor_vector: WeightedVector,
) -> Cluster:
    """Assemble the displayable cluster from its members.

    Entity and place counts are sums over the individual member articles;
    the representative title comes from the centroid-closest member.
    """
    member_ids = skeleton.doc_ids
    first = docs[member_ids[0]]
    published = {d: docs[d].published_at for d in member_ids}
    title_doc_id = choose_title(skeleton, doc_vectors, published)

    entities: dict[str, tuple[str, int]] = {}
    for doc_id in member_ids:
        for name, kind in entity_mentions.get(doc_id, []):
            prior = entities.get(name)
            entities[name] = (kind, (prior[1] if prior else 0) + 1)

    place_counts: dict[tuple[int, float, float], int] = {}
    for doc_id in member_ids:
        for key in place_mentions.get(doc_id, []):
            place_counts[key] = place_counts.get(key, 0) + 1
    places = [
        (entry_id, lat, lon, count)
        for (entry_id, lat, lon), count in sorted(
            place_counts.items(), key=lambda kv: (-kv[1], kv[0][0])
        )
    ]

    country_vector = weighted_mean(
        [(country_vectors.get(d, {}), 1.0) for d in member_ids]
    )

    return Cluster(
        cluster_id=cluster_id,
        language=first.language,
        date=first.date,
        doc_ids=list(member_ids),
        vector=dict(skeleton.node.vector),
        cohesiveness=skeleton.cohesiveness,
        title=docs[title_doc_id].title,
        title_doc_id=title_doc_id,
        entities=dict(sorted(entities.items())),
        term_hits=term_hits,
        places=places,
        descriptor_vector=descriptor_vector,
        country_vector=country_vector,
    )
