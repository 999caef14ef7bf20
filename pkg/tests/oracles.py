"""Independent reference implementations used to verify the main code paths.

Everything here is deliberately written the dumb way: per-pattern substring
scans, full O(n^3) similarity recomputation, the entropy formulation of the
log-likelihood statistic.  None of it imports the implementation internals
it checks (only shared *rule definitions* like the tie order are mirrored
from the documented contracts).
"""

from __future__ import annotations

import math
from collections import Counter


# --- multi-pattern matching ------------------------------------------------

def naive_norm(text: str) -> str:
    out = []
    for c in text:
        low = c.lower()
        out.append(low if len(low) == 1 else c)
    return "".join(out)


def naive_find_all(pattern: str, text: str) -> list[int]:
    """Every occurrence of pattern in text, one str.find at a time."""
    positions = []
    start = 0
    while True:
        i = text.find(pattern, start)
        if i < 0:
            return positions
        positions.append(i)
        start = i + 1


def naive_scan(
    patterns: list[tuple[str, bool]], text: str
) -> list[tuple[int, int, frozenset[str]]]:
    """Per-pattern scan with word-boundary and leftmost-longest rules.

    ``patterns`` are (surface, case_sensitive) pairs.  Returns
    (start, end, surfaces) for each selected span.
    """

    def word_char(c: str) -> bool:
        return c.isalnum()

    norm_text = naive_norm(text)
    span_hits: dict[tuple[int, int], set[str]] = {}
    for surface, case_sensitive in patterns:
        norm_pat = naive_norm(surface)
        if not norm_pat:
            continue
        for start in naive_find_all(norm_pat, norm_text):
            end = start + len(norm_pat)
            if start > 0 and word_char(text[start - 1]):
                continue
            if end < len(text) and word_char(text[end]):
                continue
            if case_sensitive and text[start:end] != surface:
                continue
            span_hits.setdefault((start, end), set()).add(surface)
    selected = []
    cursor = -1
    for start, end in sorted(span_hits, key=lambda s: (s[0], -(s[1] - s[0]))):
        if start > cursor:
            selected.append((start, end, frozenset(span_hits[(start, end)])))
            cursor = end - 1
    return selected


# --- log-likelihood statistic ----------------------------------------------

def g2_entropy_form(k_doc: float, n_doc: float, k_ref: float, n_ref: float) -> float:
    """G2 via the mutual-information formulation 2*N*I(X;Y).

    I is computed from the empirical joint distribution of the 2x2 table,
    a different code path from the O*ln(O/E) sum used by the
    implementation.
    """
    cells = [
        [k_doc, n_doc - k_doc],
        [k_ref, n_ref - k_ref],
    ]
    n = n_doc + n_ref
    info = 0.0
    for i in range(2):
        for j in range(2):
            o = cells[i][j]
            if o == 0:
                continue
            p_ij = o / n
            p_i = (cells[i][0] + cells[i][1]) / n
            p_j = (cells[0][j] + cells[1][j]) / n
            info += p_ij * math.log(p_ij / (p_i * p_j))
    return 2.0 * n * info


# --- agglomerative clustering ----------------------------------------------

def oracle_cosine(a: dict, b: dict) -> float:
    shared = sorted(set(a) & set(b))
    if not shared:
        return 0.0
    dot = math.fsum(a[k] * b[k] for k in shared)
    na = math.sqrt(math.fsum(x * x for x in a.values()))
    nb = math.sqrt(math.fsum(x * x for x in b.values()))
    if na == 0.0 or nb == 0.0 or dot == 0.0:
        return 0.0
    return min(dot / (na * nb), 1.0)


class OracleNode:
    def __init__(self, node_id, vector, weight, sim, doc_id=None, left=None, right=None):
        self.node_id = node_id
        self.vector = vector
        self.weight = weight
        self.merge_similarity = sim
        self.doc_id = doc_id
        self.left = left
        self.right = right

    def shape(self):
        """Comparable structural summary (ids, weights, similarities)."""
        if self.doc_id is not None:
            return ("leaf", self.node_id, self.doc_id)
        return (
            "node", self.node_id, self.weight, self.merge_similarity,
            self.left.shape(), self.right.shape(),
        )

    def leaves(self):
        if self.doc_id is not None:
            return [self.doc_id]
        return self.leaves_of(self.left) + self.leaves_of(self.right)

    @staticmethod
    def leaves_of(node):
        return node.leaves()


def oracle_dendrogram(docs: list[tuple[str, dict]]) -> OracleNode:
    """Brute-force greedy agglomeration: all pairs recomputed every round."""
    nodes = [
        OracleNode(i, dict(vec), 1, 1.0, doc_id=doc_id)
        for i, (doc_id, vec) in enumerate(sorted(docs, key=lambda d: d[0]))
    ]
    next_id = len(nodes)
    while len(nodes) > 1:
        best = None
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                a, b = nodes[i], nodes[j]
                pair = (min(a.node_id, b.node_id), max(a.node_id, b.node_id))
                sim = oracle_cosine(a.vector, b.vector)
                key = (-sim, pair)
                if best is None or key < best[0]:
                    best = (key, i, j, sim)
        _, i, j, sim = best
        a, b = nodes[i], nodes[j]
        total = a.weight + b.weight
        merged_vector = {}
        for k in sorted(set(a.vector) | set(b.vector)):
            value = (a.weight * a.vector.get(k, 0.0) + b.weight * b.vector.get(k, 0.0)) / total
            if value != 0.0:
                merged_vector[k] = value
        parent = OracleNode(next_id, merged_vector, total, sim, left=a, right=b)
        next_id += 1
        nodes = [n for idx, n in enumerate(nodes) if idx not in (i, j)] + [parent]
    return nodes[0]


def oracle_topics(root: OracleNode, threshold: float, min_size: int) -> list[tuple[str, ...]]:
    """Maximal qualifying subtrees, as sorted doc_id tuples."""
    found = []

    def visit(node):
        if node.merge_similarity >= threshold and node.weight >= min_size:
            found.append(tuple(sorted(node.leaves())))
            return
        if node.doc_id is None:
            visit(node.left)
            visit(node.right)

    visit(root)
    return found


# --- character n-gram name similarity ---------------------------------------

def oracle_name_profile(name: str) -> Counter:
    """Bigram+trigram counts over '_'-padded words, built char-by-char."""
    import unicodedata

    letters = []
    for ch in unicodedata.normalize("NFKD", name):
        if unicodedata.combining(ch):
            continue
        letters.append(ch.lower() if ch.isalpha() else " ")
    words = "".join(letters).split()
    grams: Counter = Counter()
    for word in words:
        padded = "_" + word + "_"
        for size in (2, 3):
            for i in range(0, len(padded) - size + 1):
                grams[padded[i : i + size]] += 1
    return grams


def oracle_name_similarity(a: str, b: str) -> float:
    pa, pb = oracle_name_profile(a), oracle_name_profile(b)
    dot = sum(pa[g] * pb[g] for g in pa if g in pb)
    na = math.sqrt(sum(v * v for v in pa.values()))
    nb = math.sqrt(sum(v * v for v in pb.values()))
    if na == 0 or nb == 0:
        return 0.0
    return dot / (na * nb)


# --- term counting -----------------------------------------------------------

def naive_term_counts(terms: list[str], texts: list[str]) -> dict[str, int]:
    """Word-bounded, case-insensitive phrase counts with the shared overlap rule.

    All terms compete for spans at once (longest wins), mirroring the
    single-automaton semantics of the implementation.
    """
    counts: dict[str, int] = {}
    lowered = {naive_norm(t): t for t in terms}
    for text in texts:
        for _, _, surfaces in naive_scan([(t, False) for t in terms], text):
            for surface in surfaces:
                term = lowered[naive_norm(surface)]
                counts[term] = counts.get(term, 0) + 1
    return counts
