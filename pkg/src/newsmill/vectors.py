"""Sparse weighted vectors keyed by strings.

A weighted vector is a plain ``dict[str, float]`` mapping a key (lowercase
keyword, uppercase 2-letter country code, or descriptor id) to a
non-negative weight.  Zero weights are never stored.

All reductions go through :func:`math.fsum`, which returns the correctly
rounded sum independent of iteration order, so cosine / norm values are
bit-identical no matter how a dict was built.  Clustering relies on this
for deterministic tie-breaking.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

WeightedVector = dict[str, float]


def norm(v: Mapping[str, float]) -> float:
    """Euclidean norm of a sparse vector."""
    return math.sqrt(math.fsum(x * x for x in v.values()))


def cosine(a: Mapping[str, float], b: Mapping[str, float]) -> float:
    """Cosine similarity in [0, 1]; 0.0 when either vector is empty or zero."""
    if not a or not b:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = math.fsum(w * b[k] for k, w in a.items() if k in b)
    if dot == 0.0:
        return 0.0
    na = norm(a)
    nb = norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    # weights are non-negative, so the value is already in [0, 1] up to
    # rounding; clamp the rounding spill only
    return min(dot / (na * nb), 1.0)


def unit(v: Mapping[str, float]) -> WeightedVector:
    """Scale to unit Euclidean norm, dropping zero entries; empty stays empty."""
    n = norm(v)
    if n == 0.0:
        return {}
    return {k: w / n for k, w in v.items() if w != 0.0}


def scale(v: Mapping[str, float], factor: float) -> WeightedVector:
    return {k: w * factor for k, w in v.items() if w * factor != 0.0}


def weighted_mean(parts: Iterable[tuple[Mapping[str, float], float]]) -> WeightedVector:
    """Key-wise weighted mean of several vectors.

    Each part is ``(vector, weight)``; the result at key k is
    ``sum(w_i * v_i[k]) / sum(w_i)``.  Keys are processed in sorted order so
    the resulting dict has a stable iteration order for serialization.
    """
    parts = list(parts)
    total = math.fsum(w for _, w in parts)
    if total == 0.0:
        return {}
    keys = sorted({k for vec, _ in parts for k in vec})
    out: WeightedVector = {}
    for k in keys:
        val = math.fsum(w * vec[k] for vec, w in parts if k in vec) / total
        if val != 0.0:
            out[k] = val
    return out


def top_n(v: Mapping[str, float], n: int) -> WeightedVector:
    """Keep the n heaviest entries; ties broken by key so output is total-ordered."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ranked = sorted(v.items(), key=lambda kv: (-kv[1], kv[0]))[:n]
    return dict(ranked)


def merge_disjoint(a: Mapping[str, float], b: Mapping[str, float]) -> WeightedVector:
    """Union of two vectors whose key spaces must not overlap."""
    clash = set(a) & set(b)
    if clash:
        raise RuntimeError(f"key collision between sub-vectors: {sorted(clash)[:5]}")
    out = dict(a)
    out.update(b)
    return out
