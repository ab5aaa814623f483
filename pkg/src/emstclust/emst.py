"""Euclidean minimum spanning tree construction and edge weight statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InputError
from .model import Dataset, Edge, SpanningForest, euclidean_distance


@dataclass(frozen=True)
class EdgeStats:
    """Mean and population standard deviation of a tree's edge weights."""

    mean: float
    std: float

    @property
    def variance(self) -> float:
        return self.std * self.std


def build_emst(dataset: Dataset) -> SpanningForest:
    """Build the Euclidean minimum spanning tree of a dataset.

    Runs a dense Prim scan over the implicit complete graph, O(n^2) time and
    O(n) extra memory. Candidate edges are compared by squared distance and
    ties are broken lexicographically on (min endpoint, max endpoint), so the
    result is deterministic even with duplicate points. Edge weights on the
    returned tree are computed with euclidean_distance so that every
    downstream comparison sees one consistent value.

    A single-point dataset yields a forest with no edges.
    """
    n = len(dataset.points)
    edges: list[Edge] = []
    if n >= 2:
        coords = np.array([p.coords for p in dataset.points], dtype=np.float64)
        ids = np.arange(n)
        in_tree = np.zeros(n, dtype=bool)
        best_d2 = np.full(n, np.inf)
        best_from = np.full(n, -1, dtype=np.int64)
        best_lo = np.full(n, n, dtype=np.int64)
        best_hi = np.full(n, n, dtype=np.int64)
        in_tree[0] = True
        cur = 0
        for _ in range(n - 1):
            diff = coords - coords[cur]
            d2 = np.einsum("ij,ij->i", diff, diff)
            lo = np.minimum(ids, cur)
            hi = np.maximum(ids, cur)
            closer = d2 < best_d2
            tie = (d2 == best_d2) & (
                (lo < best_lo) | ((lo == best_lo) & (hi < best_hi))
            )
            upd = ~in_tree & (closer | tie)
            best_d2[upd] = d2[upd]
            best_from[upd] = cur
            best_lo[upd] = lo[upd]
            best_hi[upd] = hi[upd]

            masked = np.where(in_tree, np.inf, best_d2)
            nearest = masked.min()
            cand = np.flatnonzero(masked == nearest)
            order = np.lexsort((best_hi[cand], best_lo[cand]))
            nxt = int(cand[order[0]])
            src = int(best_from[nxt])
            weight = euclidean_distance(dataset.points[src], dataset.points[nxt])
            edges.append(Edge(src, nxt, weight))
            in_tree[nxt] = True
            cur = nxt
    return SpanningForest(vertex_count=n, edges=frozenset(edges))


def edge_statistics(forest: SpanningForest) -> EdgeStats:
    """Mean and population standard deviation of the forest's edge weights.

    Raises DegenerateInputError for a forest with no edges. Summation runs
    over edges in canonical endpoint order so the result is reproducible.
    """
    if not forest.edges:
        raise DegenerateInputError("edge statistics need at least one edge")
    weights = [e.weight for e in sorted(forest.edges)]
    mean = math.fsum(weights) / len(weights)
    variance = math.fsum((w - mean) ** 2 for w in weights) / len(weights)
    return EdgeStats(mean=mean, std=math.sqrt(variance))


def brute_force_mst_weight(dataset: Dataset) -> float:
    """Exact minimum spanning tree weight by exhaustive search.

    Enumerates all n^(n-2) labeled trees through vectorized Prufer sequence
    decoding and returns the smallest total weight. Intended as an
    independent reference for small inputs, so the size is capped at 8.
    """
    n = len(dataset.points)
    if n > 8:
        raise InputError(f"exhaustive tree search is capped at 8 points, got {n}")
    if n == 1:
        return 0.0
    pts = dataset.points
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = euclidean_distance(pts[i], pts[j])
    if n == 2:
        return float(dist[0, 1])

    grids = np.meshgrid(*([np.arange(n)] * (n - 2)), indexing="ij")
    seqs = np.stack(grids, axis=-1).reshape(-1, n - 2)
    count = seqs.shape[0]
    rows = np.arange(count)
    degree = np.ones((count, n), dtype=np.int64)
    for t in range(n - 2):
        degree[rows, seqs[:, t]] += 1

    totals = np.zeros(count)
    for t in range(n - 2):
        # The smallest remaining leaf joins the next sequence symbol.
        leaf = np.argmax(degree == 1, axis=1)
        other = seqs[:, t]
        totals += dist[leaf, other]
        degree[rows, leaf] -= 1
        degree[rows, other] -= 1
    first = np.argmax(degree == 1, axis=1)
    degree[rows, first] -= 1
    second = np.argmax(degree == 1, axis=1)
    totals += dist[first, second]
    return float(totals.min())
