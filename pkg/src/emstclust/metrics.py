"""Weighted tree path metrics and centroid dispersion measures.

Tree metrics (eccentricity, center, radius, diameter) are defined on the
weighted path distances of a cluster's subtree, not on direct point-to-point
distances. Centroid metrics are RMS quantities over raw coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InputError
from .model import Cluster, Dataset, Point, euclidean_distance


@dataclass(frozen=True)
class DistanceTable:
    """All-pairs weighted tree path distances for one component.

    vertices lists the component's vertex indices; distances[i][j] is the
    path distance between vertices[i] and vertices[j]. The matrix is exactly
    symmetric with an exactly zero diagonal.
    """

    vertices: tuple[int, ...]
    distances: np.ndarray

    def __post_init__(self) -> None:
        vertices = tuple(int(v) for v in self.vertices)
        if not vertices:
            raise InputError("a distance table needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise InputError("distance table vertices must be distinct")
        m = len(vertices)
        dist = np.array(self.distances, dtype=np.float64)
        if dist.shape != (m, m):
            raise InputError(f"distance matrix must be {m}x{m}, got {dist.shape}")
        if not np.all(np.isfinite(dist)) or np.any(dist < 0.0):
            raise InputError("distances must be finite and >= 0")
        if np.any(np.diagonal(dist) != 0.0):
            raise InputError("self distances must be exactly zero")
        if not np.array_equal(dist, dist.T):
            raise InputError("distance matrix must be exactly symmetric")
        dist.flags.writeable = False
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "distances", dist)

    def index_of(self, vertex: int) -> int:
        try:
            return self.vertices.index(vertex)
        except ValueError:
            raise InputError(f"vertex {vertex} is not in this table") from None

    def distance(self, x: int, y: int) -> float:
        return float(self.distances[self.index_of(x), self.index_of(y)])


def path_distance_table(cluster: Cluster) -> DistanceTable:
    """All-pairs path distances over a cluster's subtree.

    Roots the tree at the lowest member, takes one DFS preorder so every
    subtree is a contiguous index interval, then derives each vertex's row
    from its parent's row (add w outside the subtree, subtract w inside).
    The strict upper triangle is mirrored afterwards, which makes symmetry
    and the zero diagonal exact. O(m^2) time and memory.
    """
    members = sorted(cluster.members)
    m = len(members)
    local = {v: i for i, v in enumerate(members)}
    adjacency: list[list[tuple[int, float]]] = [[] for _ in range(m)]
    for e in sorted(cluster.edges):
        a, b = local[e.u], local[e.v]
        adjacency[a].append((b, e.weight))
        adjacency[b].append((a, e.weight))

    order: list[int] = []
    parent = [-1] * m
    parent_w = [0.0] * m
    seen = [False] * m
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for nb, w in adjacency[v]:
            if not seen[nb]:
                seen[nb] = True
                parent[nb] = v
                parent_w[nb] = w
                stack.append(nb)

    pos = [0] * m
    for i, v in enumerate(order):
        pos[v] = i
    size = [1] * m
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]

    dist = np.zeros((m, m))
    for v in order[1:]:
        dist[0, pos[v]] = dist[0, pos[parent[v]]] + parent_w[v]
    for v in order[1:]:
        row = dist[pos[parent[v]]] + parent_w[v]
        start = pos[v]
        row[start : start + size[v]] -= 2.0 * parent_w[v]
        dist[pos[v]] = row

    upper = np.triu(dist, 1)
    dist = upper + upper.T
    perm = np.array([pos[i] for i in range(m)])
    dist = dist[np.ix_(perm, perm)]
    return DistanceTable(vertices=tuple(members), distances=dist)


def eccentricity(table: DistanceTable, vertex: int) -> float:
    """Largest path distance from one vertex to any other in the table."""
    return float(table.distances[table.index_of(vertex)].max())


def center_and_radius(table: DistanceTable) -> tuple[frozenset[int], float]:
    """Vertices of minimum eccentricity and that minimum (the radius)."""
    ecc = table.distances.max(axis=1)
    radius = float(ecc.min())
    centers = frozenset(
        table.vertices[i] for i in np.flatnonzero(ecc == radius)
    )
    return centers, radius


def diameter_and_set(table: DistanceTable) -> tuple[float, frozenset[int]]:
    """Largest eccentricity and the vertices attaining it."""
    ecc = table.distances.max(axis=1)
    diameter = float(ecc.max())
    attaining = frozenset(
        table.vertices[i] for i in np.flatnonzero(ecc == diameter)
    )
    return diameter, attaining


def _coordinate_matrix(points: Sequence[Point]) -> np.ndarray:
    if not points:
        raise InputError("at least one point is required")
    dim = points[0].dimension
    for i, p in enumerate(points):
        if p.dimension != dim:
            raise InputError(f"point {i} has dimension {p.dimension}, expected {dim}")
    return np.array([p.coords for p in points], dtype=np.float64)


def centroid(points: Sequence[Point]) -> Point:
    """Coordinate-wise mean of a non-empty point collection."""
    arr = _coordinate_matrix(points)
    n = arr.shape[0]
    means = tuple(math.fsum(arr[:, j]) / n for j in range(arr.shape[1]))
    return Point(means)


def centroid_radius(points: Sequence[Point]) -> float:
    """RMS deviation from the centroid: sqrt(mean squared deviation)."""
    arr = _coordinate_matrix(points)
    mu = np.array(centroid(points).coords)
    sq = ((arr - mu) ** 2).sum(axis=1)
    return math.sqrt(math.fsum(sq.tolist()) / arr.shape[0])


def centroid_diameter(points: Sequence[Point]) -> float:
    """RMS distance over ordered distinct pairs.

    Defined as sqrt(sum over all ordered pairs (i, j), i != j, of
    ||x_i - x_j||^2 divided by n(n-1)). Computed through the identity
    sum_ij ||x_i - x_j||^2 = 2n * sum_i ||x_i - mu||^2, which is exact
    algebra, not an approximation. A single point yields 0.
    """
    arr = _coordinate_matrix(points)
    n = arr.shape[0]
    if n == 1:
        return 0.0
    mu = np.array(centroid(points).coords)
    sq = ((arr - mu) ** 2).sum(axis=1)
    total = 2.0 * n * math.fsum(sq.tolist())
    return math.sqrt(total / (n * (n - 1)))


def cluster_variance(points: Sequence[Point]) -> float:
    """Root mean squared Euclidean distance from the points to their centroid.

    Numerically this equals centroid_radius; it is computed through
    euclidean_distance against the centroid rather than coordinate algebra.
    """
    pts = list(points)
    mu = centroid(pts)
    sq = [euclidean_distance(p, mu) ** 2 for p in pts]
    return math.sqrt(math.fsum(sq) / len(pts))


class Compactness(NamedTuple):
    """Mean variance ratio of a clustering, with a degeneracy marker."""

    value: float
    degenerate: bool


def cluster_compactness(clusters: Sequence[Cluster], dataset: Dataset) -> Compactness:
    """Mean ratio of cluster variance to whole-dataset variance.

    The clusters must partition the dataset's point indices. When the
    dataset variance is zero (all points identical) the ratio is undefined;
    the result is then (0.0, degenerate=True).
    """
    if not clusters:
        raise InputError("at least one cluster is required")
    n = len(dataset.points)
    seen: set[int] = set()
    for c in clusters:
        if not c.members.isdisjoint(seen):
            raise InputError("clusters overlap")
        seen |= c.members
    if seen != set(range(n)):
        raise InputError("clusters must partition the dataset indices")

    whole = cluster_variance(dataset.points)
    if whole == 0.0:
        return Compactness(0.0, True)
    ratios = [
        cluster_variance([dataset.points[i] for i in sorted(c.members)]) / whole
        for c in clusters
    ]
    return Compactness(math.fsum(ratios) / len(ratios), False)
