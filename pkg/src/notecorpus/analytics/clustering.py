"""Density-based clustering of 2D layouts with per-cluster hull polygons."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .hull import Point, concave_hull
from .projection import pairwise_distances

NOISE = None

DEFAULT_MIN_PTS = 2
DEFAULT_CONCAVITY = 2.0
DEFAULT_LENGTH_THRESHOLD = 0.0

_UNASSIGNED = -2
_NOISE = -1


@dataclass(frozen=True)
class ClusterSet:
    """DBSCAN labels over a point set plus one hull polygon per cluster.

    ``labels[i]`` is a cluster index (0, 1, ... in order of each cluster's
    first member) or ``None`` for noise. Clusters of fewer than three
    distinct coordinates get degenerate hulls (segment or point) that the
    caller is expected to render with padding.
    """

    labels: tuple[Optional[int], ...]
    eps: float
    min_pts: int
    hulls: tuple[tuple[int, tuple[Point, ...]], ...]

    def cluster_count(self) -> int:
        return len(self.hulls)


def dbscan(
    coords: Sequence[Point],
    eps: float,
    min_pts: int = DEFAULT_MIN_PTS,
    concavity: float = DEFAULT_CONCAVITY,
    length_threshold: float = DEFAULT_LENGTH_THRESHOLD,
    compute_hulls: bool = True,
) -> ClusterSet:
    """Standard DBSCAN on Euclidean 2D distance.

    With the default ``min_pts`` of 2 every non-noise point is a core point,
    so the clusters are exactly the connected components of the closed
    eps-neighborhood graph; coincident points (duplicates) always share a
    cluster for any positive eps.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    points = [(float(x), float(y)) for x, y in coords]
    n = len(points)
    if n == 0:
        return ClusterSet((), eps, min_pts, ())

    distances = pairwise_distances(np.asarray(points))
    within = distances <= eps
    neighbors = [np.flatnonzero(within[i]) for i in range(n)]
    core = [int(neighbors[i].size) >= min_pts for i in range(n)]

    # Points are labeled when enqueued so each is visited exactly once;
    # non-core (border) points are absorbed but never expanded.
    labels = np.full(n, _UNASSIGNED, dtype=int)
    cluster = 0
    for i in range(n):
        if labels[i] != _UNASSIGNED:
            continue
        if not core[i]:
            labels[i] = _NOISE
            continue
        labels[i] = cluster
        frontier = deque([i])
        while frontier:
            j = frontier.popleft()
            if not core[j]:
                continue
            fresh = neighbors[j][labels[neighbors[j]] < 0]
            labels[fresh] = cluster
            frontier.extend(fresh.tolist())
        cluster += 1

    relabeled = _renumber_by_first_member(labels.tolist())
    hulls = []
    if compute_hulls:
        for label in range(cluster):
            members = [points[i] for i in range(n) if relabeled[i] == label]
            hulls.append(
                (label, tuple(concave_hull(members, concavity, length_threshold)))
            )
    final = tuple(None if lbl == _NOISE else lbl for lbl in relabeled)
    return ClusterSet(final, eps, min_pts, tuple(hulls))


def _renumber_by_first_member(labels: list[int]) -> list[int]:
    mapping: dict[int, int] = {}
    out = []
    for lbl in labels:
        if lbl == _NOISE:
            out.append(_NOISE)
            continue
        if lbl not in mapping:
            mapping[lbl] = len(mapping)
        out.append(mapping[lbl])
    return out
