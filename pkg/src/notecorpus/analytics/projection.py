"""Standardization and classical (Torgerson) multidimensional scaling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class TooFewEntities(ValueError):
    """An operation needs more entities than the caller provided."""


@dataclass(frozen=True)
class ProjectionLayout:
    """2D embedding of entities plus the residual distance error."""

    entity_ids: tuple[str, ...]
    coords: tuple[tuple[float, float], ...]
    used_features: tuple[str, ...]
    stress: float
    degenerate: bool = False

    @property
    def diameter(self) -> float:
        """Largest pairwise distance in the layout (eps sliders scale to it)."""
        if len(self.coords) < 2:
            return 0.0
        pts = np.asarray(self.coords)
        return float(pairwise_distances(pts).max())


def pairwise_distances(matrix: np.ndarray, block_rows: int = 256) -> np.ndarray:
    """Euclidean distance matrix, computed by row blocks."""
    x = np.asarray(matrix, dtype=float)
    n = x.shape[0]
    if x.ndim != 2:
        x = x.reshape(n, -1)
    out = np.empty((n, n), dtype=float)
    for start in range(0, n, block_rows):
        stop = min(n, start + block_rows)
        diff = x[start:stop, None, :] - x[None, :, :]
        out[start:stop] = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    return out


def standardize(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Z-score columns (population stdev); zero-variance columns are dropped.

    Returns the standardized matrix and the indices of the retained columns.
    """
    x = np.asarray(matrix, dtype=float)
    if x.ndim != 2:
        raise ValueError("expected a 2D entities-by-features matrix")
    if x.shape[0] < 2:
        raise TooFewEntities("standardization needs at least 2 entities")
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    kept = [j for j in range(x.shape[1]) if std[j] > 0.0]
    z = (x[:, kept] - mean[kept]) / std[kept]
    return z, kept


def mds_project(
    matrix: np.ndarray,
    entity_ids: Optional[Sequence[str]] = None,
    used_features: Sequence[str] = (),
) -> ProjectionLayout:
    """Classical MDS of the rows of ``matrix`` into 2D.

    Double-centers the squared Euclidean distance matrix, takes the two
    largest eigenpairs (negative eigenvalues clamped to zero), and scales
    eigenvectors by the square roots of their eigenvalues. Each output axis
    is flipped so that its largest-magnitude coordinate is positive, making
    the layout deterministic. An all-identical input collapses to the origin
    and is flagged degenerate rather than raised.
    """
    x = np.asarray(matrix, dtype=float)
    n = x.shape[0]
    if n < 2:
        raise TooFewEntities("projection needs at least 2 entities")
    ids = (
        tuple(str(i) for i in range(n))
        if entity_ids is None
        else tuple(str(i) for i in entity_ids)
    )
    if len(ids) != n:
        raise ValueError("entity_ids length must match the matrix rows")

    if x.ndim != 2 or x.shape[1] == 0:
        distances = np.zeros((n, n))
    else:
        distances = pairwise_distances(x)

    if not distances.any():
        coords = tuple((0.0, 0.0) for _ in range(n))
        return ProjectionLayout(ids, coords, tuple(used_features), 0.0, degenerate=True)

    centering = np.eye(n) - np.full((n, n), 1.0 / n)
    gram = -0.5 * centering @ (distances**2) @ centering
    gram = (gram + gram.T) / 2.0
    eigenvalues, eigenvectors = np.linalg.eigh(gram)

    order = np.argsort(eigenvalues)[::-1][:2]
    scales = np.sqrt(np.clip(eigenvalues[order], 0.0, None))
    axes = eigenvectors[:, order] * scales

    if axes.shape[1] < 2:
        axes = np.hstack([axes, np.zeros((n, 2 - axes.shape[1]))])
    for j in range(2):
        peak = int(np.argmax(np.abs(axes[:, j])))
        if axes[peak, j] < 0:
            axes[:, j] = -axes[:, j]

    embedded = pairwise_distances(axes)
    upper = np.triu_indices(n, k=1)
    residual = float(np.sum((embedded[upper] - distances[upper]) ** 2))
    total = float(np.sum(distances[upper] ** 2))
    stress = float(np.sqrt(residual / total)) if total > 0 else 0.0

    coords = tuple((float(p[0]), float(p[1])) for p in axes)
    return ProjectionLayout(ids, coords, tuple(used_features), stress)
