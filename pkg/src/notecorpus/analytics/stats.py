"""Correlation, distribution summaries, and group aggregation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..features import FeatureVector, feature_ids
from .projection import TooFewEntities

HISTOGRAM_BINS = 20


class EmptySelection(ValueError):
    """A selection-based operation received no entities."""


class EmptyGroup(ValueError):
    """Aggregation over zero members is undefined."""


@dataclass(frozen=True)
class DistributionSummary:
    """Min/median/max plus shared-edge histograms for selection vs corpus."""

    feature_id: str
    selection_stats: tuple[float, float, float]
    corpus_stats: tuple[float, float, float]
    bin_edges: tuple[float, ...]
    selection_histogram: tuple[int, ...]
    corpus_histogram: tuple[int, ...]


def correlation_matrix(matrix: np.ndarray) -> list[list[Optional[float]]]:
    """Pearson correlation of the columns; zero-variance columns become None.

    The result is exactly symmetric with a unit diagonal for valid columns.
    """
    x = np.asarray(matrix, dtype=float)
    if x.ndim != 2:
        raise ValueError("expected a 2D entities-by-features matrix")
    n = x.shape[0]
    if n < 3:
        raise TooFewEntities("correlation needs at least 3 entities")
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    valid = std > 0.0

    z = np.zeros_like(x)
    z[:, valid] = (x[:, valid] - mean[valid]) / std[valid]
    corr = z.T @ z / n
    corr = (corr + corr.T) / 2.0
    corr = np.clip(corr, -1.0, 1.0)

    k = x.shape[1]
    out: list[list[Optional[float]]] = []
    for i in range(k):
        row: list[Optional[float]] = []
        for j in range(k):
            if not (valid[i] and valid[j]):
                row.append(None)
            elif i == j:
                row.append(1.0)
            else:
                row.append(float(corr[i, j]))
        out.append(row)
    return out


def distribution_summary(
    feature_id: str,
    selection_values: Sequence[float],
    corpus_values: Sequence[float],
    bins: int = HISTOGRAM_BINS,
) -> DistributionSummary:
    """Summary statistics for a selection against the whole corpus.

    Both histograms share bin edges spanning the corpus min-max range; a
    degenerate corpus range (min == max) collapses to a single bin.
    """
    if len(selection_values) == 0:
        raise EmptySelection("distribution summary needs a non-empty selection")
    if len(corpus_values) == 0:
        raise EmptySelection("distribution summary needs a non-empty corpus")
    selection = np.asarray(selection_values, dtype=float)
    corpus = np.asarray(corpus_values, dtype=float)

    lo = float(corpus.min())
    hi = float(corpus.max())
    if lo == hi:
        edges = np.asarray([lo, hi])
        sel_hist = np.asarray([selection.size])
        cor_hist = np.asarray([corpus.size])
    else:
        cor_hist, edges = np.histogram(corpus, bins=bins, range=(lo, hi))
        sel_hist, _ = np.histogram(selection, bins=bins, range=(lo, hi))

    return DistributionSummary(
        feature_id=feature_id,
        selection_stats=(
            float(selection.min()),
            float(np.median(selection)),
            float(selection.max()),
        ),
        corpus_stats=(lo, float(np.median(corpus)), hi),
        bin_edges=tuple(float(e) for e in edges),
        selection_histogram=tuple(int(c) for c in sel_hist),
        corpus_histogram=tuple(int(c) for c in cor_hist),
    )


def aggregate_group(members: Sequence[FeatureVector]) -> FeatureVector:
    """Per-feature arithmetic mean of the members' vectors."""
    if not members:
        raise EmptyGroup("cannot aggregate an empty group")
    n = len(members)
    values = {
        fid: sum(m.values[fid] for m in members) / n for fid in feature_ids()
    }
    flags = frozenset().union(*(m.flags for m in members))
    return FeatureVector(values=values, flags=flags)
