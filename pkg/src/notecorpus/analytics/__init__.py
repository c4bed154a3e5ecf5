"""Numerical services: projection, clustering, hulls, and statistics."""

from .clustering import NOISE, ClusterSet, dbscan
from .hull import concave_hull, convex_hull, polygon_area, polygon_contains
from .projection import (
    ProjectionLayout,
    TooFewEntities,
    mds_project,
    pairwise_distances,
    standardize,
)
from .stats import (
    DistributionSummary,
    EmptyGroup,
    EmptySelection,
    aggregate_group,
    correlation_matrix,
    distribution_summary,
)

__all__ = [
    "ClusterSet",
    "DistributionSummary",
    "EmptyGroup",
    "EmptySelection",
    "NOISE",
    "ProjectionLayout",
    "TooFewEntities",
    "aggregate_group",
    "concave_hull",
    "convex_hull",
    "correlation_matrix",
    "dbscan",
    "distribution_summary",
    "mds_project",
    "pairwise_distances",
    "polygon_area",
    "polygon_contains",
    "standardize",
]
