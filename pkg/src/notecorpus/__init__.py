"""notecorpus: corpus-level analytics for symbolic sheet music."""

from .features import (
    CATALOG_VERSION,
    FeatureDescriptor,
    FeatureVector,
    UnknownFeature,
    catalog,
    extract_features,
    feature_descriptor,
    feature_ids,
)
from .score import ScoreDocument, melodic_intervals, melodic_streams, parse_mxl

__version__ = "0.1.0"

__all__ = [
    "CATALOG_VERSION",
    "FeatureDescriptor",
    "FeatureVector",
    "ScoreDocument",
    "UnknownFeature",
    "catalog",
    "extract_features",
    "feature_descriptor",
    "feature_ids",
    "melodic_intervals",
    "melodic_streams",
    "parse_mxl",
]
