"""Corpus persistence, metadata inference, filtering, and grouping."""

from .metadata import (
    DEFAULT_EPOCH_BOUNDARIES,
    EPOCHS,
    TYPE_TAXONOMY,
    UNKNOWN,
    ComposerEntry,
    EpochBoundaries,
    InferredMetadata,
    composer_slug,
    infer_metadata,
    opus_from_title,
    type_from_title,
)
from .store import (
    CompositionRecord,
    CorpusIoError,
    CorpusStore,
    DuplicateContent,
    DuplicateName,
    IngestReport,
    UnknownComposition,
    UnknownName,
    UseCase,
    content_hash,
)

__all__ = [
    "ComposerEntry",
    "CompositionRecord",
    "CorpusIoError",
    "CorpusStore",
    "DEFAULT_EPOCH_BOUNDARIES",
    "DuplicateContent",
    "DuplicateName",
    "EPOCHS",
    "EpochBoundaries",
    "InferredMetadata",
    "IngestReport",
    "TYPE_TAXONOMY",
    "UNKNOWN",
    "UnknownComposition",
    "UnknownName",
    "UseCase",
    "composer_slug",
    "content_hash",
    "infer_metadata",
    "opus_from_title",
    "type_from_title",
]
