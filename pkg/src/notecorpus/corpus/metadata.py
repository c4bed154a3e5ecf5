"""Composition metadata: type taxonomy, composer epochs, and inference rules."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import Optional

from ..score.model import ScoreDocument

UNKNOWN = "unknown"

# Composition types/styles recognized in titles, ordered by the rough
# average composing date of the form.
TYPE_TAXONOMY: tuple[str, ...] = (
    "soundtrack",
    "medley",
    "nocturne",
    "ballad",
    "chorale",
    "hymn",
    "concerto",
    "minuet",
    "prelude",
    "lauda",
    "scherzo",
    "fantasia",
    "requiem",
    "oratorio",
    "sonata",
    "intermezzo",
    "symphony",
    "etude",
    "serenade",
    "rondo",
    "opera",
    "suite",
    "fugue",
    "rhapsody",
    "waltz",
    "mazurka",
    "madrigal",
    "polonaise",
)

EPOCHS = ("baroque", "classic", "romantic", "modern")

_OPUS_RE = re.compile(r"\b(?:Op\.?|Opus|BWV|Hob\.?|[DKS]\.)\s*\d+[a-z]?\b")
_SLUG_RE = re.compile(r"[^a-z0-9]+")


@dataclass(frozen=True)
class EpochBoundaries:
    """Cut points on a composer's lifespan midyear; standard music-history
    boundaries, overridable in configuration."""

    baroque_end: int = 1750
    classic_end: int = 1820
    romantic_end: int = 1910


DEFAULT_EPOCH_BOUNDARIES = EpochBoundaries()


@dataclass(frozen=True)
class ComposerEntry:
    composer_id: str
    display_name: str
    birth_year: Optional[int] = None
    death_year: Optional[int] = None

    def __post_init__(self) -> None:
        if (
            self.birth_year is not None
            and self.death_year is not None
            and self.birth_year >= self.death_year
        ):
            raise ValueError(
                f"composer {self.display_name!r}: birth year must precede death year"
            )

    def epoch(self, boundaries: EpochBoundaries = DEFAULT_EPOCH_BOUNDARIES) -> str:
        if self.birth_year is None or self.death_year is None:
            return UNKNOWN
        midyear = (self.birth_year + self.death_year) / 2
        if midyear < boundaries.baroque_end:
            return "baroque"
        if midyear < boundaries.classic_end:
            return "classic"
        if midyear < boundaries.romantic_end:
            return "romantic"
        return "modern"


@dataclass(frozen=True)
class InferredMetadata:
    title: str
    composer_name: str
    composition_type: str
    opus: Optional[str]


def composer_slug(name: str) -> str:
    folded = unicodedata.normalize("NFKD", name).encode("ascii", "ignore").decode()
    slug = _SLUG_RE.sub("-", folded.lower()).strip("-")
    return slug or UNKNOWN


def type_from_title(title: str) -> str:
    """First taxonomy keyword appearing in the title (case-insensitive)."""
    lowered = title.lower()
    best: tuple[int, int] | None = None
    for order, keyword in enumerate(TYPE_TAXONOMY):
        pos = lowered.find(keyword)
        if pos >= 0 and (best is None or (pos, order) < best):
            best = (pos, order)
    if best is None:
        return UNKNOWN
    return TYPE_TAXONOMY[best[1]]


def opus_from_title(title: str) -> Optional[str]:
    """Catalog number (Op. 27, D.781, S.558, BWV 846, ...) if present."""
    match = _OPUS_RE.search(title)
    if match is None:
        return None
    return " ".join(match.group(0).split())


def infer_metadata(
    doc: ScoreDocument, manifest_row: Optional[dict] = None
) -> InferredMetadata:
    """Title/composer/type/opus for one composition; manifest fields win."""
    row = manifest_row or {}
    title = (row.get("title") or doc.title or UNKNOWN).strip() or UNKNOWN
    composer = (row.get("composer") or doc.composer_name or UNKNOWN).strip() or UNKNOWN
    composition_type = row.get("type") or type_from_title(title)
    if composition_type not in TYPE_TAXONOMY:
        composition_type = UNKNOWN
    opus = row.get("opus") or opus_from_title(title)
    return InferredMetadata(
        title=title,
        composer_name=composer,
        composition_type=composition_type,
        opus=opus,
    )
